#include "sa/vocabulary.hpp"

#include <algorithm>

#include "sa/error.hpp"

namespace sa {

void Vocabulary::add_predicate(Predicate p) {
    if (p.name == kEquality || p.name == kLess)
        throw ValidationError("predicate name '" + p.name + "' is reserved");
    if (p.arity == 0)
        throw ValidationError("predicate '" + p.name + "' must have positive arity");
    if (find(p.name) != nullptr)
        throw ValidationError("duplicate predicate '" + p.name + "'");
    for (const auto& t : p.extension) {
        if (t.size() != p.arity)
            throw ValidationError("predicate '" + p.name + "' has arity " + std::to_string(p.arity) +
                                  " but contains " + to_string(t));
    }
    auto pos = std::lower_bound(predicates_.begin(), predicates_.end(), p.name,
                                [](const Predicate& q, const std::string& n) { return q.name < n; });
    predicates_.insert(pos, std::move(p));
}

const Predicate* Vocabulary::find(std::string_view name) const {
    for (const auto& p : predicates_)
        if (p.name == name)
            return &p;
    return nullptr;
}

} // namespace sa
