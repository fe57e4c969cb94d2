#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sa/value.hpp"

namespace sa {

// An extra interpreted predicate, given extensionally.
struct Predicate {
    std::string name;
    std::size_t arity = 0;
    std::set<Tuple> extension;

    bool holds(const Tuple& args) const { return extension.count(args) != 0; }
    friend bool operator==(const Predicate&, const Predicate&) = default;
};

// The interpreted vocabulary. Equality is always present; a strict total order
// and extensional predicates are optional.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(bool order) : order_(order) {}

    static Vocabulary equality_only() { return Vocabulary(false); }
    static Vocabulary ordered() { return Vocabulary(true); }

    bool has_order() const { return order_; }
    void set_order(bool order) { order_ = order; }

    // Throws ValidationError on a reserved or duplicate name, or a tuple of the wrong arity.
    void add_predicate(Predicate p);

    // Sorted by name.
    const std::vector<Predicate>& predicates() const { return predicates_; }
    const Predicate* find(std::string_view name) const;
    bool has_extra_predicates() const { return !predicates_.empty(); }

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

private:
    bool order_ = false;
    std::vector<Predicate> predicates_;
};

inline constexpr std::string_view kEquality = "=";
inline constexpr std::string_view kLess = "<";

} // namespace sa
