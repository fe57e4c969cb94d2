#include "sa/database.hpp"

#include <algorithm>
#include <set>

#include "sa/error.hpp"

namespace sa {

Relation::Relation(std::size_t arity, std::vector<Tuple> tuples) : arity_(arity), tuples_(std::move(tuples)) {
    for (const auto& t : tuples_) {
        if (t.size() != arity_)
            throw ValidationError("tuple " + to_string(t) + " does not have arity " + std::to_string(arity_));
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Relation::contains(const Tuple& t) const {
    return t.size() == arity_ && std::binary_search(tuples_.begin(), tuples_.end(), t);
}

void Relation::insert(Tuple t) {
    if (t.size() != arity_)
        throw ValidationError("tuple " + to_string(t) + " does not have arity " + std::to_string(arity_));
    auto pos = std::lower_bound(tuples_.begin(), tuples_.end(), t);
    if (pos == tuples_.end() || *pos != t)
        tuples_.insert(pos, std::move(t));
}

void Database::add_relation(const std::string& name, std::size_t arity) {
    if (arity == 0)
        throw ValidationError("relation '" + name + "' must have positive arity");
    if (schema_.count(name) != 0)
        throw ValidationError("duplicate relation '" + name + "'");
    if (vocab_.find(name) != nullptr || name == kEquality || name == kLess)
        throw ValidationError("relation name '" + name + "' collides with a vocabulary predicate");
    schema_.emplace(name, arity);
    relations_.emplace(name, Relation(arity));
}

void Database::set_vocabulary(Vocabulary vocab) {
    for (const auto& p : vocab.predicates())
        if (schema_.count(p.name) != 0)
            throw ValidationError("relation name '" + p.name + "' collides with a vocabulary predicate");
    vocab_ = std::move(vocab);
}

void Database::set_relation(const std::string& name, Relation r) {
    auto it = schema_.find(name);
    if (it == schema_.end())
        add_relation(name, r.arity());
    else if (it->second != r.arity())
        throw ValidationError("relation '" + name + "' has arity " + std::to_string(it->second));
    relations_.at(name) = std::move(r);
}

void Database::insert(const std::string& name, Tuple t) {
    auto it = relations_.find(name);
    if (it == relations_.end())
        throw ValidationError("unknown relation '" + name + "'");
    it->second.insert(std::move(t));
}

const Relation& Database::relation(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end())
        throw ValidationError("unknown relation '" + name + "'");
    return it->second;
}

Tuple project(const Tuple& t, const std::vector<std::size_t>& indices) {
    Tuple out;
    out.reserve(indices.size());
    for (auto i : indices)
        out.push_back(t[i - 1]);
    return out;
}

Relation project(const Relation& r, const std::vector<std::size_t>& indices) {
    std::vector<Tuple> out;
    out.reserve(r.size());
    for (const auto& t : r)
        out.push_back(project(t, indices));
    return Relation(indices.size(), std::move(out));
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> xs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i))
                xs.push_back(i + 1);
        out.push_back(std::move(xs));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<ProjectionSlot> projection_slots(const Schema& schema) {
    std::vector<ProjectionSlot> out;
    for (const auto& [name, arity] : schema)
        for (auto& xs : index_subsets(arity))
            out.push_back({name, std::move(xs)});
    return out;
}

bool in_projection(const Database& db, const ProjectionSlot& slot, const Tuple& t) {
    if (t.size() != slot.indices.size())
        return false;
    for (const auto& row : db.relation(slot.relation))
        if (project(row, slot.indices) == t)
            return true;
    return false;
}

std::vector<Tuple> tuple_space(const Database& db) {
    std::set<Tuple, ShortLex> space;
    for (const auto& [name, rel] : db.relations())
        for (const auto& xs : index_subsets(rel.arity()))
            for (const auto& row : rel)
                space.insert(project(row, xs));
    return {space.begin(), space.end()};
}

std::vector<Value> active_domain(const Database& db) {
    std::set<Value> values;
    for (const auto& [name, rel] : db.relations())
        for (const auto& row : rel)
            values.insert(row.begin(), row.end());
    return {values.begin(), values.end()};
}

} // namespace sa
