#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sa/value.hpp"
#include "sa/vocabulary.hpp"

namespace sa {

// Relation name -> arity.
using Schema = std::map<std::string, std::size_t>;

// Length first, then lexicographic. The canonical order used for output and tie-breaking.
struct ShortLex {
    bool operator()(const Tuple& a, const Tuple& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

// A finite set of tuples of one arity, kept sorted and duplicate free.
class Relation {
public:
    explicit Relation(std::size_t arity = 0) : arity_(arity) {}
    // Throws ValidationError if a tuple has the wrong length.
    Relation(std::size_t arity, std::vector<Tuple> tuples);

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(const Tuple& t) const;
    void insert(Tuple t);

    const std::vector<Tuple>& tuples() const { return tuples_; }
    auto begin() const { return tuples_.begin(); }
    auto end() const { return tuples_.end(); }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t arity_;
    std::vector<Tuple> tuples_;
};

class Database {
public:
    Database() = default;
    explicit Database(Vocabulary vocab) : vocab_(std::move(vocab)) {}

    // Throws ValidationError on a duplicate name, zero arity or a clash with a predicate name.
    void add_relation(const std::string& name, std::size_t arity);
    // Declares the relation if needed, then inserts all tuples.
    void set_relation(const std::string& name, Relation r);
    void insert(const std::string& name, Tuple t);

    // Throws ValidationError if a predicate name collides with a relation name.
    void set_vocabulary(Vocabulary vocab);

    const Schema& schema() const { return schema_; }
    const Vocabulary& vocabulary() const { return vocab_; }
    // Throws ValidationError for an unknown name.
    const Relation& relation(const std::string& name) const;
    const std::map<std::string, Relation>& relations() const { return relations_; }

    friend bool operator==(const Database&, const Database&) = default;

private:
    Schema schema_;
    Vocabulary vocab_;
    std::map<std::string, Relation> relations_;
};

// 1-based, strictly increasing indices.
Tuple project(const Tuple& t, const std::vector<std::size_t>& indices);
Relation project(const Relation& r, const std::vector<std::size_t>& indices);

// All subsets of {1..n} as increasing index lists, the empty list included.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n);

// One pair (R, X) for every relation and every X subset of its positions.
struct ProjectionSlot {
    std::string relation;
    std::vector<std::size_t> indices;
};
std::vector<ProjectionSlot> projection_slots(const Schema& schema);

// Whether t is in pi_X(D(R)); false when |t| != |X|.
bool in_projection(const Database& db, const ProjectionSlot& slot, const Tuple& t);

// Every tuple of every relation and all of their projections, the empty tuple
// included when some relation is nonempty. Sorted in ShortLex order.
std::vector<Tuple> tuple_space(const Database& db);

// Sorted.
std::vector<Value> active_domain(const Database& db);

} // namespace sa
