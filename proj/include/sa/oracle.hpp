#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "sa/database.hpp"
#include "sa/expression.hpp"
#include "sa/game.hpp"

namespace sa {

// Maximum number of semijoin and projection nodes on a root-to-leaf path.
std::size_t sj_depth(const ExprPtr& e);

enum class ConditionPool {
    // Every satisfiable atomic type over the operands' variables.
    atomic_types,
    // Conjunctions of up to max_literals distinct literals (=, !=, <, !<).
    literal_conjunctions,
};

// Bounds of the expression enumeration. The enumerated language is:
//   atoms(0)   relation names and selections sigma_c(R), c from the pool
//   level(d)   atoms(d) plus, when max_boolean_size is 2, every union and
//              difference of two atoms(d) of equal arity
//   atoms(d)   atoms(d-1), pi_X(e) for e in level(d-1) and proper X, and
//              a semijoin[c] e for a in atoms(d-1), e in level(d-1)
struct EnumerationBounds {
    std::size_t max_depth = 1;
    std::size_t max_boolean_size = 2;  // 1 or 2
    ConditionPool pool = ConditionPool::atomic_types;
    std::size_t max_literals = 1;
    // literal_conjunctions only: keep atoms relating an x- to a y-variable.
    bool cross_atoms_only = false;
    // Enumeration stops with BudgetExceeded beyond this many expressions.
    std::size_t max_expressions = 5000000;
};

// Streams every expression of the bounded language once (structural dedup),
// depth by depth, in a deterministic order. `sink` returns false to stop.
void enumerate_expressions(const Schema& schema, const Vocabulary& vocab, const EnumerationBounds& bounds,
                           const std::function<bool(const ExprPtr&)>& sink);

// Brute-force separation over the enumerated language on a fixed pair of
// databases. Expressions with the same value on both databases are kept once,
// which leaves the set of realized value pairs, and hence every verdict, equal
// to that of the full enumeration. Values are bitsets over the tuple spaces.
// Only the atomic_types pool is supported.
class SeparationOracle {
public:
    SeparationOracle(const Database& a, const Database& b, const EnumerationBounds& bounds);

    // An expression of sj_depth <= depth containing exactly one of a and b.
    std::optional<ExprPtr> separating_expression(const Tuple& a, const Tuple& b, std::size_t depth) const;
    // Bit i tells whether t is in the value of representative i, over
    // representatives of depth <= depth. Equal profiles mean no separation.
    const std::vector<std::uint64_t>& profile(std::size_t side, const Tuple& t, std::size_t depth) const;
    std::size_t representative_count() const { return reps_.size(); }
    const ExprPtr& representative(std::size_t i) const { return reps_.at(i).expr; }
    std::size_t representative_depth(std::size_t i) const { return reps_.at(i).depth; }
    std::size_t max_depth() const { return bounds_.max_depth; }

private:
    using Bits = std::vector<std::uint64_t>;

    struct Rep {
        ExprPtr expr;
        std::size_t arity = 0;
        std::size_t depth = 0;
        bool atom = true;
        Bits value[2];
    };

    bool add(Rep rep);
    bool member(const Rep& rep, std::size_t side, const Tuple& t) const;
    void add_combinations(std::size_t depth, std::size_t first_new_atom);
    const Condition& type_condition(std::uint32_t type);

    EnumerationBounds bounds_;
    Vocabulary vocab_;
    // spaces_[side][k]: tuples of arity k in the tuple space.
    std::vector<std::vector<Tuple>> spaces_[2];
    std::vector<std::unordered_map<Tuple, std::size_t, TupleHash>> index_[2];
    std::vector<Rep> reps_;
    std::map<std::pair<std::size_t, std::pair<Bits, Bits>>, std::size_t> seen_;
    std::unordered_map<TypeSignature, std::uint32_t, TypeSignatureHash> type_ids_;
    std::vector<std::pair<Tuple, Tuple>> type_witness_;
    std::vector<std::optional<Condition>> type_conditions_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::map<Tuple, Bits>> profiles_;
};

bool indistinguishable_bruteforce(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb,
                                  const EnumerationBounds& bounds);

// Direct combinatorial implementations, independent of the evaluator.

// R x S subset of T.
bool cartesian_contains(const Relation& t, const Relation& r, const Relation& s);
// T subset of R x S.
bool contained_in_cartesian(const Relation& t, const Relation& r, const Relation& s);
// {(a, c) | (a, b) in R, (b, c) in S}.
Relation composition(const Relation& r, const Relation& s);
// A walk of k >= 1 edges.
bool has_path(const Relation& r, std::size_t k);
// A path of k edges through k + 1 distinct nodes.
bool has_simple_path(const Relation& r, std::size_t k);
// A cycle through exactly k distinct nodes; k = 1 is a self-loop.
bool has_cycle(const Relation& r, std::size_t k);
bool count_at_least(const Relation& s, std::size_t k);

struct RandomDatabaseParams {
    std::size_t universe = 4;
    std::size_t max_relations = 2;
    std::size_t max_arity = 2;
    std::size_t max_tuples = 4;
    bool allow_order = true;
};

Schema random_schema(std::mt19937_64& rng, const RandomDatabaseParams& params);
// Values are drawn from {1..universe}.
Database random_database(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab,
                         const RandomDatabaseParams& params);
// A pair over a common schema and vocabulary. About half of the pairs are
// built by perturbing a relabelled copy of the first database so that the
// duplicator wins a good share of configurations.
std::pair<Database, Database> random_database_pair(std::mt19937_64& rng, const RandomDatabaseParams& params);

// A random well-formed expression of height <= max_height. Conditions mix
// atoms, negation, conjunction and disjunction; `<` appears only when the
// vocabulary is ordered.
ExprPtr random_expression(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab,
                          std::size_t max_height);
Condition random_condition(std::mt19937_64& rng, std::size_t left_arity, std::size_t right_arity,
                           const Vocabulary& vocab, std::size_t max_height = 2);

} // namespace sa
