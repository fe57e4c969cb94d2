#pragma once

#include <unordered_map>

#include "sa/database.hpp"
#include "sa/expression.hpp"

namespace sa {

// Operator primitives. Results of selection and semijoin are subsets of `left`.
Relation union_of(const Relation& left, const Relation& right);
Relation difference(const Relation& left, const Relation& right);
Relation select(const Relation& rel, const Condition& cond, const Vocabulary& vocab);
Relation semijoin(const Relation& left, const Relation& right, const Condition& cond, const Vocabulary& vocab);

// Evaluates expressions over one database, memoizing results by node identity.
// The memo persists across calls, so a batch of expressions sharing sub-DAGs is
// evaluated once per node. Expressions must be validated against the database.
class Evaluator {
public:
    explicit Evaluator(const Database& db) : db_(db) {}

    const Relation& operator()(const ExprPtr& e);
    void clear() { memo_.clear(); }

private:
    struct Entry {
        ExprPtr keep_alive;
        Relation value;
    };

    const Database& db_;
    std::unordered_map<const Expr*, Entry> memo_;
};

Relation evaluate(const ExprPtr& e, const Database& db);
bool is_empty(const ExprPtr& e, const Database& db);

// Non-memoized recursive evaluation over the expanded tree. Reference semantics
// for testing the memoized evaluator.
Relation evaluate_naive(const ExprPtr& e, const Database& db);

} // namespace sa
