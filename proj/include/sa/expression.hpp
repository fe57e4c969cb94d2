#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sa/condition.hpp"
#include "sa/database.hpp"

namespace sa {

class Expr;
// Expressions are immutable and may share sub-expressions (a DAG).
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { relation, union_of, difference, projection, selection, semijoin };

// A semijoin algebra expression node. Every node carries its arity; the factory
// functions enforce the typing rules and throw ValidationError otherwise.
class Expr {
public:
    static ExprPtr relation(std::string name, std::size_t arity);
    static ExprPtr union_of(ExprPtr l, ExprPtr r);
    static ExprPtr difference(ExprPtr l, ExprPtr r);
    // Indices are 1-based; they are sorted and must be distinct and in range.
    static ExprPtr projection(std::vector<std::size_t> indices, ExprPtr child);
    static ExprPtr selection(Condition cond, ExprPtr child);
    static ExprPtr semijoin(Condition cond, ExprPtr l, ExprPtr r);
    // l - (l - r), sharing l.
    static ExprPtr intersection(ExprPtr l, ExprPtr r);

    ExprKind kind() const { return kind_; }
    std::size_t arity() const { return arity_; }
    const std::string& name() const { return name_; }
    const std::vector<std::size_t>& indices() const { return indices_; }
    const Condition& condition() const { return cond_; }
    // Single child of projection/selection, left child of binary nodes.
    const ExprPtr& left() const { return left_; }
    const ExprPtr& right() const { return right_; }

private:
    Expr() = default;

    ExprKind kind_ = ExprKind::relation;
    std::size_t arity_ = 0;
    std::string name_;
    std::vector<std::size_t> indices_;
    Condition cond_;
    ExprPtr left_;
    ExprPtr right_;
};

// Structural equality; shared nodes are compared once.
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Checks relation names and arities against the schema and predicates against
// the vocabulary. Throws ValidationError.
void validate(const ExprPtr& e, const Schema& schema, const Vocabulary& vocab);

// Number of distinct nodes in the DAG.
std::size_t dag_size(const ExprPtr& e);
// Number of nodes of the fully expanded tree, saturating at `cap`.
std::size_t tree_size(const ExprPtr& e, std::size_t cap = static_cast<std::size_t>(-1));

} // namespace sa
