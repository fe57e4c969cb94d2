#include "sa/expression.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sa/error.hpp"

namespace sa {

namespace {

void require_child(const ExprPtr& e) {
    if (!e)
        throw ValidationError("missing operand");
}

} // namespace

ExprPtr Expr::relation(std::string name, std::size_t arity) {
    if (arity == 0)
        throw ValidationError("relation '" + name + "' must have positive arity");
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::relation;
    e->name_ = std::move(name);
    e->arity_ = arity;
    return e;
}

ExprPtr Expr::union_of(ExprPtr l, ExprPtr r) {
    require_child(l);
    require_child(r);
    if (l->arity() != r->arity())
        throw ValidationError("union of expressions with arities " + std::to_string(l->arity()) + " and " +
                              std::to_string(r->arity()));
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::union_of;
    e->arity_ = l->arity();
    e->left_ = std::move(l);
    e->right_ = std::move(r);
    return e;
}

ExprPtr Expr::difference(ExprPtr l, ExprPtr r) {
    require_child(l);
    require_child(r);
    if (l->arity() != r->arity())
        throw ValidationError("difference of expressions with arities " + std::to_string(l->arity()) + " and " +
                              std::to_string(r->arity()));
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::difference;
    e->arity_ = l->arity();
    e->left_ = std::move(l);
    e->right_ = std::move(r);
    return e;
}

ExprPtr Expr::projection(std::vector<std::size_t> indices, ExprPtr child) {
    require_child(child);
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw ValidationError("projection repeats an index");
    for (auto i : indices)
        if (i == 0 || i > child->arity())
            throw ValidationError("projection index " + std::to_string(i) + " out of range (arity " +
                                  std::to_string(child->arity()) + ")");
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::projection;
    e->arity_ = indices.size();
    e->indices_ = std::move(indices);
    e->left_ = std::move(child);
    return e;
}

ExprPtr Expr::selection(Condition cond, ExprPtr child) {
    require_child(child);
    if (max_var_index(cond, VarSide::y) != 0)
        throw ValidationError("selection condition may only use x-variables");
    if (max_var_index(cond, VarSide::x) > child->arity())
        throw ValidationError("selection condition variable x" + std::to_string(max_var_index(cond, VarSide::x)) +
                              " out of range (arity " + std::to_string(child->arity()) + ")");
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::selection;
    e->arity_ = child->arity();
    e->cond_ = std::move(cond);
    e->left_ = std::move(child);
    return e;
}

ExprPtr Expr::semijoin(Condition cond, ExprPtr l, ExprPtr r) {
    require_child(l);
    require_child(r);
    if (max_var_index(cond, VarSide::x) > l->arity())
        throw ValidationError("semijoin condition variable x" + std::to_string(max_var_index(cond, VarSide::x)) +
                              " out of range (left arity " + std::to_string(l->arity()) + ")");
    if (max_var_index(cond, VarSide::y) > r->arity())
        throw ValidationError("semijoin condition variable y" + std::to_string(max_var_index(cond, VarSide::y)) +
                              " out of range (right arity " + std::to_string(r->arity()) + ")");
    auto e = std::shared_ptr<Expr>(new Expr);
    e->kind_ = ExprKind::semijoin;
    e->arity_ = l->arity();
    e->cond_ = std::move(cond);
    e->left_ = std::move(l);
    e->right_ = std::move(r);
    return e;
}

ExprPtr Expr::intersection(ExprPtr l, ExprPtr r) {
    auto inner = difference(l, std::move(r));
    return difference(std::move(l), std::move(inner));
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    std::set<std::pair<const Expr*, const Expr*>> known;
    auto eq = [&](auto&& self, const Expr* p, const Expr* q) -> bool {
        if (p == q)
            return true;
        if (!p || !q)
            return false;
        if (known.count({p, q}))
            return true;
        if (p->kind() != q->kind() || p->arity() != q->arity() || p->name() != q->name() ||
            p->indices() != q->indices() || !(p->condition() == q->condition()))
            return false;
        if (!self(self, p->left().get(), q->left().get()) || !self(self, p->right().get(), q->right().get()))
            return false;
        known.insert({p, q});
        return true;
    };
    return eq(eq, a.get(), b.get());
}

void validate(const ExprPtr& e, const Schema& schema, const Vocabulary& vocab) {
    std::unordered_set<const Expr*> seen;
    auto walk = [&](auto&& self, const Expr* node) -> void {
        if (!node || !seen.insert(node).second)
            return;
        switch (node->kind()) {
        case ExprKind::relation: {
            auto it = schema.find(node->name());
            if (it == schema.end())
                throw ValidationError("unknown relation '" + node->name() + "'");
            if (it->second != node->arity())
                throw ValidationError("relation '" + node->name() + "' has arity " + std::to_string(it->second));
            break;
        }
        case ExprKind::selection:
            validate_condition(node->condition(), node->left()->arity(), 0, vocab);
            break;
        case ExprKind::semijoin:
            validate_condition(node->condition(), node->left()->arity(), node->right()->arity(), vocab);
            break;
        default:
            break;
        }
        self(self, node->left().get());
        self(self, node->right().get());
    };
    walk(walk, e.get());
}

std::size_t dag_size(const ExprPtr& e) {
    std::unordered_set<const Expr*> seen;
    auto walk = [&](auto&& self, const Expr* node) -> void {
        if (!node || !seen.insert(node).second)
            return;
        self(self, node->left().get());
        self(self, node->right().get());
    };
    walk(walk, e.get());
    return seen.size();
}

std::size_t tree_size(const ExprPtr& e, std::size_t cap) {
    std::unordered_map<const Expr*, std::size_t> memo;
    auto walk = [&](auto&& self, const Expr* node) -> std::size_t {
        if (!node)
            return 0;
        if (auto it = memo.find(node); it != memo.end())
            return it->second;
        std::size_t total = 1;
        for (std::size_t part : {self(self, node->left().get()), self(self, node->right().get())})
            total = (part >= cap - total) ? cap : total + part;
        memo[node] = total;
        return total;
    };
    return walk(walk, e.get());
}

} // namespace sa
