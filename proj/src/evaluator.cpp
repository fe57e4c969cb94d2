#include "sa/evaluator.hpp"

#include <algorithm>
#include <iterator>

namespace sa {

Relation union_of(const Relation& left, const Relation& right) {
    std::vector<Tuple> out;
    std::set_union(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(out));
    return Relation(left.arity(), std::move(out));
}

Relation difference(const Relation& left, const Relation& right) {
    std::vector<Tuple> out;
    std::set_difference(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(out));
    return Relation(left.arity(), std::move(out));
}

Relation select(const Relation& rel, const Condition& cond, const Vocabulary& vocab) {
    static const Tuple none;
    std::vector<Tuple> out;
    for (const auto& t : rel)
        if (eval_condition(cond, t, none, vocab))
            out.push_back(t);
    return Relation(rel.arity(), std::move(out));
}

Relation semijoin(const Relation& left, const Relation& right, const Condition& cond, const Vocabulary& vocab) {
    std::vector<Tuple> out;
    if (right.empty())
        return Relation(left.arity());
    for (const auto& a : left) {
        for (const auto& b : right) {
            if (eval_condition(cond, a, b, vocab)) {
                out.push_back(a);
                break;
            }
        }
    }
    return Relation(left.arity(), std::move(out));
}

namespace {

template <class Recurse>
Relation apply(const Expr& e, const Database& db, Recurse&& sub) {
    switch (e.kind()) {
    case ExprKind::relation:
        return db.relation(e.name());
    case ExprKind::union_of:
        return union_of(sub(e.left()), sub(e.right()));
    case ExprKind::difference:
        return difference(sub(e.left()), sub(e.right()));
    case ExprKind::projection:
        return project(sub(e.left()), e.indices());
    case ExprKind::selection:
        return select(sub(e.left()), e.condition(), db.vocabulary());
    case ExprKind::semijoin:
        return semijoin(sub(e.left()), sub(e.right()), e.condition(), db.vocabulary());
    }
    return Relation(e.arity());
}

} // namespace

const Relation& Evaluator::operator()(const ExprPtr& e) {
    if (auto it = memo_.find(e.get()); it != memo_.end())
        return it->second.value;
    Relation value = apply(*e, db_, [this](const ExprPtr& child) -> const Relation& { return (*this)(child); });
    auto [it, inserted] = memo_.emplace(e.get(), Entry{e, std::move(value)});
    return it->second.value;
}

Relation evaluate(const ExprPtr& e, const Database& db) {
    Evaluator eval(db);
    return eval(e);
}

bool is_empty(const ExprPtr& e, const Database& db) {
    return evaluate(e, db).empty();
}

Relation evaluate_naive(const ExprPtr& e, const Database& db) {
    return apply(*e, db, [&db](const ExprPtr& child) { return evaluate_naive(child, db); });
}

} // namespace sa
