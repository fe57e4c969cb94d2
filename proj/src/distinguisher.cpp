#include "sa/distinguisher.hpp"

#include <algorithm>
#include <numeric>

#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/parser.hpp"

namespace sa {

namespace {

ExprPtr fold_intersection(std::vector<ExprPtr> parts) {
    ExprPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = Expr::intersection(acc, parts[i]);
    return acc;
}

ExprPtr fold_union(std::vector<ExprPtr> parts) {
    ExprPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = Expr::union_of(acc, parts[i]);
    return acc;
}

} // namespace

Distinguisher::Distinguisher(Database db, SynthesisBudget budget) : db_(std::move(db)), budget_(budget) {
    if (db_.vocabulary().has_extra_predicates())
        throw ValidationError("expression synthesis does not support extensional vocabulary predicates");
    space_ = tuple_space(db_);
    for (std::size_t p = 0; p < space_.size(); ++p)
        lookup_.emplace(space_[p], p);
    slots_ = projection_slots(db_.schema());
    for (const auto& t : space_) {
        std::vector<bool> row;
        for (const auto& slot : slots_)
            row.push_back(in_projection(db_, slot, t));
        member_.push_back(std::move(row));
    }
    for (const auto& [name, arity] : db_.schema())
        max_arity_ = std::max(max_arity_, arity);
    slot_exprs_.resize(slots_.size());
}

std::size_t Distinguisher::position_of(const Tuple& a) const {
    auto it = lookup_.find(a);
    if (it == lookup_.end())
        throw ValidationError("tuple " + to_string(a) + " is not in the tuple space");
    return it->second;
}

ExprPtr Distinguisher::track(ExprPtr e) {
    if (++nodes_ > budget_.max_nodes)
        throw BudgetExceeded("expression synthesis exceeds the budget of " + std::to_string(budget_.max_nodes) +
                             " nodes");
    return e;
}

ExprPtr Distinguisher::slot_expr(std::size_t slot) {
    if (!slot_exprs_[slot]) {
        const auto& s = slots_[slot];
        const std::size_t arity = db_.schema().at(s.relation);
        ExprPtr& rel = relations_[s.relation];
        if (!rel)
            rel = track(Expr::relation(s.relation, arity));
        slot_exprs_[slot] = s.indices.size() == arity ? rel : track(Expr::projection(s.indices, rel));
    }
    return slot_exprs_[slot];
}

ExprPtr Distinguisher::arity_union(std::size_t k) {
    if (auto it = arity_unions_.find(k); it != arity_unions_.end())
        return it->second;
    std::vector<ExprPtr> parts;
    for (std::size_t s = 0; s < slots_.size(); ++s)
        if (slots_[s].indices.size() == k)
            parts.push_back(slot_expr(s));
    if (parts.empty())
        throw ValidationError("no relation has a projection of arity " + std::to_string(k));
    nodes_ += parts.size() - 1;
    ExprPtr u = fold_union(std::move(parts));
    arity_unions_.emplace(k, u);
    return u;
}

ExprPtr Distinguisher::complement(const ExprPtr& e) {
    if (auto it = complements_.find(e.get()); it != complements_.end())
        return it->second;
    ExprPtr c = track(Expr::difference(arity_union(e->arity()), e));
    complements_.emplace(e.get(), c);
    return c;
}

ExprPtr Distinguisher::base_expression(const Tuple& a) {
    return level(position_of(a), 0);
}

ExprPtr Distinguisher::expression(const Tuple& a, std::size_t rounds) {
    if (rounds > budget_.max_rounds)
        throw BudgetExceeded("requested " + std::to_string(rounds) + " rounds; the budget allows " +
                             std::to_string(budget_.max_rounds));
    const std::size_t pos = position_of(a);
    for (std::size_t r = 0; r < rounds; ++r)
        for (std::size_t c = 0; c < space_.size(); ++c)
            level(c, r);
    return level(pos, rounds);
}

ExprPtr Distinguisher::level(std::size_t pos, std::size_t rounds) {
    const auto key = std::make_pair(pos, rounds);
    if (auto it = levels_.find(key); it != levels_.end())
        return it->second;
    ExprPtr e = build(pos, rounds);
    levels_.emplace(key, e);
    return e;
}

const std::vector<Distinguisher::PairType>& Distinguisher::pair_types(std::size_t pos, std::size_t j) {
    const auto key = std::make_pair(pos, j);
    if (auto it = pair_types_.find(key); it != pair_types_.end())
        return it->second;
    const Tuple& a = space_[pos];
    const Vocabulary& vocab = db_.vocabulary();
    const TypeSignature own = type_signature(a, {}, vocab);
    std::vector<PairType> types;
    for (const auto& [left, right] : type_representatives(a.size(), j, vocab, budget_.max_types)) {
        if (!(type_signature(left, {}, vocab) == own))
            continue;
        const TypeSignature sig = type_signature(left, right, vocab);
        PairType type{joint_atomic_type(left, right, vocab), {}};
        for (std::size_t c = 0; c < space_.size(); ++c)
            if (space_[c].size() == j && type_signature(a, space_[c], vocab) == sig)
                type.partners.push_back(c);
        types.push_back(std::move(type));
    }
    return pair_types_.emplace(key, std::move(types)).first->second;
}

ExprPtr Distinguisher::build(std::size_t pos, std::size_t rounds) {
    const Tuple& a = space_[pos];
    const Vocabulary& vocab = db_.vocabulary();
    if (rounds == 0) {
        std::vector<ExprPtr> inside, outside;
        for (std::size_t s = 0; s < slots_.size(); ++s) {
            if (member_[pos][s])
                inside.push_back(slot_expr(s));
            else if (slots_[s].indices.size() == a.size())
                outside.push_back(slot_expr(s));
        }
        nodes_ += 2 * (inside.size() - 1);
        ExprPtr e = fold_intersection(std::move(inside));
        Condition type = atomic_type(a, vocab);
        if (type.kind() != Condition::Kind::truth)
            e = track(Expr::selection(std::move(type), e));
        if (!outside.empty()) {
            nodes_ += outside.size() - 1;
            e = track(Expr::difference(e, fold_union(std::move(outside))));
        }
        return e;
    }

    const ExprPtr base = level(pos, 0);
    std::vector<ExprPtr> answered;
    for (std::size_t c = 0; c < space_.size(); ++c)
        answered.push_back(
            track(Expr::semijoin(joint_atomic_type(a, space_[c], vocab), base, level(c, rounds - 1))));
    nodes_ += 2 * (answered.size() - 1);
    ExprPtr forth = fold_intersection(std::move(answered));

    std::vector<ExprPtr> refuted;
    for (std::size_t j = 1; j <= max_arity_; ++j) {
        for (const auto& type : pair_types(pos, j)) {
            ExprPtr unanswerable;
            if (type.partners.empty()) {
                unanswerable = arity_union(j);
            } else {
                std::vector<ExprPtr> parts;
                for (std::size_t c : type.partners)
                    parts.push_back(complement(level(c, rounds - 1)));
                nodes_ += 2 * (parts.size() - 1);
                unanswerable = fold_intersection(std::move(parts));
            }
            refuted.push_back(track(Expr::semijoin(type.condition, base, unanswerable)));
        }
    }
    ExprPtr back = base;
    if (!refuted.empty()) {
        nodes_ += refuted.size() - 1;
        back = track(Expr::difference(base, fold_union(std::move(refuted))));
    }
    nodes_ += 2;
    if (nodes_ > budget_.max_nodes)
        throw BudgetExceeded("expression synthesis exceeds the budget of " + std::to_string(budget_.max_nodes) +
                             " nodes");
    return Expr::intersection(forth, back);
}

ExprPtr base_expression(const Database& db, const Tuple& a) {
    return Distinguisher(db).base_expression(a);
}

ExprPtr distinguishing_expression(const Database& db, const Tuple& a, std::size_t rounds, SynthesisBudget budget) {
    return Distinguisher(db, budget).expression(a, rounds);
}

ExprPtr complement_expr(const ExprPtr& e, const Schema& schema, std::size_t k) {
    if (e->arity() != k)
        throw ValidationError("complement of an arity-" + std::to_string(e->arity()) +
                              " expression requested at arity " + std::to_string(k));
    std::vector<ExprPtr> parts;
    for (const auto& slot : projection_slots(schema)) {
        if (slot.indices.size() != k)
            continue;
        const std::size_t arity = schema.at(slot.relation);
        ExprPtr rel = Expr::relation(slot.relation, arity);
        parts.push_back(k == arity ? rel : Expr::projection(slot.indices, rel));
    }
    if (parts.empty())
        throw ValidationError("no relation has a projection of arity " + std::to_string(k));
    return Expr::difference(fold_union(std::move(parts)), e);
}

Certificate certify(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb, SynthesisBudget budget) {
    SemijoinGame game(a, b);
    Certificate cert;
    const Configuration cfg{ta, tb};
    const GameVerdict v = game.solve_infinite(cfg);
    cert.rank = v.rank;
    cert.configuration_count = v.configuration_count;
    cert.winning_region_size = v.winning_region_size;
    if (v.winner == Player::duplicator) {
        cert.winner = Player::duplicator;
        return cert;
    }
    cert.winner = Player::spoiler;
    cert.rounds = static_cast<std::size_t>(v.rank.rounds() + 1);
    const bool from_left = game.is_position(Side::left, ta) &&
                           std::binary_search(game.tuple_space(Side::left).begin(),
                                              game.tuple_space(Side::left).end(), ta, ShortLex{});
    cert.built_from = from_left ? Side::left : Side::right;
    const Database& source = from_left ? a : b;
    cert.expression = distinguishing_expression(source, from_left ? ta : tb, cert.rounds, budget);
    cert.left_member = evaluate(cert.expression, a).contains(ta);
    cert.right_member = evaluate(cert.expression, b).contains(tb);
    return cert;
}

std::string render_dag(const ExprPtr& e) {
    std::unordered_map<const Expr*, std::size_t> ids;
    std::string out;
    auto walk = [&](auto&& self, const Expr* node) -> std::size_t {
        if (auto it = ids.find(node); it != ids.end())
            return it->second;
        std::string line;
        auto ref = [&](const ExprPtr& child) { return "n" + std::to_string(self(self, child.get())); };
        switch (node->kind()) {
        case ExprKind::relation:
            line = node->name();
            break;
        case ExprKind::union_of:
            line = "(" + ref(node->left()) + " union " + ref(node->right()) + ")";
            break;
        case ExprKind::difference:
            line = "(" + ref(node->left()) + " diff " + ref(node->right()) + ")";
            break;
        case ExprKind::semijoin: {
            std::string l = ref(node->left());
            std::string r = ref(node->right());
            line = "(" + l + " semijoin[" + render_condition(node->condition()) + "] " + r + ")";
            break;
        }
        case ExprKind::projection: {
            line = "project[";
            for (std::size_t i = 0; i < node->indices().size(); ++i)
                line += (i ? "," : "") + std::to_string(node->indices()[i]);
            line += "](" + ref(node->left()) + ")";
            break;
        }
        case ExprKind::selection:
            line = "select[" + render_condition(node->condition()) + "](" + ref(node->left()) + ")";
            break;
        }
        const std::size_t id = ids.size();
        ids.emplace(node, id);
        out += "n" + std::to_string(id) + " = " + line + "\n";
        return id;
    };
    walk(walk, e.get());
    return out;
}

std::string render_certificate(const Certificate& cert, std::size_t max_tree_nodes) {
    std::string out = "winner: " + to_string(cert.winner) + "\n";
    out += "rank: " + to_string(cert.rank) + "\n";
    if (cert.winner == Player::duplicator) {
        out += "winning-region: " + std::to_string(cert.winning_region_size) + " of " +
               std::to_string(cert.configuration_count) + " configurations\n";
        return out;
    }
    out += "rounds: " + std::to_string(cert.rounds) + "\n";
    out += "built-from: " + to_string(cert.built_from) + "\n";
    out += "dag-nodes: " + std::to_string(dag_size(cert.expression)) + "\n";
    const std::size_t tree = tree_size(cert.expression, max_tree_nodes + 1);
    if (tree <= max_tree_nodes) {
        out += "expression: " + render_expression(cert.expression) + "\n";
    } else {
        out += "expression: dag\n" + render_dag(cert.expression);
    }
    out += std::string("member-left: ") + (cert.left_member ? "yes" : "no") + "\n";
    out += std::string("member-right: ") + (cert.right_member ? "yes" : "no") + "\n";
    out += std::string("separates: ") + (cert.separates() ? "yes" : "no") + "\n";
    return out;
}

} // namespace sa
