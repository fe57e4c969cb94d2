#include "sa/corpus.hpp"

#include <algorithm>
#include <map>

#include "sa/distinguisher.hpp"
#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/game.hpp"
#include "sa/oracle.hpp"

namespace sa {

namespace {

Value sym(const char* s) { return Value::symbol(s); }

std::int64_t half(std::size_t m) { return static_cast<std::int64_t>((m + 1) / 2); }

void require_odd(std::size_t m) {
    if (m < 3 || m % 2 == 0)
        throw ValidationError("m must be odd and at least 3, got " + std::to_string(m));
}

} // namespace

DatabasePair figure1() {
    Database a;
    a.set_relation("R", Relation(1, {{sym("a")}, {sym("b")}}));
    a.set_relation("S", Relation(1, {{1}, {2}}));
    a.set_relation("T", Relation(2, {{sym("a"), 1}, {sym("a"), 2}, {sym("b"), 1}, {sym("b"), 2}}));
    Database b;
    b.set_relation("R", Relation(1, {{sym("a")}, {sym("b")}, {sym("c")}}));
    b.set_relation("S", Relation(1, {{1}, {2}, {3}}));
    b.set_relation("T", Relation(2, {{sym("a"), 1},
                                     {sym("a"), 2},
                                     {sym("b"), 2},
                                     {sym("b"), 3},
                                     {sym("c"), 1},
                                     {sym("c"), 3}}));
    return {a, b};
}

DatabasePair figure2() {
    Database a;
    a.set_relation("R", Relation(2, {{1, sym("a")}, {3, sym("b")}}));
    a.set_relation("S", Relation(2, {{sym("a"), 2}, {sym("b"), 4}}));
    a.set_relation("T", Relation(2, {{1, 2}, {3, 4}}));
    Database b;
    b.set_relation("R", Relation(2, {{1, sym("a")}, {3, sym("b")}}));
    b.set_relation("S", Relation(2, {{sym("b"), 2}, {sym("a"), 4}}));
    b.set_relation("T", Relation(2, {{1, 2}, {3, 4}}));
    return {a, b};
}

Database cycle_db(std::size_t k) {
    if (k == 0)
        throw ValidationError("cycle length must be positive");
    Relation r(2);
    for (std::size_t i = 1; i <= k; ++i)
        r.insert({static_cast<std::int64_t>(i), static_cast<std::int64_t>(i % k + 1)});
    Database d;
    d.set_relation("R", std::move(r));
    return d;
}

Database disjoint_copies(const Database& d, std::size_t n) {
    const auto adom = active_domain(d);
    std::map<Value, std::size_t> position;
    for (std::size_t i = 0; i < adom.size(); ++i)
        position.emplace(adom[i], i);
    Database out(d.vocabulary());
    for (const auto& [name, rel] : d.relations()) {
        Relation copy(rel.arity());
        for (std::size_t c = 0; c < n; ++c) {
            for (const auto& t : rel) {
                Tuple u;
                for (const auto& v : t)
                    u.push_back(static_cast<std::int64_t>(c * adom.size() + position.at(v) + 1));
                copy.insert(std::move(u));
            }
        }
        out.set_relation(name, std::move(copy));
    }
    return out;
}

DatabasePair ordered_product_dbs(std::size_t m) {
    require_odd(m);
    const auto mm = static_cast<std::int64_t>(m);
    Relation r(1), s(1), t(2);
    for (std::int64_t i = 1; i <= mm; ++i) {
        r.insert({i});
        s.insert({mm + i});
    }
    for (std::int64_t i = 1; i <= mm; ++i)
        for (std::int64_t j = mm + 1; j <= 2 * mm; ++j)
            t.insert({i, j});
    Database a(Vocabulary::ordered());
    a.set_relation("R", r);
    a.set_relation("S", s);
    a.set_relation("T", t);
    Database b = a;
    const Tuple special{half(m), mm + half(m)};
    std::vector<Tuple> rest;
    for (const auto& u : t)
        if (u != special)
            rest.push_back(u);
    b.set_relation("T", Relation(2, std::move(rest)));
    return {a, b};
}

DatabasePair ordered_composition_dbs(std::size_t m) {
    require_odd(m);
    const auto mm = static_cast<std::int64_t>(m);
    const std::int64_t hub = 2 * mm + 1;
    Relation r(2), s(2);
    for (std::int64_t i = 1; i <= mm; ++i) {
        r.insert({i, hub});
        s.insert({hub, mm + i});
    }
    const Relation t = composition(r, s);
    Database a(Vocabulary::ordered());
    a.set_relation("R", r);
    a.set_relation("S", s);
    a.set_relation("T", t);
    Database b = a;
    const Tuple special{half(m), mm + half(m)};
    std::vector<Tuple> rest;
    for (const auto& u : t)
        if (u != special)
            rest.push_back(u);
    b.set_relation("T", Relation(2, std::move(rest)));
    return {a, b};
}

Database unary_db(std::size_t k, bool ordered) {
    Relation s(1);
    for (std::size_t i = 1; i <= k; ++i)
        s.insert({static_cast<std::int64_t>(i)});
    Database d(Vocabulary{ordered});
    d.set_relation("S", std::move(s));
    return d;
}

ExprPtr expr_path(std::size_t k) {
    if (k == 0)
        throw ValidationError("path length must be positive");
    const ExprPtr r = Expr::relation("R", 2);
    ExprPtr e = r;
    for (std::size_t i = 2; i <= k; ++i)
        e = Expr::semijoin(Condition::equal(x(2), y(1)), r, e);
    return e;
}

ExprPtr expr_at_least(std::size_t k) {
    if (k == 0)
        throw ValidationError("at_least needs k >= 1");
    const ExprPtr s = Expr::relation("S", 1);
    ExprPtr e = s;
    for (std::size_t i = 2; i <= k; ++i)
        e = Expr::semijoin(Condition::less(x(1), y(1)), s, e);
    return e;
}

ExprPtr expr_simple_path2() {
    const ExprPtr r = Expr::relation("R", 2);
    return Expr::semijoin(Condition::all_of({Condition::equal(x(2), y(1)),
                                             Condition::negate(Condition::equal(x(1), x(2))),
                                             Condition::negate(Condition::equal(y(2), x(2))),
                                             Condition::negate(Condition::equal(x(1), y(2)))}),
                          r, r);
}

ExprPtr expr_simple_path2_printed() {
    const ExprPtr r = Expr::relation("R", 2);
    return Expr::semijoin(Condition::all_of({Condition::equal(x(2), y(1)),
                                             Condition::negate(Condition::equal(x(2), x(1))),
                                             Condition::negate(Condition::equal(y(2), x(2)))}),
                          r, r);
}

ExprPtr expr_T_cap_RxS(std::size_t p, std::size_t q) {
    if (p == 0 || q == 0)
        throw ValidationError("R and S need positive arity");
    std::vector<Condition> first, second;
    for (std::size_t i = 1; i <= p; ++i)
        first.push_back(Condition::equal(x(i), y(i)));
    for (std::size_t i = 1; i <= q; ++i)
        second.push_back(Condition::equal(x(p + i), y(i)));
    const ExprPtr t = Expr::relation("T", p + q);
    return Expr::semijoin(Condition::all_of(std::move(second)),
                          Expr::semijoin(Condition::all_of(std::move(first)), t, Expr::relation("R", p)),
                          Expr::relation("S", q));
}

ExprPtr expr_T_subset_RxS(std::size_t p, std::size_t q) {
    return Expr::difference(Expr::relation("T", p + q), expr_T_cap_RxS(p, q));
}

ExprPtr expr_two_distinct() {
    const ExprPtr s = Expr::relation("S", 1);
    return Expr::semijoin(Condition::negate(Condition::equal(x(1), y(1))), s, s);
}

ExprPtr expr_cycle(std::size_t k) {
    const ExprPtr r = Expr::relation("R", 2);
    if (k == 1)
        return Expr::selection(Condition::equal(x(1), x(2)), r);
    if (k == 2)
        return Expr::semijoin(Condition::all_of({Condition::equal(x(1), y(2)), Condition::equal(x(2), y(1)),
                                                 Condition::negate(Condition::equal(x(1), x(2)))}),
                              r, r);
    throw ValidationError("cycles of length " + std::to_string(k) + " are not expressible");
}

namespace {

bool duplicator_forever(const Database& a, const Database& b) {
    return solve_infinite(a, b, {}, {}).winner == Player::duplicator;
}

CorpusEntry pair_entry(std::string name, std::string description, const DatabasePair& p, std::string claim,
                       std::function<bool()> check) {
    return {std::move(name), std::move(description), {{"A", p.first}, {"B", p.second}}, std::move(claim),
            std::move(check)};
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> out;

    const auto fig1 = figure1();
    out.push_back(pair_entry(
        "figure1", "T = R x S in A but not in B", fig1,
        "duplicator wins the infinite game from ((),()); T contains R x S in A only; T is contained in R x S in both",
        [fig1] {
            const auto& [a, b] = fig1;
            const ExprPtr e = expr_T_subset_RxS(1, 1);
            return duplicator_forever(a, b) &&
                   cartesian_contains(a.relation("T"), a.relation("R"), a.relation("S")) &&
                   !cartesian_contains(b.relation("T"), b.relation("R"), b.relation("S")) && is_empty(e, a) &&
                   is_empty(e, b);
        }));

    const auto fig2 = figure2();
    out.push_back(pair_entry(
        "figure2", "T = R o S in A; in B neither inclusion holds", fig2,
        "duplicator wins the infinite game from ((),()); A(T) = R o S; B(T) and R o S are incomparable",
        [fig2] {
            const auto& [a, b] = fig2;
            const Relation ca = composition(a.relation("R"), a.relation("S"));
            const Relation cb = composition(b.relation("R"), b.relation("S"));
            const Relation& tb = b.relation("T");
            auto subset = [](const Relation& x, const Relation& y) {
                return std::all_of(x.begin(), x.end(), [&](const Tuple& t) { return y.contains(t); });
            };
            return duplicator_forever(a, b) && ca == a.relation("T") && !subset(tb, cb) && !subset(cb, tb);
        }));

    for (std::size_t k : {4, 5, 6}) {
        const DatabasePair p{cycle_db(k), cycle_db(k + 1)};
        out.push_back(pair_entry("cycles-" + std::to_string(k) + "-" + std::to_string(k + 1),
                                 "directed cycles of length " + std::to_string(k) + " and " + std::to_string(k + 1),
                                 p, "duplicator wins the infinite game from ((),())",
                                 [p] { return duplicator_forever(p.first, p.second); }));
    }

    {
        const DatabasePair p{cycle_db(3), cycle_db(4)};
        out.push_back(pair_entry("cycles-3-4", "directed cycles of length 3 and 4", p,
                                 "spoiler wins from ((),()) and the synthesized expression separates", [p] {
                                     const Certificate c = certify(p.first, p.second, {}, {});
                                     return c.winner == Player::spoiler && c.separates();
                                 }));
    }
    {
        const DatabasePair p{disjoint_copies(cycle_db(3), 2), cycle_db(4)};
        out.push_back(pair_entry("two-triangles-vs-square", "two disjoint 3-cycles against a 4-cycle", p,
                                 "duplicator wins the infinite game from ((),()); only A has a 3-cycle", [p] {
                                     return duplicator_forever(p.first, p.second) &&
                                            has_cycle(p.first.relation("R"), 3) &&
                                            !has_cycle(p.second.relation("R"), 3);
                                 }));
    }
    {
        const DatabasePair p{cycle_db(4), cycle_db(5)};
        out.push_back(pair_entry("simple-path-4", "a 4-cycle against a 5-cycle", p,
                                 "only B has a simple path of length 4; duplicator wins the infinite game", [p] {
                                     return !has_simple_path(p.first.relation("R"), 4) &&
                                            has_simple_path(p.second.relation("R"), 4) &&
                                            duplicator_forever(p.first, p.second);
                                 }));
    }

    for (std::size_t k : {3, 4, 5}) {
        const DatabasePair p{unary_db(2), unary_db(k)};
        out.push_back(pair_entry("unary-2-" + std::to_string(k),
                                 "unary relations with 2 and " + std::to_string(k) + " elements, no order", p,
                                 "duplicator wins the infinite game from ((),())",
                                 [p] { return duplicator_forever(p.first, p.second); }));
    }
    {
        const DatabasePair p{unary_db(2, true), unary_db(3, true)};
        out.push_back(pair_entry("unary-ordered-2-3", "ordered unary relations with 2 and 3 elements", p,
                                 "at_least(3) is empty on A and not on B; the game certifies the separation",
                                 [p] {
                                     const ExprPtr e = expr_at_least(3);
                                     const Certificate c = certify(p.first, p.second, {}, {});
                                     return is_empty(e, p.first) && !is_empty(e, p.second) && c.separates();
                                 }));
    }
    {
        const DatabasePair p{unary_db(1), unary_db(2)};
        out.push_back(pair_entry("two-distinct", "unary relations with 1 and 2 elements", p,
                                 "S semijoin[x1 != y1] S is empty on A only", [p] {
                                     const ExprPtr e = expr_two_distinct();
                                     return is_empty(e, p.first) && !is_empty(e, p.second);
                                 }));
    }

    for (std::size_t n : {1, 2, 3}) {
        const std::size_t m = 2 * n + 1;
        const auto prod = ordered_product_dbs(m);
        out.push_back(pair_entry("ordered-product-m" + std::to_string(m),
                                 "ordered R x S against R x S minus one tuple, m = " + std::to_string(m), prod,
                                 "duplicator wins the " + std::to_string(n) + "-round game from ((),())", [prod, n] {
                                     return solve_finite(prod.first, prod.second, {}, {}, n).winner ==
                                            Player::duplicator;
                                 }));
        const auto comp = ordered_composition_dbs(m);
        out.push_back(pair_entry("ordered-composition-m" + std::to_string(m),
                                 "ordered R o S against R o S minus one tuple, m = " + std::to_string(m), comp,
                                 "duplicator wins the " + std::to_string(n) + "-round game from ((),())", [comp, n] {
                                     return solve_finite(comp.first, comp.second, {}, {}, n).winner ==
                                            Player::duplicator;
                                 }));
    }
    return out;
}

} // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name)
            return e;
    throw ValidationError("unknown corpus entry '" + name + "'");
}

} // namespace sa
