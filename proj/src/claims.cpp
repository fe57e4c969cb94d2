#include "sa/claims.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <set>
#include <sstream>

#include "sa/corpus.hpp"
#include "sa/distinguisher.hpp"
#include "sa/evaluator.hpp"
#include "sa/game.hpp"
#include "sa/oracle.hpp"
#include "sa/parser.hpp"

namespace sa {

namespace {

constexpr int kRandomPairs = 100;
constexpr int kRandomDatabases = 250;

bool duplicator_forever(const Database& a, const Database& b) {
    return solve_infinite(a, b, {}, {}).winner == Player::duplicator;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Game positions of one side: the empty tuple followed by the tuple space.
std::vector<Tuple> positions(const SemijoinGame& g, Side s) {
    std::vector<Tuple> out{{}};
    for (const auto& t : g.tuple_space(s))
        if (!t.empty())
            out.push_back(t);
    return out;
}

std::pair<Database, Database> random_pair(int seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    return random_database_pair(rng, RandomDatabaseParams{});
}

bool figure1_claim(std::string& detail) {
    const auto [a, b] = figure1();
    const bool game = duplicator_forever(a, b);
    const bool a_contains = cartesian_contains(a.relation("T"), a.relation("R"), a.relation("S"));
    const bool b_contains = cartesian_contains(b.relation("T"), b.relation("R"), b.relation("S"));
    const ExprPtr e = expr_T_subset_RxS(1, 1);
    const bool a_empty = is_empty(e, a);
    const bool b_empty = is_empty(e, b);
    const bool a_direct = contained_in_cartesian(a.relation("T"), a.relation("R"), a.relation("S"));
    const bool b_direct = contained_in_cartesian(b.relation("T"), b.relation("R"), b.relation("S"));
    detail = "duplicator wins forever: " + yes_no(game) + "; R x S in T: A " + yes_no(a_contains) + ", B " +
             yes_no(b_contains) + "; T - (T isect R x S) empty: A " + yes_no(a_empty) + ", B " + yes_no(b_empty);
    return game && a_contains && !b_contains && a_empty && b_empty && a_direct && b_direct;
}

bool figure2_claim(std::string& detail) {
    const auto [a, b] = figure2();
    const bool game = duplicator_forever(a, b);
    auto subset = [](const Relation& x, const Relation& y) {
        for (const auto& t : x)
            if (!y.contains(t))
                return false;
        return true;
    };
    const Relation ca = composition(a.relation("R"), a.relation("S"));
    const Relation cb = composition(b.relation("R"), b.relation("S"));
    const bool a_equal = ca == a.relation("T");
    const bool b_sub = subset(b.relation("T"), cb);
    const bool b_sup = subset(cb, b.relation("T"));
    detail = "duplicator wins forever: " + yes_no(game) + "; A(T) = R o S: " + yes_no(a_equal) +
             "; in B, T within R o S: " + yes_no(b_sub) + ", R o S within T: " + yes_no(b_sup);
    return game && a_equal && !b_sub && !b_sup;
}

bool cycles_claim(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (std::size_t k : {4, 5, 6}) {
        const bool d = duplicator_forever(cycle_db(k), cycle_db(k + 1));
        out << "D" << k << "/D" << k + 1 << " duplicator: " << yes_no(d) << "; ";
        ok = ok && d;
    }
    const bool copies = duplicator_forever(disjoint_copies(cycle_db(3), 2), cycle_db(4));
    out << "2xD3/D4 duplicator: " << yes_no(copies) << "; ";
    ok = ok && copies;

    const Database d3 = cycle_db(3);
    const Database d4 = cycle_db(4);
    const GameVerdict inf = solve_infinite(d3, d4, {}, {});
    if (inf.winner != Player::spoiler || inf.rank.is_infinite()) {
        out << "D3/D4: spoiler does not win";
        detail = out.str();
        return false;
    }
    const auto r = static_cast<std::size_t>(inf.rank.rounds() + 1);
    const bool finite = solve_finite(d3, d4, {}, {}, r).winner == Player::spoiler &&
                        solve_finite(d3, d4, {}, {}, r - 1).winner == Player::duplicator;
    const ExprPtr e = distinguishing_expression(d3, {}, r);
    const bool in3 = evaluate(e, d3).contains({});
    const bool in4 = evaluate(e, d4).contains({});
    out << "D3/D4 spoiler wins with " << r << " rounds: " << yes_no(finite) << "; E contains () on D3 "
        << yes_no(in3) << ", on D4 " << yes_no(in4);
    detail = out.str();
    return ok && finite && in3 && !in4;
}

bool cardinality_claim(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (std::size_t k : {3, 4, 5}) {
        const bool d = duplicator_forever(unary_db(2), unary_db(k));
        out << "|S|=2/" << k << " duplicator: " << yes_no(d) << "; ";
        ok = ok && d;
    }
    std::size_t checked = 0, wrong = 0;
    for (unsigned mask = 0; mask < (1u << 6); ++mask) {
        Relation s(1);
        for (int v = 0; v < 6; ++v)
            if (mask & (1u << v))
                s.insert({v + 1});
        Database db(Vocabulary::ordered());
        db.set_relation("S", s);
        for (std::size_t k = 1; k <= 5; ++k) {
            ++checked;
            if (is_empty(expr_at_least(k), db) == (s.size() >= k))
                ++wrong;
        }
    }
    out << "at_least(k) on all subsets of {1..6}: " << checked << " cases, " << wrong << " wrong";
    detail = out.str();
    return ok && wrong == 0;
}

bool ordered_games_claim(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (std::size_t n : {1, 2, 3}) {
        const std::size_t m = 2 * n + 1;
        const auto prod = ordered_product_dbs(m);
        const auto comp = ordered_composition_dbs(m);
        SemijoinGame gp(prod.first, prod.second);
        SemijoinGame gc(comp.first, comp.second);
        const bool p = gp.solve_finite({}, n).winner == Player::duplicator;
        const bool c = gc.solve_finite({}, n).winner == Player::duplicator;
        out << "m=" << m << ": product " << yes_no(p) << " (rank " << to_string(gp.rank({})) << "), composition "
            << yes_no(c) << " (rank " << to_string(gc.rank({})) << "); ";
        ok = ok && p && c;
    }
    detail = out.str();
    return ok;
}

bool bounded_agreement_claim(std::string& detail) {
    std::size_t configs = 0, violations = 0, spoiler = 0, witnessed = 0, reps = 0;
    EnumerationBounds bounds;
    bounds.max_depth = 2;
    for (int seed = 1; seed <= kRandomPairs; ++seed) {
        const auto [a, b] = random_pair(seed);
        SemijoinGame g(a, b);
        const SeparationOracle oracle(a, b, bounds);
        reps += oracle.representative_count();
        Evaluator ea(a), eb(b);
        for (const auto& ta : positions(g, Side::left)) {
            for (const auto& tb : positions(g, Side::right)) {
                ++configs;
                const SurvivalRank rank = g.rank({ta, tb});
                for (std::size_t m = 0; m <= 2; ++m) {
                    const auto e = oracle.separating_expression(ta, tb, m);
                    if (e) {
                        // The oracle's bitsets must agree with the evaluator.
                        if (ea(*e).contains(ta) == eb(*e).contains(tb) || sj_depth(*e) > m)
                            ++violations;
                    }
                    if (rank.survives(m)) {
                        if (e)
                            ++violations;
                    } else {
                        ++spoiler;
                        witnessed += e.has_value();
                    }
                }
            }
        }
    }
    detail = std::to_string(kRandomPairs) + " pairs, " + std::to_string(configs) + " configurations, " +
             std::to_string(reps) + " representatives, " + std::to_string(violations) + " violations; " +
             std::to_string(witnessed) + " of " + std::to_string(spoiler) +
             " spoiler wins witnessed by an enumerated expression";
    return violations == 0;
}

bool synthesis_claim(std::string& detail) {
    std::size_t checks = 0, violations = 0, separations = 0;
    for (int seed = 1; seed <= kRandomPairs; ++seed) {
        const auto [a, b] = random_pair(seed);
        SemijoinGame g(a, b);
        for (Side side : {Side::left, Side::right}) {
            const Database& self = g.database(side);
            const Database& other = g.database(opposite(side));
            Distinguisher dist(self);
            Evaluator on_self(self), on_other(other);
            const auto others = positions(g, opposite(side));
            for (std::size_t r = 0; r <= 2; ++r) {
                for (const auto& ta : g.tuple_space(side)) {
                    const ExprPtr e = dist.expression(ta, r);
                    ++checks;
                    if (!on_self(e).contains(ta))
                        ++violations;
                    const Relation& value = on_other(e);
                    for (const auto& tb : others) {
                        ++checks;
                        const Configuration cfg = side == Side::left ? Configuration{ta, tb} : Configuration{tb, ta};
                        const bool duplicator = g.rank(cfg).survives(r);
                        if (value.contains(tb) != duplicator)
                            ++violations;
                        separations += !duplicator;
                    }
                }
            }
        }
    }
    detail = std::to_string(checks) + " membership checks, " + std::to_string(separations) +
             " spoiler wins separated, " + std::to_string(violations) + " violations";
    return violations == 0;
}

Database random_over(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab, std::size_t universe,
                     std::size_t max_tuples) {
    RandomDatabaseParams params;
    params.universe = universe;
    params.max_tuples = max_tuples;
    return random_database(rng, schema, vocab, params);
}

bool expressible_claim(std::string& detail) {
    std::mt19937_64 rng(8);
    std::size_t runs = 0, wrong = 0, printed_wrong = 0;
    const Schema graph{{"R", 2}};
    const Schema product{{"R", 1}, {"S", 1}, {"T", 2}};
    const Schema wide_product{{"R", 2}, {"S", 2}, {"T", 4}};
    const Schema unary{{"S", 1}};
    const Vocabulary eq;
    for (int i = 0; i < kRandomDatabases; ++i) {
        const Database g = random_over(rng, graph, eq, 4, 6);
        const Relation& r = g.relation("R");
        for (std::size_t k = 1; k <= 4; ++k)
            wrong += is_empty(expr_path(k), g) == has_path(r, k);
        wrong += is_empty(expr_simple_path2(), g) == has_simple_path(r, 2);
        printed_wrong += is_empty(expr_simple_path2_printed(), g) == has_simple_path(r, 2);
        for (std::size_t k = 1; k <= 2; ++k)
            wrong += is_empty(expr_cycle(k), g) == has_cycle(r, k);

        const Database p = random_over(rng, product, eq, 3, 5);
        wrong += is_empty(expr_T_subset_RxS(1, 1), p) !=
                 contained_in_cartesian(p.relation("T"), p.relation("R"), p.relation("S"));
        const Database w = random_over(rng, wide_product, eq, 2, 4);
        wrong += is_empty(expr_T_subset_RxS(2, 2), w) !=
                 contained_in_cartesian(w.relation("T"), w.relation("R"), w.relation("S"));

        const Database u = random_over(rng, unary, eq, 4, 4);
        wrong += is_empty(expr_two_distinct(), u) == count_at_least(u.relation("S"), 2);
        ++runs;
    }
    detail = std::to_string(runs) + " random databases per query, " + std::to_string(wrong) +
             " disagreements; the printed simple-path-2 condition disagrees on " + std::to_string(printed_wrong);
    return wrong == 0;
}

std::size_t count_semijoin_violations(const ExprPtr& e, Evaluator& ev) {
    if (!e)
        return 0;
    std::size_t bad = count_semijoin_violations(e->left(), ev) + count_semijoin_violations(e->right(), ev);
    if (e->kind() == ExprKind::semijoin || e->kind() == ExprKind::selection) {
        const Relation& out = ev(e);
        const Relation& in = ev(e->left());
        if (out.size() > in.size())
            ++bad;
        for (const auto& t : out)
            bad += !in.contains(t);
    }
    return bad;
}

bool structural_claim(std::string& detail) {
    std::size_t size_bound = 0, naive = 0, antitone = 0, fixpoint = 0, closure = 0, round_trip = 0;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
        RandomDatabaseParams params;
        const Schema schema = random_schema(rng, params);
        const Vocabulary vocab(std::bernoulli_distribution(0.5)(rng));
        const Database db = random_database(rng, schema, vocab, params);
        const ExprPtr e = random_expression(rng, schema, vocab, 4);
        Evaluator ev(db);
        size_bound += count_semijoin_violations(e, ev);
        naive += !(ev(e) == evaluate_naive(e, db));
        const ExprPtr back = parse_expression(render_expression(e), schema, vocab);
        round_trip += !structurally_equal(e, back);
        round_trip += !(parse_database(render_database(db)) == db);
    }
    for (int seed = 1; seed <= kRandomPairs; ++seed) {
        const auto [a, b] = random_pair(seed);
        SemijoinGame g(a, b);
        const auto left = positions(g, Side::left);
        const auto right = positions(g, Side::right);
        for (const auto& ta : left) {
            for (const auto& tb : right) {
                const Configuration cfg{ta, tb};
                bool previous = true;
                for (std::size_t m = 0; m <= 4; ++m) {
                    const bool wins = g.solve_finite(cfg, m).winner == Player::duplicator;
                    antitone += wins && !previous;
                    previous = wins;
                }
                const bool forever = g.solve_infinite(cfg).winner == Player::duplicator;
                fixpoint += forever != (g.solve_finite(cfg, g.configuration_count()).winner == Player::duplicator);
                if (!g.win0(ta, tb))
                    continue;
                for (Side side : {Side::left, Side::right}) {
                    for (const auto& c : g.tuple_space(side)) {
                        for (const auto& d : g.legal_answers(cfg, side, c)) {
                            const bool ok = side == Side::left ? g.win0(c, d) : g.win0(d, c);
                            closure += !ok;
                        }
                    }
                }
            }
        }
    }
    detail = "semijoin/selection size bound " + std::to_string(size_bound) + ", memo vs naive " +
             std::to_string(naive) + ", antitone rounds " + std::to_string(antitone) + ", fixpoint " +
             std::to_string(fixpoint) + ", legal-answer closure " + std::to_string(closure) + ", round trip " +
             std::to_string(round_trip) + " violations";
    return size_bound + naive + antitone + fixpoint + closure + round_trip == 0;
}

bool order_invariance_claim(std::string& detail) {
    std::mt19937_64 rng(10);
    std::size_t instances = 0, relabelings = 0, changed = 0;
    for (std::size_t n = 0; n <= 6; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            ++instances;
            std::vector<std::int64_t> pool(100);
            for (std::size_t i = 0; i < pool.size(); ++i)
                pool[i] = static_cast<std::int64_t>(i + 1);
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<std::int64_t> values(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
            auto build = [](const std::vector<std::int64_t>& vs) {
                Relation s(1);
                for (auto v : vs)
                    s.insert({v});
                Database db(Vocabulary::ordered());
                db.set_relation("S", s);
                return db;
            };
            const Database base = build(values);
            std::vector<bool> expected;
            for (std::size_t k = 1; k <= 6; ++k)
                expected.push_back(!is_empty(expr_at_least(k), base));
            for (int t = 0; t < 50; ++t) {
                ++relabelings;
                std::shuffle(pool.begin(), pool.end(), rng);
                std::vector<std::int64_t> relabelled(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
                const Database db = build(relabelled);
                for (std::size_t k = 1; k <= 6; ++k)
                    changed += !is_empty(expr_at_least(k), db) != expected[k - 1];
            }
        }
    }
    detail = std::to_string(instances) + " instances, " + std::to_string(relabelings) + " relabelings, " +
             std::to_string(changed) + " changes";
    return changed == 0;
}

std::vector<Claim> build_claims() {
    return {
        {1, "T contains R x S is not expressible", 1.0, figure1_claim},
        {2, "containment in or of R o S is not expressible", 1.0, figure2_claim},
        {3, "cycles and simple paths", 5.0, cycles_claim},
        {4, "cardinality with and without order", 1.0, cardinality_claim},
        {5, "ordered product and composition games", 30.0, ordered_games_claim},
        {6, "game wins imply agreement on bounded expressions", 300.0, bounded_agreement_claim},
        {7, "synthesized expressions match the game", 300.0, synthesis_claim},
        {8, "expressible queries agree with direct oracles", 60.0, expressible_claim},
        {9, "structural properties", 120.0, structural_claim},
        {10, "at_least(k) is order invariant", 60.0, order_invariance_claim},
    };
}

} // namespace

const std::vector<Claim>& paper_claims() {
    static const std::vector<Claim> claims = build_claims();
    return claims;
}

ClaimResult run_claim(const Claim& claim) {
    ClaimResult r;
    r.id = claim.id;
    r.title = claim.title;
    r.limit_seconds = claim.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
        r.passed = claim.check(r.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.passed && r.seconds > r.limit_seconds) {
        r.passed = false;
        r.detail += "; exceeded the " + std::to_string(r.limit_seconds) + "s limit";
    }
    return r;
}

std::vector<ClaimResult> run_paper_suite() {
    std::vector<ClaimResult> out;
    for (const auto& c : paper_claims())
        out.push_back(run_claim(c));
    return out;
}

std::string render_claim_line(const ClaimResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.title + " (" + secs +
           "s): " + r.detail;
}

} // namespace sa
