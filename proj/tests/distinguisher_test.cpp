#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "sa/corpus.hpp"
#include "sa/distinguisher.hpp"
#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/game.hpp"
#include "sa/oracle.hpp"

using namespace sa;
using sa::test::sym;

TEST(BaseExpression, EmptyTupleOnFigureOne) {
    const auto [a, b] = figure1();
    const ExprPtr e = base_expression(a, {});
    EXPECT_EQ(e->arity(), 0u);
    EXPECT_TRUE(evaluate(e, a).contains({}));
    EXPECT_TRUE(evaluate(e, b).contains({}));
    Database partial(b.vocabulary());
    partial.add_relation("R", 1);
    partial.add_relation("S", 1);
    partial.add_relation("T", 2);
    partial.insert("R", {1});
    EXPECT_FALSE(evaluate(e, partial).contains({}));
}

TEST(BaseExpression, FigureOnePair) {
    const auto [a, b] = figure1();
    const ExprPtr e = base_expression(a, {sym("a"), 1});
    EXPECT_EQ(evaluate(e, b), b.relation("T"));
}

TEST(BaseExpression, Singleton) {
    const Database d = sa::test::db("rel R/1 { (7) }");
    EXPECT_EQ(evaluate(base_expression(d, {7}), d), Relation(1, {{7}}));
}

TEST(BaseExpression, RejectsTupleOutsideSpace) {
    EXPECT_THROW(base_expression(cycle_db(3), {1, 3}), ValidationError);
}

TEST(BaseExpression, MatchesWin0) {
    for (int seed = 1; seed <= 50; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto [a, b] = random_database_pair(rng, {});
        Distinguisher dist(a);
        Evaluator on_b(b);
        for (const auto& ta : tuple_space(a)) {
            const Relation& value = on_b(dist.base_expression(ta));
            EXPECT_TRUE(evaluate(dist.base_expression(ta), a).contains(ta));
            for (const auto& tb : tuple_space(b))
                EXPECT_EQ(value.contains(tb), win0(a, b, ta, tb));
        }
    }
}

TEST(DistinguishingExpression, RoundZeroIsBase) {
    const Database d = figure2().first;
    Distinguisher dist(d);
    for (const auto& t : tuple_space(d))
        EXPECT_EQ(dist.expression(t, 0), dist.base_expression(t));
}

TEST(DistinguishingExpression, ThreeAndFourCycles) {
    const Database d3 = cycle_db(3), d4 = cycle_db(4);
    const GameVerdict v = solve_infinite(d3, d4, {}, {});
    ASSERT_EQ(v.winner, Player::spoiler);
    const auto r = static_cast<std::size_t>(v.rank.rounds() + 1);
    const ExprPtr e = distinguishing_expression(d3, {}, r);
    EXPECT_TRUE(evaluate(e, d3).contains({}));
    EXPECT_FALSE(evaluate(e, d4).contains({}));
    EXPECT_LE(sj_depth(e), 2 * r + 1);
}

TEST(DistinguishingExpression, FourCycleAgainstTriangleCopies) {
    const Database d4 = cycle_db(4);
    const Database copies = disjoint_copies(cycle_db(3), 2);
    SemijoinGame g(d4, copies);
    Distinguisher dist(d4);
    Evaluator on_copies(copies);
    for (std::size_t r = 0; r <= 3; ++r) {
        for (const auto& a : tuple_space(d4)) {
            const Relation& value = on_copies(dist.expression(a, r));
            for (const auto& b : tuple_space(copies))
                EXPECT_EQ(value.contains(b), g.rank({a, b}).survives(r));
        }
    }
}

TEST(DistinguishingExpression, GameEquivalenceOnCorpus) {
    for (const char* name : {"figure1", "figure2", "cycles-3-4", "unary-ordered-2-3", "two-distinct"}) {
        const auto& entry = corpus_entry(name);
        const Database& a = entry.databases[0].second;
        const Database& b = entry.databases[1].second;
        SemijoinGame g(a, b);
        Distinguisher dist(a);
        Evaluator on_a(a), on_b(b);
        std::vector<Tuple> right{{}};
        for (const auto& t : tuple_space(b))
            if (!t.empty())
                right.push_back(t);
        for (std::size_t r = 0; r <= 3; ++r) {
            for (const auto& ta : tuple_space(a)) {
                const ExprPtr e = dist.expression(ta, r);
                EXPECT_TRUE(on_a(e).contains(ta)) << name;
                for (const auto& tb : right)
                    EXPECT_EQ(on_b(e).contains(tb), g.rank({ta, tb}).survives(r)) << name;
            }
        }
    }
}

TEST(DistinguishingExpression, DepthGrowsLinearly) {
    const Database d = cycle_db(3);
    Distinguisher dist(d);
    std::size_t previous = sj_depth(dist.expression({}, 0));
    for (std::size_t r = 1; r <= 4; ++r) {
        const std::size_t depth = sj_depth(dist.expression({}, r));
        EXPECT_GE(depth, previous + 1);
        EXPECT_LE(depth, previous + 2);
        previous = depth;
    }
}

TEST(DistinguishingExpression, Budgets) {
    SynthesisBudget tight;
    tight.max_rounds = 2;
    EXPECT_THROW(distinguishing_expression(cycle_db(3), {}, 3, tight), BudgetExceeded);
    tight.max_rounds = 16;
    tight.max_nodes = 50;
    EXPECT_THROW(distinguishing_expression(cycle_db(5), {}, 2, tight), BudgetExceeded);
    tight.max_nodes = 5000000;
    tight.max_types = 10;
    EXPECT_THROW(distinguishing_expression(cycle_db(3), {1, 2}, 1, tight), BudgetExceeded);
}

TEST(DistinguishingExpression, RejectsExtraPredicates) {
    EXPECT_THROW(Distinguisher(sa::test::db("pred P/1 { (1) } rel R/1 { (1) }")), ValidationError);
}

TEST(ComplementExpr, OfFullRelationIsEmpty) {
    const Schema s{{"R", 2}};
    const ExprPtr c = complement_expr(Expr::relation("R", 2), s, 2);
    for (int k = 1; k <= 5; ++k)
        EXPECT_TRUE(evaluate(c, cycle_db(static_cast<std::size_t>(k))).empty());
}

TEST(ComplementExpr, SubtractsEveryProjection) {
    const Schema s{{"R", 2}, {"S", 1}};
    const ExprPtr e = parse_expression("project[1](R)", s, Vocabulary{});
    const ExprPtr c = complement_expr(e, s, 1);
    EXPECT_EQ(render_expression(c), "(((project[1](R) union project[2](R)) union S) diff project[1](R))");
    const Database d = sa::test::db("rel R/2 { (1,2) } rel S/1 { (3) }");
    EXPECT_EQ(evaluate(c, d), Relation(1, {{2}, {3}}));
}

TEST(ComplementExpr, Nullary) {
    const Schema s{{"R", 2}, {"S", 1}};
    const ExprPtr e = parse_expression("project[](S)", s, Vocabulary{});
    const ExprPtr c = complement_expr(e, s, 0);
    EXPECT_EQ(render_expression(c), "((project[](R) union project[](S)) diff project[](S))");
    EXPECT_THROW(complement_expr(e, s, 1), ValidationError);
}

TEST(Certify, FigureTwoDuplicator) {
    const auto [a, b] = figure2();
    const Certificate c = certify(a, b, {}, {});
    EXPECT_EQ(c.winner, Player::duplicator);
    EXPECT_TRUE(c.rank.is_infinite());
    EXPECT_FALSE(c.separates());
    EXPECT_GT(c.winning_region_size, 0u);
    EXPECT_NE(render_certificate(c).find("winning-region"), std::string::npos);
}

TEST(Certify, UnaryTwoAgainstFive) {
    EXPECT_EQ(certify(unary_db(2), unary_db(5), {}, {}).winner, Player::duplicator);
}

TEST(Certify, OrderedUnarySeparates) {
    const Certificate c = certify(unary_db(2, true), unary_db(3, true), {}, {});
    EXPECT_EQ(c.winner, Player::spoiler);
    EXPECT_TRUE(c.separates());
    const std::string text = render_certificate(c);
    EXPECT_NE(text.find("separates: yes"), std::string::npos);
}

TEST(Certify, BuildsFromRightWhenLeftTupleIsArtificial) {
    Database empty;
    empty.add_relation("S", 1);
    const Certificate c = certify(empty, unary_db(1), {}, {});
    EXPECT_EQ(c.winner, Player::spoiler);
    EXPECT_EQ(c.built_from, Side::right);
    EXPECT_TRUE(c.separates());
}

TEST(Certify, RandomPairsAlwaysSeparate) {
    for (int seed = 1; seed <= 60; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto [a, b] = random_database_pair(rng, {});
        const Certificate c = certify(a, b, {}, {});
        if (c.winner == Player::spoiler)
            EXPECT_TRUE(c.separates()) << seed;
    }
}

TEST(RenderDag, ListsEachNodeOnce) {
    const ExprPtr r = Expr::relation("R", 2);
    const ExprPtr e = Expr::union_of(r, r);
    EXPECT_EQ(render_dag(e), "n0 = R\nn1 = (n0 union n0)\n");
}
