#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "sa/corpus.hpp"
#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/oracle.hpp"

using namespace sa;

namespace {

std::set<std::string> enumerate_all(const Schema& s, const Vocabulary& v, const EnumerationBounds& b) {
    std::set<std::string> out;
    enumerate_expressions(s, v, b, [&](const ExprPtr& e) {
        out.insert(render_expression(e));
        return true;
    });
    return out;
}

} // namespace

TEST(SjDepth, Examples) {
    const Schema s{{"R", 2}, {"S", 1}};
    const Vocabulary v;
    EXPECT_EQ(sj_depth(parse_expression("R", s, v)), 0u);
    EXPECT_EQ(sj_depth(parse_expression("project[1]((R semijoin[x2 = y1] R))", s, v)), 2u);
    EXPECT_EQ(sj_depth(parse_expression("(select[x1 = x2](R) union R)", s, v)), 0u);
    EXPECT_EQ(sj_depth(parse_expression("(S diff project[2]((R semijoin[x1 = y1] S)))", s, v)), 2u);
}

TEST(Enumerate, UnaryDepthZero) {
    EnumerationBounds b;
    b.max_depth = 0;
    const auto all = enumerate_all({{"S", 1}}, Vocabulary{}, b);
    EXPECT_TRUE(all.count("S"));
    EXPECT_TRUE(all.count("(S diff S)"));
    for (const auto& e : all)
        EXPECT_EQ(e.find("semijoin"), std::string::npos) << e;
}

TEST(Enumerate, BinaryDepthOne) {
    EnumerationBounds b;
    b.max_depth = 1;
    const auto all = enumerate_all({{"R", 2}}, Vocabulary{}, b);
    EXPECT_TRUE(all.count("R"));
    EXPECT_TRUE(all.count("project[1](R)"));
    EXPECT_TRUE(all.count("project[2](R)"));
    EXPECT_TRUE(all.count("project[](R)"));
    bool semijoin = false;
    for (const auto& e : all)
        semijoin = semijoin || e.rfind("(R semijoin[", 0) == 0;
    EXPECT_TRUE(semijoin);
}

TEST(Enumerate, DepthIsBounded) {
    const Schema s{{"R", 2}, {"S", 1}};
    for (std::size_t d = 0; d <= 2; ++d) {
        EnumerationBounds b;
        b.max_depth = d;
        b.max_boolean_size = 1;
        std::size_t count = 0;
        enumerate_expressions(s, Vocabulary{}, b, [&](const ExprPtr& e) {
            EXPECT_LE(sj_depth(e), 2 * d);
            ++count;
            return true;
        });
        EXPECT_GT(count, 0u);
    }
}

TEST(Enumerate, StopsWhenSinkReturnsFalse) {
    std::size_t count = 0;
    enumerate_expressions({{"R", 2}}, Vocabulary{}, EnumerationBounds{}, [&](const ExprPtr&) {
        ++count;
        return count < 3;
    });
    EXPECT_EQ(count, 3u);
}

TEST(Enumerate, Budget) {
    EnumerationBounds b;
    b.max_depth = 2;
    b.max_expressions = 100;
    EXPECT_THROW(enumerate_all({{"R", 2}, {"S", 2}}, Vocabulary{}, b), BudgetExceeded);
}

TEST(Enumerate, LiteralPool) {
    EnumerationBounds b;
    b.max_depth = 1;
    b.max_boolean_size = 1;
    b.pool = ConditionPool::literal_conjunctions;
    b.max_literals = 1;
    const auto all = enumerate_all({{"S", 1}}, Vocabulary::ordered(), b);
    EXPECT_TRUE(all.count("(S semijoin[x1 < y1] S)"));
    EXPECT_TRUE(all.count("(S semijoin[x1 != y1] S)"));
}

TEST(SeparationOracle, RepresentativesMatchEvaluator) {
    const auto [a, b] = figure1();
    EnumerationBounds bounds;
    bounds.max_depth = 1;
    const SeparationOracle oracle(a, b, bounds);
    ASSERT_GT(oracle.representative_count(), 0u);
    for (std::size_t i = 0; i < oracle.representative_count(); ++i) {
        const ExprPtr& e = oracle.representative(i);
        EXPECT_LE(sj_depth(e), 2 * oracle.representative_depth(i));
        const Relation va = evaluate(e, a), vb = evaluate(e, b);
        for (const auto& t : tuple_space(a))
            if (t.size() == e->arity()) {
                const auto& p = oracle.profile(0, t, oracle.max_depth());
                EXPECT_EQ(((p[i / 64] >> (i % 64)) & 1u) != 0, va.contains(t));
            }
        for (const auto& t : tuple_space(b))
            if (t.size() == e->arity()) {
                const auto& p = oracle.profile(1, t, oracle.max_depth());
                EXPECT_EQ(((p[i / 64] >> (i % 64)) & 1u) != 0, vb.contains(t));
            }
    }
}

TEST(SeparationOracle, FigureOneIsNotSeparated) {
    const auto [a, b] = figure1();
    EnumerationBounds bounds;
    bounds.max_depth = 2;
    const SeparationOracle oracle(a, b, bounds);
    EXPECT_FALSE(oracle.separating_expression({}, {}, 2).has_value());
}

TEST(SeparationOracle, SeparatesThreeAndFourCycles) {
    const Database d3 = cycle_db(3), d4 = cycle_db(4);
    EnumerationBounds bounds;
    bounds.max_depth = 2;
    const SeparationOracle oracle(d3, d4, bounds);
    const auto e = oracle.separating_expression({}, {}, 2);
    ASSERT_TRUE(e.has_value());
    EXPECT_LE(sj_depth(*e), 4u);
    EXPECT_NE(evaluate(*e, d3).contains({}), evaluate(*e, d4).contains({}));
}

TEST(SeparationOracle, RejectsLiteralPool) {
    EnumerationBounds bounds;
    bounds.pool = ConditionPool::literal_conjunctions;
    EXPECT_THROW(SeparationOracle(cycle_db(3), cycle_db(4), bounds), ValidationError);
}

TEST(Indistinguishable, Examples) {
    EnumerationBounds bounds;
    bounds.max_depth = 2;
    const Database d = cycle_db(3);
    EXPECT_TRUE(indistinguishable_bruteforce(d, d, {}, {}, bounds));
    const auto [a, b] = figure2();
    EXPECT_TRUE(indistinguishable_bruteforce(a, b, {}, {}, bounds));
    EXPECT_FALSE(indistinguishable_bruteforce(unary_db(1), unary_db(2), {}, {}, bounds));
    EXPECT_FALSE(indistinguishable_bruteforce(cycle_db(3), cycle_db(4), {}, {}, bounds));
}

TEST(DirectOracles, Cartesian) {
    const auto [a, b] = figure1();
    EXPECT_TRUE(cartesian_contains(a.relation("T"), a.relation("R"), a.relation("S")));
    EXPECT_TRUE(contained_in_cartesian(a.relation("T"), a.relation("R"), a.relation("S")));
    EXPECT_FALSE(cartesian_contains(b.relation("T"), b.relation("R"), b.relation("S")));
}

TEST(DirectOracles, Composition) {
    const Database a = figure2().first;
    EXPECT_EQ(composition(a.relation("R"), a.relation("S")), a.relation("T"));
}

TEST(DirectOracles, Paths) {
    EXPECT_TRUE(has_path(cycle_db(3).relation("R"), 10));
    EXPECT_FALSE(has_path(sa::test::rel(2, {{1, 2}}), 2));
    EXPECT_TRUE(has_simple_path(cycle_db(5).relation("R"), 4));
    EXPECT_FALSE(has_simple_path(cycle_db(4).relation("R"), 4));
    EXPECT_FALSE(has_simple_path(sa::test::rel(2, {{1, 2}, {2, 1}}), 2));
}

TEST(DirectOracles, Cycles) {
    EXPECT_TRUE(has_cycle(disjoint_copies(cycle_db(3), 2).relation("R"), 3));
    EXPECT_FALSE(has_cycle(cycle_db(4).relation("R"), 3));
    EXPECT_TRUE(has_cycle(sa::test::rel(2, {{1, 1}}), 1));
    EXPECT_TRUE(has_cycle(sa::test::rel(2, {{1, 2}, {2, 1}}), 2));
    EXPECT_FALSE(has_cycle(sa::test::rel(2, {{1, 2}, {2, 1}}), 1));
}

TEST(DirectOracles, CountAtLeast) {
    EXPECT_TRUE(count_at_least(unary_db(3).relation("S"), 3));
    EXPECT_FALSE(count_at_least(unary_db(3).relation("S"), 4));
    EXPECT_TRUE(count_at_least(unary_db(0).relation("S"), 0));
}

TEST(Random, DatabasesAreValid) {
    std::mt19937_64 rng(5);
    RandomDatabaseParams params;
    for (int i = 0; i < 100; ++i) {
        const auto [a, b] = random_database_pair(rng, params);
        EXPECT_EQ(a.schema(), b.schema());
        EXPECT_EQ(a.vocabulary(), b.vocabulary());
        for (const auto& [name, r] : a.relations())
            for (const auto& t : r)
                for (const auto& v : t) {
                    EXPECT_TRUE(v.is_int());
                    EXPECT_GE(v.as_int(), 1);
                    EXPECT_LE(v.as_int(), static_cast<std::int64_t>(params.universe));
                }
    }
}

TEST(Random, ExpressionsValidate) {
    std::mt19937_64 rng(6);
    const Schema s{{"R", 2}, {"S", 1}};
    for (int i = 0; i < 200; ++i) {
        const ExprPtr e = random_expression(rng, s, Vocabulary::ordered(), 3);
        EXPECT_NO_THROW(validate(e, s, Vocabulary::ordered()));
    }
}
