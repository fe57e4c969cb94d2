#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "sa/corpus.hpp"
#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/oracle.hpp"
#include "sa/parser.hpp"

using namespace sa;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Corpus, CycleDb) {
    EXPECT_EQ(cycle_db(3).relation("R"), sa::test::rel(2, {{1, 2}, {2, 3}, {3, 1}}));
    EXPECT_EQ(cycle_db(1).relation("R"), sa::test::rel(2, {{1, 1}}));
}

TEST(Corpus, DisjointCopies) {
    const Database d = disjoint_copies(cycle_db(3), 2);
    EXPECT_EQ(d.relation("R").size(), 6u);
    EXPECT_TRUE(d.relation("R").contains({4, 5}));
    EXPECT_TRUE(d.relation("R").contains({6, 4}));
    EXPECT_FALSE(has_cycle(d.relation("R"), 6));
}

TEST(Corpus, OrderedProduct) {
    const auto [a, b] = ordered_product_dbs(3);
    EXPECT_TRUE(a.vocabulary().has_order());
    EXPECT_EQ(a.relation("T").size(), 9u);
    EXPECT_EQ(b.relation("T").size(), 8u);
    EXPECT_FALSE(b.relation("T").contains({2, 5}));
    EXPECT_TRUE(cartesian_contains(a.relation("T"), a.relation("R"), a.relation("S")));
    EXPECT_FALSE(cartesian_contains(b.relation("T"), b.relation("R"), b.relation("S")));
}

TEST(Corpus, OrderedComposition) {
    const auto [a, b] = ordered_composition_dbs(5);
    EXPECT_EQ(composition(a.relation("R"), a.relation("S")), a.relation("T"));
    EXPECT_NE(composition(b.relation("R"), b.relation("S")), b.relation("T"));
    EXPECT_FALSE(b.relation("T").contains({3, 8}));
}

TEST(Corpus, RejectsEvenOrSmallM) {
    EXPECT_THROW(ordered_product_dbs(4), ValidationError);
    EXPECT_THROW(ordered_product_dbs(1), ValidationError);
    EXPECT_THROW(ordered_composition_dbs(6), ValidationError);
}

TEST(Corpus, Expressions) {
    EXPECT_TRUE(evaluate(expr_path(3), sa::test::db("rel R/2 { (1,2) (2,3) (3,4) }")).size() == 1);
    EXPECT_TRUE(evaluate(expr_path(4), sa::test::db("rel R/2 { (1,2) (2,3) (3,4) }")).empty());
    EXPECT_TRUE(evaluate(expr_simple_path2(), sa::test::db("rel R/2 { (1,2) (2,1) }")).empty());
    EXPECT_FALSE(evaluate(expr_simple_path2_printed(), sa::test::db("rel R/2 { (1,2) (2,1) }")).empty());
    EXPECT_FALSE(evaluate(expr_cycle(2), sa::test::db("rel R/2 { (1,2) (2,1) }")).empty());
    EXPECT_THROW(expr_cycle(3), ValidationError);
    EXPECT_TRUE(evaluate(expr_two_distinct(), unary_db(1)).empty());
    EXPECT_EQ(evaluate(expr_two_distinct(), unary_db(2)).size(), 2u);
}

TEST(Corpus, TSubsetPattern) {
    const auto [a, b] = figure1();
    EXPECT_TRUE(evaluate(expr_T_subset_RxS(1, 1), a).empty());
    EXPECT_TRUE(evaluate(expr_T_subset_RxS(1, 1), b).empty());
    EXPECT_EQ(evaluate(expr_T_cap_RxS(1, 1), a), a.relation("T"));
}

TEST(Corpus, AtLeastIsOrderInvariant) {
    std::mt19937_64 rng(3);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            Database d(Vocabulary::ordered());
            d.add_relation("S", 1);
            std::vector<std::int64_t> values;
            for (std::int64_t v = 1; v <= 6; ++v)
                if (rng() % 2)
                    values.push_back(v * 7 % 11);
            for (auto v : values)
                d.insert("S", {v});
            EXPECT_EQ(!evaluate(expr_at_least(k), d).empty(), count_at_least(d.relation("S"), k));
        }
    }
}

TEST(Corpus, AllChecksHold) {
    const auto& entries = corpus();
    EXPECT_GE(entries.size(), 10u);
    for (const auto& e : entries) {
        EXPECT_FALSE(e.claim.empty()) << e.name;
        EXPECT_TRUE(e.check()) << e.name;
    }
}

TEST(Corpus, UnknownEntry) {
    EXPECT_THROW(corpus_entry("nope"), ValidationError);
}

TEST(Corpus, MatchesGoldenFiles) {
    const std::filesystem::path dir(SA_GOLDEN_DIR);
    for (const auto& e : corpus()) {
        for (const auto& [label, d] : e.databases) {
            const auto path = dir / (e.name + "-" + label + ".db");
            ASSERT_TRUE(std::filesystem::exists(path)) << path;
            const std::string text = read_file(path);
            EXPECT_EQ(text, render_database(d)) << path;
            EXPECT_EQ(parse_database(text), d) << path;
        }
    }
}
