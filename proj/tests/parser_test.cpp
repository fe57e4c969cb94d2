#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "sa/corpus.hpp"
#include "sa/distinguisher.hpp"
#include "sa/error.hpp"
#include "sa/oracle.hpp"

using namespace sa;
using sa::test::sym;

TEST(ParseDatabase, FigureOne) {
    const Database d =
        parse_database("rel R/1 { (a) (b) } rel S/1 { (1) (2) } rel T/2 { (a,1) (a,2) (b,1) (b,2) }");
    EXPECT_EQ(d, figure1().first);
}

TEST(ParseDatabase, EmptyRelation) {
    const Database d = parse_database("rel R/2 { }");
    EXPECT_EQ(d.schema().at("R"), 2u);
    EXPECT_TRUE(d.relation("R").empty());
}

TEST(ParseDatabase, OrderedHeader) {
    const Database d = parse_database("vocab { order } rel S/1 { (1) (2) (3) }");
    EXPECT_TRUE(d.vocabulary().has_order());
    EXPECT_EQ(d, unary_db(3, true));
}

TEST(ParseDatabase, PredicatesAndComments) {
    const Database d = parse_database("# edges\npred E/2 { (1,2) }\nrel R/1 { (1) (-4) } # tail\n");
    ASSERT_NE(d.vocabulary().find("E"), nullptr);
    EXPECT_TRUE(d.vocabulary().find("E")->holds({1, 2}));
    EXPECT_TRUE(d.relation("R").contains({-4}));
}

TEST(ParseDatabase, SyntaxErrorHasPosition) {
    try {
        parse_database("rel R/1 {\n  (a) (b\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 1u);
    }
}

TEST(ParseDatabase, Errors) {
    EXPECT_THROW(parse_database("rel R/2 { (1) }"), Error);
    EXPECT_THROW(parse_database("rel R/1 { } rel R/1 { }"), Error);
    EXPECT_THROW(parse_database("pred P/1 { (1) } rel P/1 { }"), Error);
    EXPECT_THROW(parse_database("rel R/0 { }"), Error);
    EXPECT_THROW(parse_database("relation R/1 { }"), ParseError);
    EXPECT_THROW(parse_database("vocab { colour }"), ParseError);
}

TEST(ParseExpression, PathTwo) {
    const Schema s{{"R", 2}};
    const ExprPtr e = parse_expression("(R semijoin[x2 = y1] R)", s, Vocabulary{});
    EXPECT_TRUE(structurally_equal(e, expr_path(2)));
    EXPECT_EQ(e->arity(), 2u);
}

TEST(ParseExpression, Projection) {
    const ExprPtr e = parse_expression("project[1](R)", {{"R", 2}}, Vocabulary{});
    EXPECT_EQ(e->arity(), 1u);
    EXPECT_EQ(parse_expression("project[](R)", {{"R", 2}}, Vocabulary{})->arity(), 0u);
    EXPECT_EQ(parse_expression("project[2,1](R)", {{"R", 2}}, Vocabulary{})->indices(),
              (std::vector<std::size_t>{1, 2}));
}

TEST(ParseExpression, ContainmentTest) {
    const Schema s{{"R", 2}, {"S", 2}, {"T", 4}};
    const ExprPtr e = parse_expression("(T diff ((T semijoin[x1=y1 & x2=y2] R) semijoin[x3=y1 & x4=y2] S))", s,
                                       Vocabulary{});
    EXPECT_TRUE(structurally_equal(e, expr_T_subset_RxS(2, 2)));
}

TEST(ParseExpression, IntersectionIsSugar) {
    const Schema s{{"R", 1}, {"S", 1}};
    const ExprPtr e = parse_expression("(R isect S)", s, Vocabulary{});
    EXPECT_TRUE(structurally_equal(e, parse_expression("(R diff (R diff S))", s, Vocabulary{})));
}

TEST(ParseExpression, ConditionPrecedence) {
    const Condition c = parse_condition("x1 = y1 | x1 = y2 & !x2 < y1");
    EXPECT_EQ(c.kind(), Condition::Kind::disjunction);
    EXPECT_EQ(render_condition(c), "x1 = y1 | (x1 = y2 & !(x2 < y1))");
    EXPECT_EQ(render_condition(parse_condition("!(x1 = y1)")), "x1 != y1");
    EXPECT_EQ(parse_condition("true").kind(), Condition::Kind::truth);
}

TEST(ParseExpression, Errors) {
    const Schema s{{"R", 2}, {"S", 1}};
    EXPECT_THROW(parse_expression("Q", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("(R union S)", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("project[3](R)", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("project[1,1](R)", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("(R semijoin[x3 = y1] S)", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("select[x1 = y1](R)", s, Vocabulary{}), ValidationError);
    EXPECT_THROW(parse_expression("(S semijoin[x1 < y1] S)", s, Vocabulary{}), ValidationError);
    EXPECT_NO_THROW(parse_expression("(S semijoin[x1 < y1] S)", s, Vocabulary::ordered()));
    EXPECT_THROW(parse_expression("(R union", s, Vocabulary{}), ParseError);
    EXPECT_THROW(parse_expression("R R", s, Vocabulary{}), ParseError);
}

TEST(ParseExpression, UnknownRelationNamesIt) {
    try {
        parse_expression("(R union Q)", {{"R", 1}}, Vocabulary{});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("Q"), std::string::npos);
    }
}

TEST(ParseTuple, Forms) {
    EXPECT_EQ(parse_tuple("(a,1)"), (Tuple{sym("a"), 1}));
    EXPECT_EQ(parse_tuple("()"), Tuple{});
    EXPECT_EQ(parse_tuple(" ( -2 ) "), Tuple{-2});
    EXPECT_THROW(parse_tuple("(a,"), ParseError);
}

TEST(RenderExpression, RoundTripExamples) {
    const Schema s{{"R", 2}, {"S", 1}};
    for (const char* text : {"project[1](R)", "(R semijoin[x1 != y1] R)", "project[](R)",
                             "select[x1 = x2 | !(x1 = x2)](R)", "(S diff project[2](R))"}) {
        const ExprPtr e = parse_expression(text, s, Vocabulary{});
        EXPECT_TRUE(structurally_equal(parse_expression(render_expression(e), s, Vocabulary{}), e)) << text;
    }
}

TEST(RenderExpression, SynthesizedBaseExpressionRoundTrips) {
    const Database a = figure1().first;
    const ExprPtr e = base_expression(a, {sym("a"), 1});
    EXPECT_TRUE(structurally_equal(parse_expression(render_expression(e), a.schema(), a.vocabulary()), e));
}

TEST(RenderExpression, RandomRoundTrip) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        RandomDatabaseParams p;
        p.max_arity = 3;
        const Schema schema = random_schema(rng, p);
        const Vocabulary v{i % 2 == 0};
        const ExprPtr e = random_expression(rng, schema, v, 5);
        const std::string text = render_expression(e);
        const ExprPtr back = parse_expression(text, schema, v);
        ASSERT_TRUE(structurally_equal(back, e)) << text;
        EXPECT_EQ(back->arity(), e->arity());
    }
}

TEST(RenderDatabase, RoundTrip) {
    for (const auto& entry : corpus())
        for (const auto& [label, d] : entry.databases)
            EXPECT_EQ(parse_database(render_database(d)), d) << entry.name;
    Vocabulary v;
    v.add_predicate({"P", 2, {{1, sym("x")}}});
    Database d(v);
    d.add_relation("R", 3);
    EXPECT_EQ(parse_database(render_database(d)), d);
}
