#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "sa/corpus.hpp"
#include "sa/parser.hpp"

using namespace sa;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("sa-cli-" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const Database& d) const { return write(name, render_database(d)); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

} // namespace

TEST(CliEval, TwoDistinctOnFigureOne) {
    TempDir dir;
    const auto a = dir.write("a.db", figure1().first);
    const Result r = run({"eval", a, "(R semijoin[x1 != y1] R)"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "(a)\n(b)\n");
}

TEST(CliEval, EmptyCheck) {
    TempDir dir;
    const auto d = dir.write("d.db", "rel S/1 { (1) }");
    EXPECT_EQ(run({"eval", d, "(S semijoin[x1 != y1] S)", "--empty-check"}).code, 1);
    EXPECT_EQ(run({"eval", d, "S", "--empty-check"}).code, 0);
}

TEST(CliEval, EmptyDatabase) {
    TempDir dir;
    const auto d = dir.write("d.db", "rel S/1 { }");
    const Result r = run({"eval", d, "S"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
}

TEST(CliEval, ExpressionFile) {
    TempDir dir;
    const auto d = dir.write("d.db", "rel S/1 { (1) (2) }");
    const auto e = dir.write("e.sa", "project[](S)\n");
    const Result r = run({"eval", d, "--expr-file", e});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "()\n");
}

TEST(CliEval, Errors) {
    TempDir dir;
    const auto d = dir.write("d.db", "rel S/1 { (1) }");
    const Result unknown = run({"eval", d, "R"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("error:"), std::string::npos);
    EXPECT_EQ(run({"eval", d, "(S semijoin[x1 = "}).code, 2);
    const auto bad = dir.write("bad.db", "rel S/1 { (1 }");
    const Result parse = run({"eval", bad, "S"});
    EXPECT_EQ(parse.code, 2);
    EXPECT_NE(parse.err.find("bad.db"), std::string::npos);
    EXPECT_EQ(run({"eval", (dir.path() / "missing.db").string(), "S"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(CliGame, CyclesFourFive) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(4));
    const auto b = dir.write("b.db", cycle_db(5));
    const Result r = run({"game", a, b, "--rounds", "inf"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("winner: duplicator\n"), std::string::npos);
    EXPECT_NE(r.out.find("rank: inf\n"), std::string::npos);
    EXPECT_NE(r.out.find("rounds: inf\n"), std::string::npos);
}

TEST(CliGame, ThreeAgainstFourWithStrategy) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    const Result r = run({"game", a, b, "--strategy"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("winner: spoiler\n"), std::string::npos);
    EXPECT_NE(r.out.find("rank: 1\n"), std::string::npos);
    EXPECT_NE(r.out.find("strategy:\n"), std::string::npos);
    EXPECT_NE(r.out.find("spoiler picks left (1,2)"), std::string::npos);
}

TEST(CliGame, OrderedProductTwoRounds) {
    TempDir dir;
    const auto [a, b] = ordered_product_dbs(5);
    const Result r = run({"game", dir.write("a.db", a), dir.write("b.db", b), "--rounds", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("winner: duplicator\n"), std::string::npos);
    EXPECT_NE(r.out.find("rounds: 2\n"), std::string::npos);
}

TEST(CliGame, SameFileTwice) {
    TempDir dir;
    const auto a = dir.write("a.db", figure1().first);
    const Result r = run({"game", a, a, "--left", "(a,1)", "--right", "(a,1)", "--strategy"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("winner: duplicator\n"), std::string::npos);
    EXPECT_NE(r.out.find("survival:\n"), std::string::npos);
}

TEST(CliGame, Errors) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    const Result outside = run({"game", a, b, "--left", "(1,3)"});
    EXPECT_EQ(outside.code, 2);
    EXPECT_NE(outside.err.find("(1,2)"), std::string::npos);
    EXPECT_EQ(run({"game", a, b, "--rounds", "many"}).code, 2);
    const auto other = dir.write("c.db", "rel S/1 { (1) }");
    EXPECT_EQ(run({"game", a, other}).code, 2);
    EXPECT_EQ(run({"game", a, b, "--interactive", "--play", "referee"}).code, 2);
}

TEST(CliInteractive, SpoilerRejectsTuplesOutsideSpace) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    const Result r = run({"game", a, b, "--interactive", "--play", "spoiler", "--rounds", "2"},
                         "left (1,3)\nmiddle (1)\nleft (1,2)\nleft (2,3)\n");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("illegal move: (1,3)"), std::string::npos);
    EXPECT_NE(r.out.find("expected 'left TUPLE' or 'right TUPLE'"), std::string::npos);
    EXPECT_NE(r.out.find("duplicator answers"), std::string::npos);
}

TEST(CliInteractive, DuplicatorNeverAcceptsIllegalAnswer) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    const Result r = run({"game", a, b, "--interactive", "--play", "duplicator", "--rounds", "3"},
                         "(9,9)\n(1\n(1,2)\n(2,3)\n(3,4)\n(4,1)\n");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("illegal answer; legal answers:"), std::string::npos);
    EXPECT_NE(r.out.find("bad tuple:"), std::string::npos);
    EXPECT_EQ(r.out.find("duplicator answers (9,9)"), std::string::npos);
}

TEST(CliInteractive, RandomInputNeverLeavesLegalPlay) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::string input;
        for (int i = 0; i < 12; ++i)
            input += "(" + std::to_string(rng() % 5) + "," + std::to_string(rng() % 5) + ")\n";
        const Result r = run({"game", a, b, "--interactive", "--play", "duplicator", "--rounds", "4"}, input);
        EXPECT_EQ(r.code, 0);
        std::istringstream lines(r.out);
        std::string line;
        while (std::getline(lines, line))
            EXPECT_EQ(line.find("error"), std::string::npos) << line;
    }
}

TEST(CliDistinguish, Examples) {
    TempDir dir;
    const auto a = dir.write("a.db", cycle_db(3));
    const auto b = dir.write("b.db", cycle_db(4));
    const Result sep = run({"distinguish", a, b});
    EXPECT_EQ(sep.code, 0) << sep.err;
    EXPECT_NE(sep.out.find("separates: yes"), std::string::npos);
    const auto [f, g] = figure2();
    const Result dup = run({"distinguish", dir.write("f.db", f), dir.write("g.db", g)});
    EXPECT_EQ(dup.code, 0) << dup.err;
    EXPECT_NE(dup.out.find("winner: duplicator"), std::string::npos);
}

TEST(CliCorpus, ListAndEmit) {
    const Result list = run({"corpus", "list"});
    EXPECT_EQ(list.code, 0);
    std::size_t lines = 0;
    for (char c : list.out)
        lines += c == '\n';
    EXPECT_GE(lines, 10u);
    EXPECT_NE(list.out.find("figure1:"), std::string::npos);

    TempDir dir;
    const Result emit = run({"corpus", "emit", "figure2", "--out", dir.path().string()});
    EXPECT_EQ(emit.code, 0) << emit.err;
    const auto path = dir.path() / "figure2-A.db";
    ASSERT_TRUE(fs::exists(path));
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(parse_database(ss.str()), figure2().first);
    EXPECT_EQ(run({"corpus", "emit", "nope"}).code, 2);
}

TEST(CliCheck, PaperSuite) {
    const Result r = run({"check", "--suite", "paper"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all claims hold"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    const Result one = run({"check", "--suite", "paper", "--only", "3"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(run({"check", "--suite", "other"}).code, 2);
}
