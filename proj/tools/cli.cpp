#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sa/claims.hpp"
#include "sa/corpus.hpp"
#include "sa/distinguisher.hpp"
#include "sa/error.hpp"
#include "sa/evaluator.hpp"
#include "sa/game.hpp"
#include "sa/parser.hpp"

namespace sa::cli {

namespace {

// Bad input from the user; exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Database load_database(const std::string& path) {
    try {
        return parse_database(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + e.what());
    } catch (const ValidationError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string list_tuples(const std::vector<Tuple>& ts) {
    std::string out;
    for (const auto& t : ts)
        out += (out.empty() ? "" : " ") + to_string(t);
    return out.empty() ? "(none)" : out;
}

bool in_space(const SemijoinGame& g, Side s, const Tuple& t) {
    const auto& space = g.tuple_space(s);
    return std::find(space.begin(), space.end(), t) != space.end();
}

// A start position: the empty tuple or a member of the tuple space.
Tuple position_arg(const SemijoinGame& g, Side s, const std::string& text) {
    const Tuple t = parse_tuple(text);
    if (!t.empty() && !in_space(g, s, t))
        throw UsageError(to_string(t) + " is not in the tuple space of the " + to_string(s) +
                         " database; valid tuples: " + list_tuples(g.tuple_space(s)));
    return t;
}

std::string config_text(const Configuration& c) { return "(" + to_string(c.left) + "," + to_string(c.right) + ")"; }

std::string move_text(const Move& m) { return to_string(m.side) + " " + to_string(m.tuple); }

void render_strategy(const StrategyNode& node, std::size_t depth, std::ostream& out) {
    out << std::string(2 * depth + 2, ' ') << config_text(node.position) << " rank " << to_string(node.rank);
    if (!node.move) {
        out << ": 0-round conditions fail\n";
        return;
    }
    out << ": spoiler picks " << move_text(*node.move);
    if (node.replies.empty()) {
        out << ", no legal answer\n";
        return;
    }
    out << "\n";
    for (const auto& r : node.replies)
        render_strategy(r, depth + 1, out);
}

std::optional<std::size_t> parse_rounds(const std::string& text) {
    if (text == "inf")
        return std::nullopt;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size() && v >= 0)
            return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("--rounds expects a natural number or 'inf', got '" + text + "'");
}

std::vector<Tuple> positions(const SemijoinGame& g, Side s) {
    std::vector<Tuple> out{{}};
    for (const auto& t : g.tuple_space(s))
        if (!t.empty())
            out.push_back(t);
    return out;
}

int play_as_spoiler(SemijoinGame& g, Configuration cfg, std::optional<std::size_t> rounds, std::istream& in,
                    std::ostream& out) {
    for (std::size_t round = 1; !rounds || round <= *rounds; ++round) {
        out << "round " << round << ", position " << config_text(cfg) << "\n";
        std::optional<Move> move;
        while (!move) {
            out << "your move (left TUPLE | right TUPLE | quit)> " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << "\ninput ended\n";
                return 0;
            }
            std::istringstream words(line);
            std::string side_word;
            words >> side_word;
            if (side_word == "quit")
                return 0;
            std::string rest;
            std::getline(words, rest);
            if (side_word != "left" && side_word != "right") {
                out << "expected 'left TUPLE' or 'right TUPLE'\n";
                continue;
            }
            const Side side = side_word == "left" ? Side::left : Side::right;
            Tuple t;
            try {
                t = parse_tuple(rest);
            } catch (const Error& e) {
                out << "bad tuple: " << e.what() << "\n";
                continue;
            }
            if (!in_space(g, side, t)) {
                out << "illegal move: " << to_string(t) << " is not in the " << side_word
                    << " tuple space; valid tuples: " << list_tuples(g.tuple_space(side)) << "\n";
                continue;
            }
            move = Move{side, t};
        }
        const auto answer = g.best_duplicator_move(cfg, move->side, move->tuple);
        if (!answer) {
            out << "duplicator has no legal answer; spoiler wins\n";
            return 0;
        }
        out << "duplicator answers " << to_string(*answer) << "\n";
        cfg = move->side == Side::left ? Configuration{move->tuple, *answer} : Configuration{*answer, move->tuple};
    }
    out << "duplicator survived " << *rounds << " rounds; duplicator wins\n";
    return 0;
}

int play_as_duplicator(SemijoinGame& g, Configuration cfg, std::optional<std::size_t> rounds, std::istream& in,
                       std::ostream& out) {
    for (std::size_t round = 1; !rounds || round <= *rounds; ++round) {
        out << "round " << round << ", position " << config_text(cfg) << ", rank " << to_string(g.rank(cfg))
            << "\n";
        auto move = g.best_spoiler_move(cfg);
        if (!move) {
            // No winning move: try the first tuple on either side.
            if (!g.tuple_space(Side::left).empty())
                move = Move{Side::left, g.tuple_space(Side::left).front()};
            else if (!g.tuple_space(Side::right).empty())
                move = Move{Side::right, g.tuple_space(Side::right).front()};
            else {
                out << "no moves are possible; duplicator wins\n";
                return 0;
            }
        }
        out << "spoiler picks " << move_text(*move) << "\n";
        const auto legal = g.legal_answers(cfg, move->side, move->tuple);
        if (legal.empty()) {
            out << "no legal answer exists; spoiler wins\n";
            return 0;
        }
        const Side answer_side = opposite(move->side);
        std::optional<Tuple> answer;
        while (!answer) {
            out << "your answer on the " << to_string(answer_side) << " (TUPLE | quit)> " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << "\ninput ended\n";
                return 0;
            }
            if (line.find("quit") != std::string::npos)
                return 0;
            Tuple t;
            try {
                t = parse_tuple(line);
            } catch (const Error& e) {
                out << "bad tuple: " << e.what() << "\n";
                continue;
            }
            if (std::find(legal.begin(), legal.end(), t) == legal.end()) {
                out << "illegal answer; legal answers: " << list_tuples(legal) << "\n";
                continue;
            }
            answer = t;
        }
        cfg = move->side == Side::left ? Configuration{move->tuple, *answer} : Configuration{*answer, move->tuple};
        if (!g.win0(cfg.left, cfg.right)) {
            out << "0-round conditions fail; spoiler wins\n";
            return 0;
        }
    }
    out << "you survived " << *rounds << " rounds; duplicator wins\n";
    return 0;
}

struct Options {
    std::string db, db_a, db_b, expr, expr_file, left = "()", right = "()", rounds = "inf", play = "spoiler";
    std::string corpus_name, out_dir = ".", suite;
    bool empty_check = false, interactive = false, strategy = false;
    std::size_t max_rounds = SynthesisBudget{}.max_rounds;
    int only = 0;
};

int cmd_eval(const Options& o, std::ostream& out) {
    const Database db = load_database(o.db);
    if (o.expr.empty() == o.expr_file.empty())
        throw UsageError("give exactly one of EXPR and --expr-file");
    const std::string text = o.expr.empty() ? read_file(o.expr_file) : o.expr;
    const ExprPtr e = parse_expression(text, db.schema(), db.vocabulary());
    const Relation r = evaluate(e, db);
    for (const auto& t : r)
        out << to_string(t) << "\n";
    if (o.empty_check)
        return r.empty() ? 1 : 0;
    return 0;
}

int cmd_game(const Options& o, std::istream& in, std::ostream& out) {
    SemijoinGame g(load_database(o.db_a), load_database(o.db_b));
    const Configuration cfg{position_arg(g, Side::left, o.left), position_arg(g, Side::right, o.right)};
    const auto rounds = parse_rounds(o.rounds);
    if (o.interactive) {
        if (o.play == "spoiler")
            return play_as_spoiler(g, cfg, rounds, in, out);
        if (o.play == "duplicator")
            return play_as_duplicator(g, cfg, rounds, in, out);
        throw UsageError("--play expects spoiler or duplicator");
    }
    const GameVerdict v = rounds ? g.solve_finite(cfg, *rounds) : g.solve_infinite(cfg);
    out << "winner: " << to_string(v.winner) << "\n";
    out << "rank: " << (v.rank_exact ? "" : ">= ") << to_string(v.rank) << "\n";
    out << "rounds: " << (rounds ? std::to_string(*rounds) : "inf") << "\n";
    out << "winning-region: " << v.winning_region_size << " of " << v.configuration_count << " configurations\n";
    if (o.strategy) {
        if (v.spoiler_strategy) {
            out << "strategy:\n";
            render_strategy(*v.spoiler_strategy, 0, out);
        } else {
            out << "survival:\n";
            for (const auto& a : positions(g, Side::left))
                for (const auto& b : positions(g, Side::right))
                    if (g.win0(a, b))
                        out << "  " << config_text({a, b}) << " rank " << to_string(g.rank({a, b})) << "\n";
        }
    }
    return 0;
}

int cmd_distinguish(const Options& o, std::ostream& out) {
    const Database a = load_database(o.db_a);
    const Database b = load_database(o.db_b);
    SemijoinGame g(a, b);
    const Tuple ta = position_arg(g, Side::left, o.left);
    const Tuple tb = position_arg(g, Side::right, o.right);
    SynthesisBudget budget;
    budget.max_rounds = o.max_rounds;
    out << render_certificate(certify(a, b, ta, tb, budget));
    return 0;
}

int cmd_corpus_list(std::ostream& out) {
    for (const auto& e : corpus()) {
        out << e.name << ": " << e.description << " [";
        for (std::size_t i = 0; i < e.databases.size(); ++i)
            out << (i ? " " : "") << e.name << "-" << e.databases[i].first << ".db";
        out << "] claim: " << e.claim << "\n";
    }
    return 0;
}

int cmd_corpus_emit(const Options& o, std::ostream& out) {
    const CorpusEntry& entry = corpus_entry(o.corpus_name);
    std::filesystem::create_directories(o.out_dir);
    for (const auto& [label, db] : entry.databases) {
        const auto path = std::filesystem::path(o.out_dir) / (entry.name + "-" + label + ".db");
        std::ofstream f(path);
        if (!f)
            throw UsageError("cannot write " + path.string());
        f << render_database(db);
        out << path.string() << "\n";
    }
    return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
    if (o.suite != "paper")
        throw UsageError("unknown suite '" + o.suite + "'");
    bool all = true;
    for (const auto& claim : paper_claims()) {
        if (o.only && claim.id != o.only)
            continue;
        const ClaimResult r = run_claim(claim);
        all = all && r.passed;
        out << render_claim_line(r) << "\n";
    }
    if (!o.only) {
        for (const auto& e : corpus()) {
            bool ok = false;
            std::string note;
            try {
                ok = e.check();
            } catch (const std::exception& ex) {
                note = std::string(" (error: ") + ex.what() + ")";
            }
            all = all && ok;
            out << (ok ? "PASS" : "FAIL") << " corpus " << e.name << ": " << e.claim << note << "\n";
        }
    }
    out << (all ? "all claims hold" : "some claims fail") << "\n";
    return all ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semijoin algebra workbench", "sa"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate an expression over a database");
    eval->add_option("db", o.db, "database file")->required();
    eval->add_option("expr", o.expr, "expression text");
    eval->add_option("--expr-file", o.expr_file, "read the expression from a file");
    eval->add_flag("--empty-check", o.empty_check, "exit 0 iff the result is nonempty");

    auto* game = app.add_subcommand("game", "decide the semijoin game");
    game->add_option("a", o.db_a, "left database file")->required();
    game->add_option("b", o.db_b, "right database file")->required();
    game->add_option("--left", o.left, "left start tuple, e.g. \"(a,1)\" or \"()\"");
    game->add_option("--right", o.right, "right start tuple");
    game->add_option("--rounds", o.rounds, "number of rounds or inf");
    game->add_flag("--strategy", o.strategy, "print the spoiler strategy or the survival ranks");
    game->add_flag("--interactive", o.interactive, "play against the engine");
    game->add_option("--play", o.play, "role of the human: spoiler or duplicator");

    auto* dist = app.add_subcommand("distinguish", "synthesize a separating expression");
    dist->add_option("a", o.db_a, "left database file")->required();
    dist->add_option("b", o.db_b, "right database file")->required();
    dist->add_option("--left", o.left, "left tuple");
    dist->add_option("--right", o.right, "right tuple");
    dist->add_option("--max-rounds", o.max_rounds, "synthesis round budget");

    auto* corp = app.add_subcommand("corpus", "list or emit the built-in databases");
    corp->require_subcommand(1);
    auto* list = corp->add_subcommand("list", "list entries");
    auto* emit = corp->add_subcommand("emit", "write the databases of an entry");
    emit->add_option("name", o.corpus_name, "entry name")->required();
    emit->add_option("--out", o.out_dir, "output directory");

    auto* check = app.add_subcommand("check", "run the claim suite");
    check->add_option("--suite", o.suite, "suite name (paper)")->required();
    check->add_option("--only", o.only, "run a single criterion");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed())
            return cmd_eval(o, out);
        if (game->parsed())
            return cmd_game(o, in, out);
        if (dist->parsed())
            return cmd_distinguish(o, out);
        if (list->parsed())
            return cmd_corpus_list(out);
        if (emit->parsed())
            return cmd_corpus_emit(o, out);
        if (check->parsed())
            return cmd_check(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace sa::cli
