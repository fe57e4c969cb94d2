#include "sa/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "sa/error.hpp"

namespace sa {

namespace {

enum class Tok { ident, integer, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw ParseError(message, at.line, at.column);
    }

    [[noreturn]] void fail(const std::string& message) const { fail(message, current_); }

    bool is(std::string_view punct_or_word) const {
        return current_.kind != Tok::end && current_.text == punct_or_word;
    }

    bool accept(std::string_view text) {
        if (!is(text))
            return false;
        advance();
        return true;
    }

    Token expect(std::string_view text) {
        if (!is(text))
            fail("expected '" + std::string(text) + "' but found " + describe(current_));
        return take();
    }

    Token expect(Tok kind, const char* what) {
        if (current_.kind != kind)
            fail(std::string("expected ") + what + " but found " + describe(current_));
        return take();
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::end)
            return "end of input";
        return "'" + t.text + "'";
    }

private:
    void advance() {
        skip_space();
        current_ = Token{};
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.kind = Tok::end;
            return;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            current_.kind = Tok::ident;
            current_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            const std::size_t start = pos_;
            bump();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                bump();
            current_.kind = Tok::integer;
            current_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (c == '!' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            bump();
            bump();
            current_.kind = Tok::punct;
            current_.text = "!=";
            return;
        }
        static constexpr std::string_view kPunct = "(){}[],/&|!=<";
        if (kPunct.find(c) == std::string_view::npos) {
            current_.kind = Tok::punct;
            current_.text = std::string(1, c);
            fail("unexpected character '" + current_.text + "'");
        }
        bump();
        current_.kind = Tok::punct;
        current_.text = std::string(1, c);
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token current_;
};

std::size_t to_size(Lexer& lex, const Token& t) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), out);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        lex.fail("expected a non-negative integer", t);
    return out;
}

Value parse_value(Lexer& lex) {
    const Token t = lex.take();
    if (t.kind == Tok::ident)
        return Value::symbol(t.text);
    if (t.kind == Tok::integer) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
            lex.fail("integer out of range", t);
        return Value(v);
    }
    lex.fail("expected a value but found " + Lexer::describe(t), t);
}

Tuple parse_tuple_body(Lexer& lex) {
    lex.expect("(");
    Tuple t;
    if (lex.accept(")"))
        return t;
    t.push_back(parse_value(lex));
    while (lex.accept(","))
        t.push_back(parse_value(lex));
    lex.expect(")");
    return t;
}

// ---- conditions ----

std::optional<Var> as_var(const Token& t) {
    if (t.kind != Tok::ident || t.text.size() < 2 || (t.text[0] != 'x' && t.text[0] != 'y'))
        return std::nullopt;
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), index);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || index == 0)
        return std::nullopt;
    return Var{t.text[0] == 'x' ? VarSide::x : VarSide::y, index};
}

Var expect_var(Lexer& lex) {
    const Token t = lex.take();
    auto v = as_var(t);
    if (!v)
        lex.fail("expected a variable such as x1 or y2 but found " + Lexer::describe(t), t);
    return *v;
}

Condition parse_disjunction(Lexer& lex);

Condition parse_unary(Lexer& lex) {
    if (lex.accept("!"))
        return Condition::negate(parse_unary(lex));
    if (lex.accept("(")) {
        Condition c = parse_disjunction(lex);
        lex.expect(")");
        return c;
    }
    const Token t = lex.peek();
    if (t.kind != Tok::ident)
        lex.fail("expected a condition but found " + Lexer::describe(t));
    if (t.text == "true") {
        lex.take();
        return Condition::always();
    }
    if (t.text == "false") {
        lex.take();
        return Condition::never();
    }
    if (auto v = as_var(t)) {
        lex.take();
        const Token op = lex.take();
        const Var rhs = expect_var(lex);
        if (op.text == "=")
            return Condition::equal(*v, rhs);
        if (op.text == "!=")
            return Condition::negate(Condition::equal(*v, rhs));
        if (op.text == "<")
            return Condition::less(*v, rhs);
        lex.fail("expected '=', '!=' or '<' but found " + Lexer::describe(op), op);
    }
    lex.take();
    std::vector<Var> args;
    lex.expect("(");
    args.push_back(expect_var(lex));
    while (lex.accept(","))
        args.push_back(expect_var(lex));
    lex.expect(")");
    return Condition::atom(t.text, std::move(args));
}

Condition parse_conjunction(Lexer& lex) {
    std::vector<Condition> parts{parse_unary(lex)};
    while (lex.accept("&"))
        parts.push_back(parse_unary(lex));
    return Condition::all_of(std::move(parts));
}

Condition parse_disjunction(Lexer& lex) {
    std::vector<Condition> parts{parse_conjunction(lex)};
    while (lex.accept("|"))
        parts.push_back(parse_conjunction(lex));
    return Condition::any_of(std::move(parts));
}

Condition parse_bracketed_condition(Lexer& lex) {
    lex.expect("[");
    Condition c = parse_disjunction(lex);
    lex.expect("]");
    return c;
}

// ---- expressions ----

class ExpressionParser {
public:
    ExpressionParser(Lexer& lex, const Schema& schema, const Vocabulary& vocab)
        : lex_(lex), schema_(schema), vocab_(vocab) {}

    ExprPtr parse() {
        const Token start = lex_.peek();
        if (lex_.accept("("))
            return parse_binary(start);
        const Token t = lex_.expect(Tok::ident, "an expression");
        if (t.text == "project")
            return guarded(t, [&] {
                lex_.expect("[");
                std::vector<std::size_t> indices;
                if (!lex_.is("]")) {
                    indices.push_back(to_size(lex_, lex_.expect(Tok::integer, "a projection index")));
                    while (lex_.accept(","))
                        indices.push_back(to_size(lex_, lex_.expect(Tok::integer, "a projection index")));
                }
                lex_.expect("]");
                lex_.expect("(");
                ExprPtr child = parse();
                lex_.expect(")");
                return Expr::projection(std::move(indices), std::move(child));
            });
        if (t.text == "select")
            return guarded(t, [&] {
                Condition c = parse_bracketed_condition(lex_);
                lex_.expect("(");
                ExprPtr child = parse();
                lex_.expect(")");
                validate_condition(c, child->arity(), 0, vocab_);
                return Expr::selection(std::move(c), std::move(child));
            });
        auto it = schema_.find(t.text);
        if (it == schema_.end())
            throw ValidationError(std::to_string(t.line) + ":" + std::to_string(t.column) + ": unknown relation '" +
                                  t.text + "'");
        return Expr::relation(t.text, it->second);
    }

private:
    ExprPtr parse_binary(const Token& start) {
        ExprPtr left = parse();
        const Token op = lex_.expect(Tok::ident, "'union', 'diff', 'isect' or 'semijoin'");
        std::optional<Condition> cond;
        if (op.text == "semijoin")
            cond = parse_bracketed_condition(lex_);
        else if (op.text != "union" && op.text != "diff" && op.text != "isect")
            lex_.fail("expected 'union', 'diff', 'isect' or 'semijoin' but found '" + op.text + "'", op);
        ExprPtr right = parse();
        lex_.expect(")");
        return guarded(start, [&] {
            if (op.text == "union")
                return Expr::union_of(left, right);
            if (op.text == "diff")
                return Expr::difference(left, right);
            if (op.text == "isect")
                return Expr::intersection(left, right);
            validate_condition(*cond, left->arity(), right->arity(), vocab_);
            return Expr::semijoin(std::move(*cond), left, right);
        });
    }

    // Prefixes validation errors with the position of the offending construct.
    template <class Fn>
    ExprPtr guarded(const Token& at, Fn&& build) {
        try {
            return build();
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            if (!msg.empty() && std::isdigit(static_cast<unsigned char>(msg[0])))
                throw;
            throw ValidationError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
        }
    }

    Lexer& lex_;
    const Schema& schema_;
    const Vocabulary& vocab_;
};

void expect_end(Lexer& lex) {
    if (lex.peek().kind != Tok::end)
        lex.fail("unexpected trailing input " + Lexer::describe(lex.peek()));
}

std::string render_var(const Var& v) {
    return (v.side == VarSide::x ? "x" : "y") + std::to_string(v.index);
}

void render_condition_into(const Condition& c, std::string& out);

void render_operand(const Condition& c, std::string& out) {
    const bool wrap = c.kind() == Condition::Kind::conjunction || c.kind() == Condition::Kind::disjunction;
    if (wrap)
        out += '(';
    render_condition_into(c, out);
    if (wrap)
        out += ')';
}

void render_condition_into(const Condition& c, std::string& out) {
    switch (c.kind()) {
    case Condition::Kind::truth:
        out += "true";
        return;
    case Condition::Kind::falsity:
        out += "false";
        return;
    case Condition::Kind::atom:
        if (c.predicate() == kEquality || c.predicate() == kLess) {
            out += render_var(c.args()[0]) + " " + c.predicate() + " " + render_var(c.args()[1]);
        } else {
            out += c.predicate() + "(";
            for (std::size_t i = 0; i < c.args().size(); ++i)
                out += (i ? "," : "") + render_var(c.args()[i]);
            out += ")";
        }
        return;
    case Condition::Kind::negation: {
        const Condition& inner = c.operands()[0];
        if (inner.kind() == Condition::Kind::atom && inner.predicate() == kEquality) {
            out += render_var(inner.args()[0]) + " != " + render_var(inner.args()[1]);
            return;
        }
        out += '!';
        const bool bare = inner.kind() == Condition::Kind::truth || inner.kind() == Condition::Kind::falsity ||
                          (inner.kind() == Condition::Kind::atom && inner.predicate() != kLess);
        if (bare) {
            render_condition_into(inner, out);
        } else {
            out += '(';
            render_condition_into(inner, out);
            out += ')';
        }
        return;
    }
    case Condition::Kind::conjunction:
    case Condition::Kind::disjunction: {
        const char* sep = c.kind() == Condition::Kind::conjunction ? " & " : " | ";
        for (std::size_t i = 0; i < c.operands().size(); ++i) {
            if (i)
                out += sep;
            render_operand(c.operands()[i], out);
        }
        return;
    }
    }
}

void render_expression_into(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case ExprKind::relation:
        out += e.name();
        return;
    case ExprKind::union_of:
    case ExprKind::difference:
    case ExprKind::semijoin:
        out += '(';
        render_expression_into(*e.left(), out);
        if (e.kind() == ExprKind::union_of) {
            out += " union ";
        } else if (e.kind() == ExprKind::difference) {
            out += " diff ";
        } else {
            out += " semijoin[";
            render_condition_into(e.condition(), out);
            out += "] ";
        }
        render_expression_into(*e.right(), out);
        out += ')';
        return;
    case ExprKind::projection:
        out += "project[";
        for (std::size_t i = 0; i < e.indices().size(); ++i)
            out += (i ? "," : "") + std::to_string(e.indices()[i]);
        out += "](";
        render_expression_into(*e.left(), out);
        out += ')';
        return;
    case ExprKind::selection:
        out += "select[";
        render_condition_into(e.condition(), out);
        out += "](";
        render_expression_into(*e.left(), out);
        out += ')';
        return;
    }
}

void render_tuples(const std::vector<Tuple>& tuples, std::string& out) {
    out += "{";
    for (const auto& t : tuples)
        out += " " + to_string(t);
    out += tuples.empty() ? "}" : " }";
}

} // namespace

Database parse_database(std::string_view src) {
    Lexer lex(src);
    Vocabulary vocab;
    std::vector<std::pair<Token, Relation>> rels;
    bool seen_vocab = false;

    while (lex.peek().kind != Tok::end) {
        const Token kw = lex.expect(Tok::ident, "'vocab', 'pred' or 'rel'");
        if (kw.text == "vocab") {
            if (seen_vocab)
                lex.fail("duplicate vocab block", kw);
            seen_vocab = true;
            lex.expect("{");
            while (!lex.is("}")) {
                const Token flag = lex.expect(Tok::ident, "a vocabulary flag");
                if (flag.text != "order")
                    lex.fail("unknown vocabulary flag '" + flag.text + "'", flag);
                vocab.set_order(true);
            }
            lex.expect("}");
            continue;
        }
        if (kw.text != "pred" && kw.text != "rel")
            lex.fail("expected 'vocab', 'pred' or 'rel' but found '" + kw.text + "'", kw);
        const Token name = lex.expect(Tok::ident, "a name");
        lex.expect("/");
        const Token arity_tok = lex.expect(Tok::integer, "an arity");
        const std::size_t arity = to_size(lex, arity_tok);
        if (arity == 0)
            lex.fail("arity must be positive", arity_tok);
        lex.expect("{");
        std::vector<Tuple> tuples;
        while (!lex.is("}")) {
            const Token at = lex.peek();
            Tuple t = parse_tuple_body(lex);
            if (t.size() != arity)
                throw ParseError("tuple " + to_string(t) + " has " + std::to_string(t.size()) +
                                     " values but '" + name.text + "' has arity " + std::to_string(arity),
                                 at.line, at.column);
            tuples.push_back(std::move(t));
        }
        lex.expect("}");
        if (kw.text == "pred") {
            Predicate p{name.text, arity, {tuples.begin(), tuples.end()}};
            try {
                vocab.add_predicate(std::move(p));
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), name.line, name.column);
            }
        } else {
            for (const auto& [prev, rel] : rels)
                if (prev.text == name.text)
                    throw ParseError("duplicate relation '" + name.text + "'", name.line, name.column);
            rels.emplace_back(name, Relation(arity, std::move(tuples)));
        }
    }

    Database db(vocab);
    for (auto& [name, rel] : rels) {
        if (vocab.find(name.text) != nullptr)
            throw ParseError("relation name '" + name.text + "' collides with a vocabulary predicate", name.line,
                             name.column);
        db.set_relation(name.text, std::move(rel));
    }
    return db;
}

ExprPtr parse_expression(std::string_view src, const Schema& schema, const Vocabulary& vocab) {
    Lexer lex(src);
    ExpressionParser parser(lex, schema, vocab);
    ExprPtr e = parser.parse();
    expect_end(lex);
    validate(e, schema, vocab);
    return e;
}

Condition parse_condition(std::string_view src) {
    Lexer lex(src);
    Condition c = parse_disjunction(lex);
    expect_end(lex);
    return c;
}

Tuple parse_tuple(std::string_view src) {
    Lexer lex(src);
    Tuple t = parse_tuple_body(lex);
    expect_end(lex);
    return t;
}

std::string render_expression(const ExprPtr& e) {
    std::string out;
    render_expression_into(*e, out);
    return out;
}

std::string render_condition(const Condition& c) {
    std::string out;
    render_condition_into(c, out);
    return out;
}

std::string render_database(const Database& db) {
    std::string out;
    const Vocabulary& vocab = db.vocabulary();
    if (vocab.has_order())
        out += "vocab { order }\n";
    for (const auto& p : vocab.predicates()) {
        out += "pred " + p.name + "/" + std::to_string(p.arity) + " ";
        render_tuples({p.extension.begin(), p.extension.end()}, out);
        out += "\n";
    }
    for (const auto& [name, rel] : db.relations()) {
        out += "rel " + name + "/" + std::to_string(rel.arity()) + " ";
        render_tuples(rel.tuples(), out);
        out += "\n";
    }
    return out;
}

} // namespace sa
