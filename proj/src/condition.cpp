#include "sa/condition.hpp"

#include <algorithm>
#include <unordered_set>

#include "sa/error.hpp"

namespace sa {

Condition Condition::never() {
    Condition c;
    c.kind_ = Kind::falsity;
    return c;
}

Condition Condition::atom(std::string predicate, std::vector<Var> args) {
    Condition c;
    c.kind_ = Kind::atom;
    c.predicate_ = std::move(predicate);
    c.args_ = std::move(args);
    return c;
}

Condition Condition::negate(Condition operand) {
    Condition c;
    c.kind_ = Kind::negation;
    c.operands_.push_back(std::move(operand));
    return c;
}

Condition Condition::all_of(std::vector<Condition> operands) {
    if (operands.empty())
        return always();
    if (operands.size() == 1)
        return std::move(operands.front());
    Condition c;
    c.kind_ = Kind::conjunction;
    c.operands_ = std::move(operands);
    return c;
}

Condition Condition::any_of(std::vector<Condition> operands) {
    if (operands.empty())
        return never();
    if (operands.size() == 1)
        return std::move(operands.front());
    Condition c;
    c.kind_ = Kind::disjunction;
    c.operands_ = std::move(operands);
    return c;
}

namespace {

const Value& lookup(const Var& v, const Tuple& left, const Tuple& right) {
    return v.side == VarSide::x ? left[v.index - 1] : right[v.index - 1];
}

bool eval_atom(const Condition& c, const Tuple& left, const Tuple& right, const Vocabulary& vocab) {
    const auto& args = c.args();
    if (c.predicate() == kEquality)
        return lookup(args[0], left, right) == lookup(args[1], left, right);
    if (c.predicate() == kLess)
        return lookup(args[0], left, right) < lookup(args[1], left, right);
    const Predicate* p = vocab.find(c.predicate());
    if (p == nullptr)
        return false;
    Tuple values;
    values.reserve(args.size());
    for (const auto& v : args)
        values.push_back(lookup(v, left, right));
    return p->holds(values);
}

Var position_var(std::size_t pos, std::size_t left_len) {
    return pos < left_len ? x(pos + 1) : y(pos - left_len + 1);
}

// Visits the canonical atoms over left_len + right_len positions in canonical order:
// for each pair i < j the equality atom, then (with order) i<j and j<i; afterwards
// every extra predicate (by name) over all argument tuples in lexicographic order.
template <class Fn>
void for_each_canonical_atom(std::size_t left_len, std::size_t right_len, const Vocabulary& vocab, Fn&& fn,
                             bool builtins = true) {
    const std::size_t k = left_len + right_len;
    for (std::size_t i = 0; builtins && i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            fn(kEquality, std::vector<std::size_t>{i, j});
            if (vocab.has_order()) {
                fn(kLess, std::vector<std::size_t>{i, j});
                fn(kLess, std::vector<std::size_t>{j, i});
            }
        }
    }
    for (const auto& p : vocab.predicates()) {
        std::vector<std::size_t> args(p.arity, 0);
        if (k == 0)
            continue;
        while (true) {
            fn(std::string_view(p.name), args);
            std::size_t d = p.arity;
            while (d > 0 && ++args[d - 1] == k)
                args[--d] = 0;
            if (d == 0)
                break;
        }
    }
}

bool atom_holds(std::string_view pred, const std::vector<std::size_t>& positions, const Tuple& left,
                const Tuple& right, const Vocabulary& vocab) {
    auto at = [&](std::size_t p) -> const Value& {
        return p < left.size() ? left[p] : right[p - left.size()];
    };
    if (pred == kEquality)
        return at(positions[0]) == at(positions[1]);
    if (pred == kLess)
        return at(positions[0]) < at(positions[1]);
    Tuple values;
    values.reserve(positions.size());
    for (auto p : positions)
        values.push_back(at(p));
    return vocab.find(pred)->holds(values);
}

// Calls fn on every rank assignment of `width` variables that is an ordered
// partition (order) or a set partition in restricted-growth form (equality).
template <class Fn>
void for_each_type_pattern(std::size_t width, bool ordered, std::size_t limit, Fn&& fn) {
    std::vector<std::size_t> ranks(width, 0);
    std::size_t visited = 0;
    auto bump = [&] {
        if (++visited > limit)
            throw BudgetExceeded("atomic type enumeration exceeds the budget of " + std::to_string(limit));
    };
    if (!ordered) {
        auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
            if (i == width) {
                bump();
                fn(ranks);
                return;
            }
            for (std::size_t b = 0; b <= blocks; ++b) {
                ranks[i] = b;
                self(self, i + 1, std::max(blocks, b + 1));
            }
        };
        rec(rec, 0, 0);
        return;
    }
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == width) {
            bump();
            std::vector<bool> used(width, false);
            for (auto r : ranks)
                used[r] = true;
            const auto k = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
            for (std::size_t r = 0; r < k; ++r)
                if (!used[r])
                    return;
            fn(ranks);
            return;
        }
        for (std::size_t r = 0; r < width; ++r) {
            ranks[i] = r;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

} // namespace

bool eval_condition(const Condition& cond, const Tuple& left, const Tuple& right, const Vocabulary& vocab) {
    switch (cond.kind()) {
    case Condition::Kind::truth:
        return true;
    case Condition::Kind::falsity:
        return false;
    case Condition::Kind::atom:
        return eval_atom(cond, left, right, vocab);
    case Condition::Kind::negation:
        return !eval_condition(cond.operands()[0], left, right, vocab);
    case Condition::Kind::conjunction:
        for (const auto& c : cond.operands())
            if (!eval_condition(c, left, right, vocab))
                return false;
        return true;
    case Condition::Kind::disjunction:
        for (const auto& c : cond.operands())
            if (eval_condition(c, left, right, vocab))
                return true;
        return false;
    }
    return false;
}

std::size_t max_var_index(const Condition& cond, VarSide side) {
    std::size_t best = 0;
    for (const auto& v : cond.args())
        if (v.side == side && v.index > best)
            best = v.index;
    for (const auto& c : cond.operands())
        best = std::max(best, max_var_index(c, side));
    return best;
}

bool uses_predicate(const Condition& cond, std::string_view name) {
    if (cond.kind() == Condition::Kind::atom && cond.predicate() == name)
        return true;
    for (const auto& c : cond.operands())
        if (uses_predicate(c, name))
            return true;
    return false;
}

void validate_condition(const Condition& cond, std::size_t left_arity, std::size_t right_arity,
                        const Vocabulary& vocab) {
    if (cond.kind() == Condition::Kind::atom) {
        const auto& pred = cond.predicate();
        std::size_t expected = 2;
        if (pred == kLess) {
            if (!vocab.has_order())
                throw ValidationError("condition uses '<' but the vocabulary has no order");
        } else if (pred != kEquality) {
            const Predicate* p = vocab.find(pred);
            if (p == nullptr)
                throw ValidationError("unknown predicate '" + pred + "'");
            expected = p->arity;
        }
        if (cond.args().size() != expected)
            throw ValidationError("predicate '" + pred + "' expects " + std::to_string(expected) +
                                  " arguments, got " + std::to_string(cond.args().size()));
        for (const auto& v : cond.args()) {
            const std::size_t limit = v.side == VarSide::x ? left_arity : right_arity;
            if (v.index == 0 || v.index > limit) {
                throw ValidationError(std::string("variable ") + (v.side == VarSide::x ? "x" : "y") +
                                      std::to_string(v.index) + " is out of range (arity " +
                                      std::to_string(limit) + ")");
            }
        }
    }
    for (const auto& c : cond.operands())
        validate_condition(c, left_arity, right_arity, vocab);
}

Condition joint_atomic_type(const Tuple& left, const Tuple& right, const Vocabulary& vocab) {
    std::vector<Condition> literals;
    for_each_canonical_atom(left.size(), right.size(), vocab,
                            [&](std::string_view pred, const std::vector<std::size_t>& positions) {
                                std::vector<Var> vars;
                                for (auto p : positions)
                                    vars.push_back(position_var(p, left.size()));
                                const bool holds = atom_holds(pred, positions, left, right, vocab);
                                if (pred == kEquality) {
                                    Condition eq = Condition::equal(vars[0], vars[1]);
                                    literals.push_back(holds ? std::move(eq) : Condition::negate(std::move(eq)));
                                    return;
                                }
                                Condition a = Condition::atom(std::string(pred), std::move(vars));
                                literals.push_back(holds ? std::move(a) : Condition::negate(std::move(a)));
                            });
    return Condition::all_of(std::move(literals));
}

Condition atomic_type(const Tuple& t, const Vocabulary& vocab) {
    return joint_atomic_type(t, Tuple{}, vocab);
}

void TypeSignature::push(bool bit) {
    if (size_ % 64 == 0)
        words_.push_back(0);
    if (bit)
        words_.back() |= std::uint64_t{1} << (size_ % 64);
    ++size_;
}

std::size_t TypeSignature::hash() const {
    std::size_t seed = size_ ^ (left_len_ << 20) ^ (right_len_ << 40);
    for (auto w : words_)
        seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

TypeSignature type_signature(const Tuple& left, const Tuple& right, const Vocabulary& vocab) {
    TypeSignature sig(left.size(), right.size());
    const std::size_t n = left.size();
    auto at = [&](std::size_t p) -> const Value& { return p < n ? left[p] : right[p - n]; };
    const std::size_t k = n + right.size();
    // Fast path for the builtin atoms; must visit them in the same order as for_each_canonical_atom.
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto cmp = at(i) <=> at(j);
            sig.push(cmp == 0);
            if (vocab.has_order()) {
                sig.push(cmp < 0);
                sig.push(cmp > 0);
            }
        }
    }
    if (vocab.has_extra_predicates()) {
        for_each_canonical_atom(
            n, right.size(), vocab,
            [&](std::string_view pred, const std::vector<std::size_t>& positions) {
                sig.push(atom_holds(pred, positions, left, right, vocab));
            },
            false);
    }
    return sig;
}

} // namespace sa

namespace sa {

std::vector<std::pair<Tuple, Tuple>> type_representatives(std::size_t left_len, std::size_t right_len,
                                                          const Vocabulary& vocab, std::size_t limit) {
    if (vocab.has_extra_predicates())
        throw ValidationError("atomic types are only enumerated for vocabularies of = and <");
    std::vector<std::pair<Tuple, Tuple>> out;
    for_each_type_pattern(left_len + right_len, vocab.has_order(), limit, [&](const std::vector<std::size_t>& ranks) {
        Tuple left, right;
        for (std::size_t i = 0; i < ranks.size(); ++i)
            (i < left_len ? left : right).push_back(Value(static_cast<std::int64_t>(ranks[i])));
        out.emplace_back(std::move(left), std::move(right));
    });
    return out;
}

} // namespace sa
