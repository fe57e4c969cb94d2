#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sa/value.hpp"
#include "sa/vocabulary.hpp"

namespace sa {

// x-variables address the left tuple, y-variables the right one.
enum class VarSide : std::uint8_t { x, y };

struct Var {
    VarSide side = VarSide::x;
    std::size_t index = 1;  // 1-based

    friend bool operator==(const Var&, const Var&) = default;
    friend auto operator<=>(const Var&, const Var&) = default;
};

inline Var x(std::size_t i) { return {VarSide::x, i}; }
inline Var y(std::size_t i) { return {VarSide::y, i}; }

// Quantifier-free formula over the vocabulary with positional variables.
class Condition {
public:
    enum class Kind : std::uint8_t { truth, falsity, atom, negation, conjunction, disjunction };

    Condition() = default;  // true

    static Condition always() { return Condition(); }
    static Condition never();
    static Condition atom(std::string predicate, std::vector<Var> args);
    static Condition equal(Var a, Var b) { return atom(std::string(kEquality), {a, b}); }
    static Condition less(Var a, Var b) { return atom(std::string(kLess), {a, b}); }
    static Condition negate(Condition c);
    // A single operand is returned as is; no operands yields true (false for any_of).
    static Condition all_of(std::vector<Condition> operands);
    static Condition any_of(std::vector<Condition> operands);

    Kind kind() const { return kind_; }
    const std::string& predicate() const { return predicate_; }
    const std::vector<Var>& args() const { return args_; }
    const std::vector<Condition>& operands() const { return operands_; }

    friend bool operator==(const Condition&, const Condition&) = default;

private:
    Kind kind_ = Kind::truth;
    std::string predicate_;
    std::vector<Var> args_;
    std::vector<Condition> operands_;
};

bool eval_condition(const Condition& cond, const Tuple& left, const Tuple& right,
                    const Vocabulary& vocab);

// Largest index of a variable on `side`, 0 if none occurs.
std::size_t max_var_index(const Condition& cond, VarSide side);

bool uses_predicate(const Condition& cond, std::string_view name);

// Throws ValidationError if a variable is out of range or a predicate is
// unknown to the vocabulary or applied with the wrong number of arguments.
void validate_condition(const Condition& cond, std::size_t left_arity, std::size_t right_arity,
                        const Vocabulary& vocab);

// Canonical atomic type of `t` in variables x1..x|t|. Trivial atoms (xi = xi, xi < xi)
// are dropped; literals follow a fixed order so equal types compare equal.
Condition atomic_type(const Tuple& t, const Vocabulary& vocab);

// Atomic type of the concatenation, left positions as x-variables, right as y-variables.
Condition joint_atomic_type(const Tuple& left, const Tuple& right, const Vocabulary& vocab);

// Truth values of the canonical atoms, in canonical order. For tuples of equal
// lengths, two signatures are equal iff the canonical atomic types are.
class TypeSignature {
public:
    TypeSignature() = default;
    TypeSignature(std::size_t left_len, std::size_t right_len) : left_len_(left_len), right_len_(right_len) {}
    void push(bool bit);
    std::size_t size() const { return size_; }
    bool operator[](std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    std::size_t hash() const;

    friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
    friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;

private:
    std::size_t left_len_ = 0;
    std::size_t right_len_ = 0;
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct TypeSignatureHash {
    std::size_t operator()(const TypeSignature& s) const { return s.hash(); }
};

TypeSignature type_signature(const Tuple& left, const Tuple& right, const Vocabulary& vocab);

// One integer-valued witness (left, right) per satisfiable atomic type over
// left_len x-variables and right_len y-variables: set partitions over {=},
// ordered partitions when the vocabulary has an order. Throws ValidationError
// for vocabularies with extensional predicates and BudgetExceeded when more
// than `limit` candidate patterns would be examined.
std::vector<std::pair<Tuple, Tuple>> type_representatives(std::size_t left_len, std::size_t right_len,
                                                          const Vocabulary& vocab,
                                                          std::size_t limit = static_cast<std::size_t>(-1));

} // namespace sa
