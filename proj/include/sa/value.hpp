#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace sa {

// An atom of the value universe: an integer or a symbolic constant.
// Integers order numerically and precede symbols; symbols order lexicographically.
class Value {
public:
    Value() : v_(std::int64_t{0}) {}
    Value(std::int64_t i) : v_(i) {}   // NOLINT: implicit by intent
    Value(int i) : v_(std::int64_t{i}) {}  // NOLINT

    static Value symbol(std::string s) {
        Value v;
        v.v_ = std::move(s);
        return v;
    }

    bool is_int() const { return v_.index() == 0; }
    bool is_symbol() const { return v_.index() == 1; }
    std::int64_t as_int() const { return std::get<0>(v_); }
    const std::string& as_symbol() const { return std::get<1>(v_); }

    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.v_.index() != b.v_.index())
            return a.v_.index() <=> b.v_.index();
        if (a.is_int())
            return a.as_int() <=> b.as_int();
        return a.as_symbol().compare(b.as_symbol()) <=> 0;
    }

    std::size_t hash() const {
        if (is_int())
            return std::hash<std::int64_t>{}(as_int());
        return std::hash<std::string>{}(as_symbol()) ^ 0x5bd1e995u;
    }

private:
    std::variant<std::int64_t, std::string> v_;
};

// Possibly empty; the empty tuple is a legal game position.
using Tuple = std::vector<Value>;

std::string to_string(const Value& v);
// Renders as "(a,1)"; the empty tuple renders as "()".
std::string to_string(const Tuple& t);

struct TupleHash {
    std::size_t operator()(const Tuple& t) const {
        std::size_t seed = t.size();
        for (const auto& v : t)
            seed ^= v.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        return seed;
    }
};

} // namespace sa
