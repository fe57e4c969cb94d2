#pragma once

#include "sa/database.hpp"
#include "sa/parser.hpp"
#include "sa/value.hpp"

namespace sa::test {

inline Value sym(const char* s) { return Value::symbol(s); }

inline Database db(const char* text) { return parse_database(text); }

inline Relation rel(std::size_t arity, std::vector<Tuple> ts) { return Relation(arity, std::move(ts)); }

} // namespace sa::test
