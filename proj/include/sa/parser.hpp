#pragma once

#include <string>
#include <string_view>

#include "sa/condition.hpp"
#include "sa/database.hpp"
#include "sa/expression.hpp"

namespace sa {

// Database files:
//
//   # comment
//   vocab { order }
//   pred P/2 { (1,2) (2,3) }
//   rel R/2 { (a,1) (b,2) }
//
// Values are integers or identifiers. Throws ParseError (with line and column)
// on syntax errors and ValidationError on arity mismatches, duplicate relations
// and relation/predicate name clashes.
Database parse_database(std::string_view src);

// Expressions:
//
//   R | (E union E) | (E diff E) | (E isect E) | (E semijoin[COND] E)
//     | project[i,j,...](E) | select[COND](E)
//
// COND combines atoms `xi = yj`, `xi != yj`, `xi < yj`, `P(x1,y2)`, `true` and
// `false` with `&`, `|`, `!` and parentheses. `isect` is rewritten to nested
// differences. The result is validated against schema and vocabulary.
ExprPtr parse_expression(std::string_view src, const Schema& schema, const Vocabulary& vocab);

Condition parse_condition(std::string_view src);

// "(a,1)" or "()".
Tuple parse_tuple(std::string_view src);

// Text that parses back to a structurally equal expression. Shared nodes are
// written out once per occurrence.
std::string render_expression(const ExprPtr& e);
std::string render_condition(const Condition& c);
std::string render_database(const Database& db);

} // namespace sa
