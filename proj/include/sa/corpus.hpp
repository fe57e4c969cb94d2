#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sa/database.hpp"
#include "sa/expression.hpp"

namespace sa {

using DatabasePair = std::pair<Database, Database>;

// R, S unary and T binary; T = R x S in A but not in B.
DatabasePair figure1();
// R, S, T binary; T = R o S in A, and in B T is neither contained in nor contains R o S.
DatabasePair figure2();

// The directed k-cycle {(1,2), ..., (k-1,k), (k,1)} as relation R/2.
Database cycle_db(std::size_t k);
// n copies of d on disjoint values: the i-th active-domain value of copy c becomes c * |adom| + i + 1.
Database disjoint_copies(const Database& d, std::size_t n);

// Ordered databases over R/1, S/1, T/2 with R = {1..m}, S = {m+1..2m},
// A(T) = R x S and B(T) missing ((m+1)/2, m+(m+1)/2). Throws unless m is odd and >= 3.
DatabasePair ordered_product_dbs(std::size_t m);
// Ordered databases over R/2, S/2, T/2 with R = {1..m} x {2m+1},
// S = {2m+1} x {m+1..2m}, A(T) = R o S and B(T) missing the same tuple.
DatabasePair ordered_composition_dbs(std::size_t m);

// S/1 = {1..k}.
Database unary_db(std::size_t k, bool ordered = false);

// Expressions over the schemas above.

// path(1) = R, path(k) = R semijoin[x2 = y1] path(k-1); nonempty iff R has a walk of k edges.
ExprPtr expr_path(std::size_t k);
// at_least(1) = S, at_least(k) = S semijoin[x1 < y1] at_least(k-1).
ExprPtr expr_at_least(std::size_t k);
// R semijoin[x2 = y1 & x1 != x2 & y2 != x2 & x1 != y2] R: nonempty iff R has a
// path through three distinct nodes.
ExprPtr expr_simple_path2();
// The printed form R semijoin[x2 = y1 & x2 != x1 & y2 != x2] R, which also
// accepts a two-cycle a -> b -> a.
ExprPtr expr_simple_path2_printed();
// (T semijoin[x1=y1 & ... & xp=yp] R) semijoin[x(p+1)=y1 & ... & x(p+q)=yq] S
// over R/p, S/q, T/(p+q).
ExprPtr expr_T_cap_RxS(std::size_t p, std::size_t q);
// T diff (T isect R x S): empty iff T is contained in R x S.
ExprPtr expr_T_subset_RxS(std::size_t p, std::size_t q);
// S semijoin[x1 != y1] S: nonempty iff S has two distinct elements.
ExprPtr expr_two_distinct();
// k = 1: select[x1 = x2](R); k = 2: R semijoin[x1 = y2 & x2 = y1 & x1 != x2] R.
// Throws for other k.
ExprPtr expr_cycle(std::size_t k);

struct CorpusEntry {
    std::string name;
    std::string description;
    // Labelled databases, written as <name>-<label>.db.
    std::vector<std::pair<std::string, Database>> databases;
    // The claimed property, and a check returning whether it holds.
    std::string claim;
    std::function<bool()> check;
};

// All entries in a fixed order.
const std::vector<CorpusEntry>& corpus();
// Throws ValidationError for an unknown name.
const CorpusEntry& corpus_entry(const std::string& name);

} // namespace sa
