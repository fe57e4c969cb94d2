#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sa/database.hpp"
#include "sa/expression.hpp"
#include "sa/game.hpp"

namespace sa {

// Limits on expression synthesis; exceeding any of them raises BudgetExceeded.
struct SynthesisBudget {
    std::size_t max_rounds = 16;
    // Candidate atomic types examined per (tuple arity, j) pair.
    std::size_t max_types = 200000;
    std::size_t max_nodes = 5000000;
};

// Builds, for tuples a of one database, expressions E_a^r that contain a and
// contain a tuple b of any other database exactly when the duplicator wins the
// r-round game from (a, b). Sub-expressions are shared: E_c^r is built once per
// tuple c and round count r.
class Distinguisher {
public:
    // Throws ValidationError if the vocabulary has extensional predicates, whose
    // atomic types are not enumerated.
    explicit Distinguisher(Database db, SynthesisBudget budget = {});

    const Database& database() const { return db_; }

    // Throws ValidationError if `a` is not in the tuple space.
    ExprPtr base_expression(const Tuple& a);
    ExprPtr expression(const Tuple& a, std::size_t rounds);
    // (union of all projections of arity k) - e.
    ExprPtr complement(const ExprPtr& e);

    std::size_t nodes_created() const { return nodes_; }

private:
    struct PairType {
        Condition condition;
        std::vector<std::size_t> partners;  // positions c of arity j with type(a, c) = this type
    };

    std::size_t position_of(const Tuple& a) const;
    ExprPtr track(ExprPtr e);
    ExprPtr slot_expr(std::size_t slot);
    ExprPtr arity_union(std::size_t k);
    ExprPtr level(std::size_t pos, std::size_t rounds);
    ExprPtr build(std::size_t pos, std::size_t rounds);
    const std::vector<PairType>& pair_types(std::size_t pos, std::size_t j);

    Database db_;
    SynthesisBudget budget_;
    std::vector<Tuple> space_;
    std::unordered_map<Tuple, std::size_t, TupleHash> lookup_;
    std::vector<ProjectionSlot> slots_;
    std::vector<std::vector<bool>> member_;  // member_[pos][slot]
    std::size_t max_arity_ = 0;

    std::map<std::string, ExprPtr> relations_;
    std::vector<ExprPtr> slot_exprs_;
    std::map<std::size_t, ExprPtr> arity_unions_;
    std::map<std::pair<std::size_t, std::size_t>, ExprPtr> levels_;
    std::unordered_map<const Expr*, ExprPtr> complements_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<PairType>> pair_types_;
    std::size_t nodes_ = 0;
};

ExprPtr base_expression(const Database& db, const Tuple& a);
ExprPtr distinguishing_expression(const Database& db, const Tuple& a, std::size_t rounds,
                                  SynthesisBudget budget = {});
// The complement of an arity-k expression within the tuple space: the union of
// every pi_X(R) with |X| = k, minus e.
ExprPtr complement_expr(const ExprPtr& e, const Schema& schema, std::size_t k);

// Outcome of certify(). For a spoiler win, `expression` separates the two
// tuples: it was built from `built_from` at `rounds` rounds, and the
// memberships are the evaluated results on each side.
struct Certificate {
    Player winner = Player::duplicator;
    SurvivalRank rank = SurvivalRank::infinite();
    ExprPtr expression;
    Side built_from = Side::left;
    std::size_t rounds = 0;
    bool left_member = false;
    bool right_member = false;
    std::size_t winning_region_size = 0;
    std::size_t configuration_count = 0;

    // A spoiler certificate is valid when exactly the side it was built from contains its tuple.
    bool separates() const {
        return winner == Player::spoiler && expression &&
               left_member == (built_from == Side::left) && right_member == (built_from == Side::right);
    }
};

Certificate certify(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb,
                    SynthesisBudget budget = {});

// Plain-text report. Expressions whose expanded tree exceeds `max_tree_nodes`
// are written as a node listing instead of inline text.
std::string render_certificate(const Certificate& cert, std::size_t max_tree_nodes = 20000);

// One line per distinct node: "n<k> = <operator over n<i>, n<j>>"; the last line is the root.
std::string render_dag(const ExprPtr& e);

} // namespace sa
