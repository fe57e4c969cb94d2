#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sa/condition.hpp"
#include "sa/database.hpp"

namespace sa {

enum class Player : std::uint8_t { spoiler, duplicator };
// left is database A, right is database B.
enum class Side : std::uint8_t { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }
std::string to_string(Player p);
std::string to_string(Side s);

// The current pair of pebbled tuples.
struct Configuration {
    Tuple left;
    Tuple right;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Move {
    Side side = Side::left;
    Tuple tuple;

    friend bool operator==(const Move&, const Move&) = default;
};

// The largest m such that the duplicator wins the m-round game from a
// configuration: -1 when the 0-round conditions fail, or infinite.
class SurvivalRank {
public:
    static SurvivalRank infinite() { return SurvivalRank(kInfinite); }
    static SurvivalRank lost() { return SurvivalRank(-1); }
    explicit SurvivalRank(std::int64_t rounds) : rounds_(rounds) {}

    bool is_infinite() const { return rounds_ == kInfinite; }
    std::int64_t rounds() const { return rounds_; }
    bool survives(std::size_t m) const { return rounds_ >= static_cast<std::int64_t>(m); }

    friend bool operator==(const SurvivalRank&, const SurvivalRank&) = default;
    friend auto operator<=>(const SurvivalRank&, const SurvivalRank&) = default;

private:
    static constexpr std::int64_t kInfinite = INT64_MAX;
    std::int64_t rounds_;
};

std::string to_string(SurvivalRank r);

// Spoiler certificate: the move to make at `position` and one subtree per legal
// answer. A node without a move is a position failing the 0-round conditions;
// a move without replies has no legal answer.
struct StrategyNode {
    Configuration position;
    SurvivalRank rank = SurvivalRank::lost();
    std::optional<Move> move;
    std::vector<StrategyNode> replies;
};

struct GameVerdict {
    Player winner = Player::duplicator;
    SurvivalRank rank = SurvivalRank::lost();
    // False when the solver only established rank >= rounds.
    bool rank_exact = true;
    // nullopt for the infinite game.
    std::optional<std::size_t> rounds;
    std::optional<StrategyNode> spoiler_strategy;
    // Duplicator-won configurations of the whole space for the requested game.
    std::size_t winning_region_size = 0;
    std::size_t configuration_count = 0;
};

// The semijoin game on two databases over the same schema and vocabulary.
// Positions are the tuple spaces plus the empty tuple. Ranks are computed by
// sweeping the configuration space (W_0, W_1, ...) until requested or until a
// fixpoint is reached; results are cached across queries.
class SemijoinGame {
public:
    // Throws ValidationError if schemas or vocabularies differ.
    SemijoinGame(Database a, Database b);

    const Database& database(Side s) const { return s == Side::left ? a_ : b_; }
    // The tuple space (without an artificial empty tuple), in ShortLex order.
    const std::vector<Tuple>& tuple_space(Side s) const { return spaces_[index(s)]; }
    bool is_position(Side s, const Tuple& t) const;

    bool win0(const Tuple& a, const Tuple& b) const;
    // Answers on the side opposite to `side`, in ShortLex order.
    std::vector<Tuple> legal_answers(const Configuration& cfg, Side side, const Tuple& move) const;

    GameVerdict solve_finite(const Configuration& cfg, std::size_t rounds);
    GameVerdict solve_infinite(const Configuration& cfg);
    SurvivalRank rank(const Configuration& cfg);

    // A legal answer leading to a configuration of maximal rank; ties go to the
    // ShortLex-smallest tuple. Empty when there is no legal answer.
    std::optional<Tuple> best_duplicator_move(const Configuration& cfg, Side side, const Tuple& move);
    // A move after which every legal answer has rank below the current one.
    // Empty when the duplicator wins the infinite game or the 0-round
    // conditions already fail.
    std::optional<Move> best_spoiler_move(const Configuration& cfg);

    std::size_t configuration_count() const { return positions_[0].size() * positions_[1].size(); }
    std::size_t sweeps() const { return sweeps_; }
    bool stable() const { return stable_; }

private:
    static constexpr std::int32_t kAlive = INT32_MAX - 1;
    static constexpr std::int32_t kForever = INT32_MAX;

    static std::size_t index(Side s) { return s == Side::left ? 0 : 1; }
    std::size_t position_of(Side s, const Tuple& t) const;  // throws if absent
    std::size_t config_id(std::size_t a, std::size_t b) const { return a * positions_[1].size() + b; }
    bool legal(std::size_t a, std::size_t b, Side side, std::size_t move, std::size_t answer) const;
    void build_moves();
    void sweep_until(std::size_t rounds);
    SurvivalRank rank_at(std::size_t cfg) const;
    std::optional<std::pair<Side, std::size_t>> winning_move(std::size_t cfg) const;
    StrategyNode strategy(std::size_t a, std::size_t b) const;
    GameVerdict verdict(std::size_t cfg, std::optional<std::size_t> rounds);

    Database a_;
    Database b_;
    std::vector<Tuple> spaces_[2];
    // positions_[s][0] is always the empty tuple.
    std::vector<Tuple> positions_[2];
    std::vector<bool> in_space_[2];
    std::unordered_map<Tuple, std::size_t, TupleHash> lookup_[2];
    // Shared between both sides: same id iff same length and projection memberships.
    std::vector<std::uint32_t> class_of_[2];
    std::vector<std::vector<std::size_t>> by_class_[2];
    // pair_type_[s][p * n + q]: interned joint type of positions p and q.
    std::vector<std::uint32_t> pair_type_[2];

    // Per configuration: offsets into moves_, each move holding offsets into answers_.
    bool moves_built_ = false;
    std::vector<std::size_t> cfg_moves_;
    std::vector<std::size_t> move_answers_;
    std::vector<std::uint32_t> answers_;

    std::vector<std::int32_t> rank_;
    std::size_t sweeps_ = 0;
    bool stable_ = false;
};

bool win0(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb);
std::vector<Tuple> legal_answers(const Database& a, const Database& b, const Configuration& cfg, Side side,
                                 const Tuple& move);
GameVerdict solve_finite(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb,
                         std::size_t rounds);
GameVerdict solve_infinite(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb);
std::optional<Tuple> best_duplicator_move(const Database& a, const Database& b, const Configuration& cfg,
                                          Side side, const Tuple& move);
std::optional<Move> best_spoiler_move(const Database& a, const Database& b, const Configuration& cfg);

} // namespace sa
