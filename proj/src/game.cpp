#include "sa/game.hpp"

#include <algorithm>
#include <map>

#include "sa/error.hpp"

namespace sa {

std::string to_string(Player p) { return p == Player::spoiler ? "spoiler" : "duplicator"; }
std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

std::string to_string(SurvivalRank r) {
    return r.is_infinite() ? "inf" : std::to_string(r.rounds());
}

SemijoinGame::SemijoinGame(Database a, Database b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.schema() != b_.schema())
        throw ValidationError("the two databases have different schemas");
    if (!(a_.vocabulary() == b_.vocabulary()))
        throw ValidationError("the two databases have different vocabularies");

    const auto slots = projection_slots(a_.schema());
    std::map<std::vector<bool>, std::uint32_t> classes;
    std::unordered_map<TypeSignature, std::uint32_t, TypeSignatureHash> types;
    const Vocabulary& vocab = a_.vocabulary();

    for (Side side : {Side::left, Side::right}) {
        const std::size_t s = index(side);
        const Database& db = database(side);
        spaces_[s] = sa::tuple_space(db);
        positions_[s].push_back(Tuple{});
        in_space_[s].push_back(!spaces_[s].empty() && spaces_[s].front().empty());
        for (const auto& t : spaces_[s]) {
            if (t.empty())
                continue;
            positions_[s].push_back(t);
            in_space_[s].push_back(true);
        }
        const std::size_t n = positions_[s].size();
        for (std::size_t p = 0; p < n; ++p)
            lookup_[s].emplace(positions_[s][p], p);

        for (std::size_t p = 0; p < n; ++p) {
            const Tuple& t = positions_[s][p];
            std::vector<bool> key;
            key.push_back(false);  // separator so lengths never collide with membership bits
            key.resize(t.size() + 1, false);
            for (const auto& slot : slots)
                key.push_back(in_projection(db, slot, t));
            auto [it, inserted] = classes.emplace(std::move(key), static_cast<std::uint32_t>(classes.size()));
            class_of_[s].push_back(it->second);
        }

        pair_type_[s].resize(n * n);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                auto sig = type_signature(positions_[s][p], positions_[s][q], vocab);
                auto [it, inserted] = types.emplace(std::move(sig), static_cast<std::uint32_t>(types.size()));
                pair_type_[s][p * n + q] = it->second;
            }
        }
    }
    for (std::size_t s = 0; s < 2; ++s) {
        by_class_[s].resize(classes.size());
        for (std::size_t p = 0; p < positions_[s].size(); ++p)
            by_class_[s][class_of_[s][p]].push_back(p);
    }

    rank_.assign(configuration_count(), -1);
    for (std::size_t i = 0; i < positions_[0].size(); ++i)
        for (std::size_t j = 0; j < positions_[1].size(); ++j)
            if (win0(positions_[0][i], positions_[1][j]))
                rank_[config_id(i, j)] = kAlive;
}

bool SemijoinGame::is_position(Side s, const Tuple& t) const {
    return lookup_[index(s)].count(t) != 0;
}

std::size_t SemijoinGame::position_of(Side s, const Tuple& t) const {
    auto it = lookup_[index(s)].find(t);
    if (it == lookup_[index(s)].end())
        throw ValidationError("tuple " + to_string(t) + " is not in the tuple space of the " + to_string(s) +
                              " database");
    return it->second;
}

bool SemijoinGame::win0(const Tuple& ta, const Tuple& tb) const {
    if (ta.size() != tb.size())
        return false;
    const std::size_t i = position_of(Side::left, ta);
    const std::size_t j = position_of(Side::right, tb);
    if (class_of_[0][i] != class_of_[1][j])
        return false;
    return pair_type_[0][i * positions_[0].size()] == pair_type_[1][j * positions_[1].size()];
}

bool SemijoinGame::legal(std::size_t a, std::size_t b, Side side, std::size_t move, std::size_t answer) const {
    // `move` lives on `side`, `answer` on the opposite side.
    const std::size_t ms = index(side);
    const std::size_t as = 1 - ms;
    if (class_of_[ms][move] != class_of_[as][answer])
        return false;
    const std::size_t own = ms == 0 ? a : b;
    const std::size_t other = ms == 0 ? b : a;
    return pair_type_[ms][own * positions_[ms].size() + move] ==
           pair_type_[as][other * positions_[as].size() + answer];
}

std::vector<Tuple> SemijoinGame::legal_answers(const Configuration& cfg, Side side, const Tuple& move) const {
    const std::size_t a = position_of(Side::left, cfg.left);
    const std::size_t b = position_of(Side::right, cfg.right);
    const std::size_t m = position_of(side, move);
    if (!in_space_[index(side)][m])
        throw ValidationError("move " + to_string(move) + " is not in the tuple space");
    const std::size_t as = 1 - index(side);
    std::vector<Tuple> out;
    for (std::size_t d : by_class_[as][class_of_[index(side)][m]])
        if (in_space_[as][d] && legal(a, b, side, m, d))
            out.push_back(positions_[as][d]);
    std::sort(out.begin(), out.end(), ShortLex{});
    return out;
}

void SemijoinGame::build_moves() {
    if (moves_built_)
        return;
    moves_built_ = true;
    const std::size_t nb = positions_[1].size();
    cfg_moves_.assign(configuration_count() + 1, 0);
    move_answers_.push_back(0);
    for (std::size_t cfg = 0; cfg < configuration_count(); ++cfg) {
        cfg_moves_[cfg] = move_answers_.size() - 1;
        if (rank_[cfg] < 0)
            continue;
        const std::size_t a = cfg / nb;
        const std::size_t b = cfg % nb;
        for (Side side : {Side::left, Side::right}) {
            const std::size_t ms = index(side);
            const std::size_t as = 1 - ms;
            for (std::size_t m = 0; m < positions_[ms].size(); ++m) {
                if (!in_space_[ms][m])
                    continue;
                for (std::size_t d : by_class_[as][class_of_[ms][m]]) {
                    if (!in_space_[as][d] || !legal(a, b, side, m, d))
                        continue;
                    answers_.push_back(static_cast<std::uint32_t>(ms == 0 ? config_id(m, d) : config_id(d, m)));
                }
                move_answers_.push_back(answers_.size());
            }
        }
    }
    cfg_moves_[configuration_count()] = move_answers_.size() - 1;
}

void SemijoinGame::sweep_until(std::size_t rounds) {
    build_moves();
    while (sweeps_ < rounds && !stable_) {
        const auto level = static_cast<std::int32_t>(sweeps_);
        bool changed = false;
        for (std::size_t cfg = 0; cfg < configuration_count(); ++cfg) {
            if (rank_[cfg] != kAlive)
                continue;
            for (std::size_t mv = cfg_moves_[cfg]; mv < cfg_moves_[cfg + 1]; ++mv) {
                bool answered = false;
                for (std::size_t k = move_answers_[mv]; k < move_answers_[mv + 1]; ++k) {
                    if (rank_[answers_[k]] >= level) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) {
                    rank_[cfg] = level;
                    changed = true;
                    break;
                }
            }
        }
        ++sweeps_;
        if (!changed) {
            stable_ = true;
            for (auto& r : rank_)
                if (r == kAlive)
                    r = kForever;
        }
    }
}

SurvivalRank SemijoinGame::rank_at(std::size_t cfg) const {
    const std::int32_t r = rank_[cfg];
    if (r == kForever)
        return SurvivalRank::infinite();
    if (r == kAlive)
        return SurvivalRank(static_cast<std::int64_t>(sweeps_));
    return SurvivalRank(r);
}

SurvivalRank SemijoinGame::rank(const Configuration& cfg) {
    const std::size_t id = config_id(position_of(Side::left, cfg.left), position_of(Side::right, cfg.right));
    sweep_until(SIZE_MAX);
    return rank_at(id);
}

std::optional<std::pair<Side, std::size_t>> SemijoinGame::winning_move(std::size_t cfg) const {
    const std::int32_t r = rank_[cfg];
    if (r < 0 || r >= kAlive)
        return std::nullopt;
    std::size_t mv = cfg_moves_[cfg];
    for (Side side : {Side::left, Side::right}) {
        const std::size_t ms = index(side);
        for (std::size_t m = 0; m < positions_[ms].size(); ++m) {
            if (!in_space_[ms][m])
                continue;
            bool wins = true;
            for (std::size_t k = move_answers_[mv]; k < move_answers_[mv + 1]; ++k) {
                if (rank_[answers_[k]] >= r) {
                    wins = false;
                    break;
                }
            }
            if (wins)
                return std::make_pair(side, m);
            ++mv;
        }
    }
    return std::nullopt;
}

StrategyNode SemijoinGame::strategy(std::size_t a, std::size_t b) const {
    const std::size_t cfg = config_id(a, b);
    StrategyNode node;
    node.position = {positions_[0][a], positions_[1][b]};
    node.rank = rank_at(cfg);
    auto move = winning_move(cfg);
    if (!move)
        return node;
    const auto [side, m] = *move;
    const std::size_t ms = index(side);
    node.move = Move{side, positions_[ms][m]};
    const std::size_t as = 1 - ms;
    std::vector<std::size_t> replies;
    for (std::size_t d : by_class_[as][class_of_[ms][m]])
        if (in_space_[as][d] && legal(a, b, side, m, d))
            replies.push_back(d);
    std::sort(replies.begin(), replies.end(),
              [&](std::size_t p, std::size_t q) { return ShortLex{}(positions_[as][p], positions_[as][q]); });
    for (std::size_t d : replies)
        node.replies.push_back(ms == 0 ? strategy(m, d) : strategy(d, m));
    return node;
}

GameVerdict SemijoinGame::verdict(std::size_t cfg, std::optional<std::size_t> rounds) {
    sweep_until(rounds ? *rounds : SIZE_MAX);
    GameVerdict v;
    v.rounds = rounds;
    v.configuration_count = configuration_count();
    v.rank = rank_at(cfg);
    v.rank_exact = rank_[cfg] != kAlive;
    const std::int64_t needed = rounds ? static_cast<std::int64_t>(*rounds) : INT64_MAX;
    auto survives = [&](std::size_t c) {
        const std::int32_t r = rank_[c];
        return r == kAlive || r == kForever || (rounds && r >= needed);
    };
    v.winner = survives(cfg) ? Player::duplicator : Player::spoiler;
    for (std::size_t c = 0; c < configuration_count(); ++c)
        if (survives(c))
            ++v.winning_region_size;
    if (v.winner == Player::spoiler) {
        const std::size_t nb = positions_[1].size();
        v.spoiler_strategy = strategy(cfg / nb, cfg % nb);
    }
    return v;
}

GameVerdict SemijoinGame::solve_finite(const Configuration& cfg, std::size_t rounds) {
    const std::size_t id = config_id(position_of(Side::left, cfg.left), position_of(Side::right, cfg.right));
    return verdict(id, rounds);
}

GameVerdict SemijoinGame::solve_infinite(const Configuration& cfg) {
    const std::size_t id = config_id(position_of(Side::left, cfg.left), position_of(Side::right, cfg.right));
    return verdict(id, std::nullopt);
}

std::optional<Tuple> SemijoinGame::best_duplicator_move(const Configuration& cfg, Side side, const Tuple& move) {
    sweep_until(SIZE_MAX);
    std::optional<Tuple> best;
    SurvivalRank best_rank = SurvivalRank::lost();
    const std::size_t ms = index(side);
    const std::size_t m = position_of(side, move);
    for (const auto& answer : legal_answers(cfg, side, move)) {
        const std::size_t d = position_of(opposite(side), answer);
        const SurvivalRank r = rank_at(ms == 0 ? config_id(m, d) : config_id(d, m));
        if (!best || r > best_rank) {
            best = answer;
            best_rank = r;
        }
    }
    return best;
}

std::optional<Move> SemijoinGame::best_spoiler_move(const Configuration& cfg) {
    sweep_until(SIZE_MAX);
    const std::size_t id = config_id(position_of(Side::left, cfg.left), position_of(Side::right, cfg.right));
    auto move = winning_move(id);
    if (!move)
        return std::nullopt;
    return Move{move->first, positions_[index(move->first)][move->second]};
}

bool win0(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb) {
    return SemijoinGame(a, b).win0(ta, tb);
}

std::vector<Tuple> legal_answers(const Database& a, const Database& b, const Configuration& cfg, Side side,
                                 const Tuple& move) {
    return SemijoinGame(a, b).legal_answers(cfg, side, move);
}

GameVerdict solve_finite(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb,
                         std::size_t rounds) {
    return SemijoinGame(a, b).solve_finite({ta, tb}, rounds);
}

GameVerdict solve_infinite(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb) {
    return SemijoinGame(a, b).solve_infinite({ta, tb});
}

std::optional<Tuple> best_duplicator_move(const Database& a, const Database& b, const Configuration& cfg,
                                          Side side, const Tuple& move) {
    return SemijoinGame(a, b).best_duplicator_move(cfg, side, move);
}

std::optional<Move> best_spoiler_move(const Database& a, const Database& b, const Configuration& cfg) {
    return SemijoinGame(a, b).best_spoiler_move(cfg);
}

} // namespace sa
