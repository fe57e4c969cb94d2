#include "sa/oracle.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "sa/error.hpp"
#include "sa/parser.hpp"

namespace sa {

std::size_t sj_depth(const ExprPtr& e) {
    std::unordered_map<const Expr*, std::size_t> memo;
    auto walk = [&](auto&& self, const Expr* node) -> std::size_t {
        if (!node)
            return 0;
        if (auto it = memo.find(node); it != memo.end())
            return it->second;
        std::size_t d = std::max(self(self, node->left().get()), self(self, node->right().get()));
        if (node->kind() == ExprKind::semijoin || node->kind() == ExprKind::projection)
            ++d;
        memo[node] = d;
        return d;
    };
    return walk(walk, e.get());
}

namespace {

std::vector<std::vector<std::size_t>> proper_subsets(std::size_t n) {
    auto all = index_subsets(n);
    all.pop_back();  // the full index list sorts last
    return all;
}

Var position_var(std::size_t pos, std::size_t left_len) {
    return pos < left_len ? x(pos + 1) : y(pos - left_len + 1);
}

std::vector<Condition> literal_pool(std::size_t n, std::size_t m, const Vocabulary& vocab, bool cross_only) {
    std::vector<Condition> out;
    const std::size_t k = n + m;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (cross_only && !(i < n && j >= n))
                continue;
            const Var u = position_var(i, n);
            const Var v = position_var(j, n);
            out.push_back(Condition::equal(u, v));
            out.push_back(Condition::negate(Condition::equal(u, v)));
            if (vocab.has_order()) {
                out.push_back(Condition::less(u, v));
                out.push_back(Condition::less(v, u));
                out.push_back(Condition::negate(Condition::less(u, v)));
                out.push_back(Condition::negate(Condition::less(v, u)));
            }
        }
    }
    return out;
}

class Enumerator {
public:
    Enumerator(const Schema& schema, const Vocabulary& vocab, const EnumerationBounds& bounds,
               const std::function<bool(const ExprPtr&)>& sink)
        : schema_(schema), vocab_(vocab), bounds_(bounds), sink_(sink) {}

    void run() {
        if (bounds_.max_boolean_size < 1 || bounds_.max_boolean_size > 2)
            throw ValidationError("max_boolean_size must be 1 or 2");
        std::size_t level_start = 0;
        for (const auto& [name, arity] : schema_) {
            ExprPtr rel = Expr::relation(name, arity);
            if (!emit(rel, true))
                return;
            for (const auto& c : conditions(arity, 0)) {
                if (c.kind() == Condition::Kind::truth)
                    continue;
                if (!emit(Expr::selection(c, rel), true))
                    return;
            }
        }
        if (!combinations(0))
            return;
        std::size_t atoms_start = 0;
        for (std::size_t d = 1; d <= bounds_.max_depth; ++d) {
            const std::size_t level_end = level_.size();
            const std::size_t atoms_end = atoms_.size();
            for (std::size_t i = level_start; i < level_end; ++i) {
                const ExprPtr e = level_[i];
                for (const auto& xs : proper_subsets(e->arity()))
                    if (!emit(Expr::projection(xs, e), true))
                        return;
            }
            for (std::size_t i = 0; i < atoms_end; ++i) {
                const ExprPtr a = atoms_[i];
                for (std::size_t j = (i >= atoms_start ? 0 : level_start); j < level_end; ++j) {
                    const ExprPtr e = level_[j];
                    for (const auto& c : conditions(a->arity(), e->arity()))
                        if (!emit(Expr::semijoin(c, a, e), true))
                            return;
                }
            }
            if (!combinations(atoms_end))
                return;
            level_start = level_end;
            atoms_start = atoms_end;
        }
    }

private:
    bool combinations(std::size_t first_new) {
        if (bounds_.max_boolean_size < 2)
            return true;
        const std::size_t end = atoms_.size();
        for (std::size_t i = first_new; i < end; ++i) {
            for (std::size_t j = 0; j < end; ++j) {
                if (atoms_[i]->arity() != atoms_[j]->arity() || (j >= first_new && j > i))
                    continue;
                const ExprPtr& p = atoms_[i];
                const ExprPtr& q = atoms_[j];
                if (i == j) {
                    if (!emit(Expr::union_of(p, p), false) || !emit(Expr::difference(p, p), false))
                        return false;
                    continue;
                }
                const bool ordered = render_expression(p) < render_expression(q);
                if (!emit(ordered ? Expr::union_of(p, q) : Expr::union_of(q, p), false) ||
                    !emit(Expr::difference(p, q), false) || !emit(Expr::difference(q, p), false))
                    return false;
            }
        }
        return true;
    }

    // Returns false once the sink asks to stop.
    bool emit(ExprPtr e, bool atom) {
        if (!seen_.insert(render_expression(e)).second)
            return true;
        if (++count_ > bounds_.max_expressions)
            throw BudgetExceeded("expression enumeration exceeds " + std::to_string(bounds_.max_expressions) +
                                 " expressions");
        if (atom)
            atoms_.push_back(e);
        level_.push_back(e);
        return sink_(e);
    }

    const std::vector<Condition>& conditions(std::size_t n, std::size_t m) {
        const auto key = std::make_pair(n, m);
        if (auto it = pool_.find(key); it != pool_.end())
            return it->second;
        std::vector<Condition> out;
        if (bounds_.pool == ConditionPool::atomic_types) {
            for (const auto& [l, r] : type_representatives(n, m, vocab_))
                out.push_back(joint_atomic_type(l, r, vocab_));
        } else {
            const auto literals = literal_pool(n, m, vocab_, bounds_.cross_atoms_only);
            std::vector<std::size_t> pick;
            auto rec = [&](auto&& self, std::size_t from) -> void {
                if (!pick.empty()) {
                    std::vector<Condition> parts;
                    for (auto p : pick)
                        parts.push_back(literals[p]);
                    out.push_back(Condition::all_of(std::move(parts)));
                }
                if (pick.size() == bounds_.max_literals)
                    return;
                for (std::size_t i = from; i < literals.size(); ++i) {
                    pick.push_back(i);
                    self(self, i + 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0);
        }
        return pool_.emplace(key, std::move(out)).first->second;
    }

    const Schema& schema_;
    const Vocabulary& vocab_;
    const EnumerationBounds& bounds_;
    const std::function<bool(const ExprPtr&)>& sink_;
    std::unordered_set<std::string> seen_;
    std::size_t count_ = 0;
    std::vector<ExprPtr> atoms_;
    std::vector<ExprPtr> level_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Condition>> pool_;
};

bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t i) {
    return (bits[i / 64] >> (i % 64)) & 1u;
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
}

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

template <class Fn>
void for_each_bit(const std::vector<std::uint64_t>& bits, Fn&& fn) {
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            const int b = __builtin_ctzll(word);
            fn(w * 64 + static_cast<std::size_t>(b));
            word &= word - 1;
        }
    }
}

} // namespace

void enumerate_expressions(const Schema& schema, const Vocabulary& vocab, const EnumerationBounds& bounds,
                           const std::function<bool(const ExprPtr&)>& sink) {
    Enumerator(schema, vocab, bounds, sink).run();
}

SeparationOracle::SeparationOracle(const Database& a, const Database& b, const EnumerationBounds& bounds)
    : bounds_(bounds), vocab_(a.vocabulary()) {
    if (bounds.pool != ConditionPool::atomic_types)
        throw ValidationError("the separation oracle enumerates atomic-type conditions only");
    if (bounds.max_boolean_size < 1 || bounds.max_boolean_size > 2)
        throw ValidationError("max_boolean_size must be 1 or 2");
    if (a.schema() != b.schema() || !(a.vocabulary() == b.vocabulary()))
        throw ValidationError("the two databases differ in schema or vocabulary");
    const Schema& schema = a.schema();
    std::size_t max_arity = 0;
    for (const auto& [name, arity] : schema)
        max_arity = std::max(max_arity, arity);

    const Database* dbs[2] = {&a, &b};
    for (std::size_t s = 0; s < 2; ++s) {
        spaces_[s].assign(max_arity + 1, {});
        index_[s].assign(max_arity + 1, {});
        for (const auto& t : tuple_space(*dbs[s])) {
            index_[s][t.size()].emplace(t, spaces_[s][t.size()].size());
            spaces_[s][t.size()].push_back(t);
        }
    }

    auto empty_bits = [&](std::size_t s, std::size_t k) { return Bits(words_for(spaces_[s][k].size()), 0); };
    auto type_of = [&](const Tuple& l, const Tuple& r) {
        auto [it, inserted] =
            type_ids_.emplace(type_signature(l, r, vocab_), static_cast<std::uint32_t>(type_witness_.size()));
        if (inserted) {
            type_witness_.emplace_back(l, r);
            type_conditions_.emplace_back();
        }
        return it->second;
    };
    // pair_types[s][(n, m)][p * |T^m| + q]
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> pair_types[2];
    auto pair_table = [&](std::size_t s, std::size_t n, std::size_t m) -> const std::vector<std::uint32_t>& {
        auto key = std::make_pair(n, m);
        auto it = pair_types[s].find(key);
        if (it != pair_types[s].end())
            return it->second;
        std::vector<std::uint32_t> table;
        table.reserve(spaces_[s][n].size() * spaces_[s][m].size());
        for (const auto& p : spaces_[s][n])
            for (const auto& q : spaces_[s][m])
                table.push_back(type_of(p, q));
        return pair_types[s].emplace(key, std::move(table)).first->second;
    };

    // Depth 0: relations and their selections.
    for (const auto& [name, arity] : schema) {
        Rep rel;
        rel.expr = Expr::relation(name, arity);
        rel.arity = arity;
        std::map<std::uint32_t, Bits> by_type[2];
        std::set<std::uint32_t> types;
        for (std::size_t s = 0; s < 2; ++s) {
            rel.value[s] = empty_bits(s, arity);
            for (const auto& t : dbs[s]->relation(name)) {
                const std::size_t p = index_[s][arity].at(t);
                set_bit(rel.value[s], p);
                const std::uint32_t type = type_of(t, {});
                auto& bits = by_type[s].try_emplace(type, empty_bits(s, arity)).first->second;
                set_bit(bits, p);
                types.insert(type);
            }
        }
        add(rel);
        for (std::uint32_t type : types) {
            const Condition& cond = type_condition(type);
            if (cond.kind() == Condition::Kind::truth)
                continue;
            Rep sel;
            sel.expr = Expr::selection(cond, rel.expr);
            sel.arity = arity;
            for (std::size_t s = 0; s < 2; ++s) {
                auto it = by_type[s].find(type);
                sel.value[s] = it == by_type[s].end() ? empty_bits(s, arity) : it->second;
            }
            add(std::move(sel));
        }
    }
    add_combinations(0, 0);

    std::size_t level_start = 0;
    for (std::size_t d = 1; d <= bounds_.max_depth; ++d) {
        const std::size_t level_end = reps_.size();
        for (std::size_t i = level_start; i < level_end; ++i) {
            const std::size_t n = reps_[i].arity;
            for (const auto& xs : proper_subsets(n)) {
                Rep proj;
                proj.arity = xs.size();
                proj.depth = d;
                for (std::size_t s = 0; s < 2; ++s) {
                    proj.value[s] = empty_bits(s, xs.size());
                    for_each_bit(reps_[i].value[s], [&](std::size_t p) {
                        set_bit(proj.value[s], index_[s][xs.size()].at(project(spaces_[s][n][p], xs)));
                    });
                }
                proj.expr = Expr::projection(xs, reps_[i].expr);
                add(std::move(proj));
            }
        }
        std::vector<std::uint32_t> touched;
        std::unordered_map<std::uint32_t, std::pair<Bits, Bits>> results;
        for (std::size_t i = 0; i < level_end; ++i) {
            if (!reps_[i].atom)
                continue;
            for (std::size_t j = 0; j < level_end; ++j) {
                if (i < level_start && j < level_start)
                    continue;
                const Rep left = reps_[i];
                const Rep right = reps_[j];
                results.clear();
                touched.clear();
                for (std::size_t s = 0; s < 2; ++s) {
                    const auto& table = pair_table(s, left.arity, right.arity);
                    const std::size_t width = spaces_[s][right.arity].size();
                    for_each_bit(left.value[s], [&](std::size_t p) {
                        for_each_bit(right.value[s], [&](std::size_t q) {
                            const std::uint32_t type = table[p * width + q];
                            auto [it, inserted] = results.try_emplace(type);
                            if (inserted) {
                                it->second.first = empty_bits(0, left.arity);
                                it->second.second = empty_bits(1, left.arity);
                                touched.push_back(type);
                            }
                            set_bit(s == 0 ? it->second.first : it->second.second, p);
                        });
                    });
                }
                std::sort(touched.begin(), touched.end());
                for (std::uint32_t type : touched) {
                    Rep sj;
                    sj.arity = left.arity;
                    sj.depth = d;
                    sj.value[0] = results[type].first;
                    sj.value[1] = results[type].second;
                    auto found = seen_.find({sj.arity, {sj.value[0], sj.value[1]}});
                    if (found != seen_.end() && reps_[found->second].atom)
                        continue;
                    sj.expr = Expr::semijoin(type_condition(type), left.expr, right.expr);
                    add(std::move(sj));
                }
            }
        }
        add_combinations(d, level_end);
        level_start = level_end;
    }
}

const Condition& SeparationOracle::type_condition(std::uint32_t type) {
    if (!type_conditions_[type])
        type_conditions_[type] = joint_atomic_type(type_witness_[type].first, type_witness_[type].second, vocab_);
    return *type_conditions_[type];
}

bool SeparationOracle::add(Rep rep) {
    if (reps_.size() >= bounds_.max_expressions)
        throw BudgetExceeded("separation oracle exceeds " + std::to_string(bounds_.max_expressions) +
                             " distinct expression values");
    auto key = std::make_pair(rep.arity, std::make_pair(rep.value[0], rep.value[1]));
    auto it = seen_.find(key);
    if (it != seen_.end()) {
        // A value first reached by a combination may still be needed as an atom.
        if (!rep.atom || reps_[it->second].atom)
            return false;
    }
    seen_[key] = reps_.size();
    reps_.push_back(std::move(rep));
    return true;
}

void SeparationOracle::add_combinations(std::size_t depth, std::size_t first_new) {
    if (bounds_.max_boolean_size < 2)
        return;
    const std::size_t end = reps_.size();
    for (std::size_t i = first_new; i < end; ++i) {
        if (!reps_[i].atom)
            continue;
        for (std::size_t j = 0; j < end; ++j) {
            if (j == i || !reps_[j].atom || reps_[i].arity != reps_[j].arity || (j >= first_new && j > i))
                continue;
            const Rep first = reps_[i];
            const Rep second = reps_[j];
            for (int op = 0; op < 3; ++op) {
                const Rep& p = op == 2 ? second : first;
                const Rep& q = op == 2 ? first : second;
                Rep combo;
                combo.atom = false;
                combo.arity = p.arity;
                combo.depth = std::max(p.depth, q.depth);
                for (std::size_t s = 0; s < 2; ++s) {
                    combo.value[s] = p.value[s];
                    for (std::size_t w = 0; w < combo.value[s].size(); ++w)
                        combo.value[s][w] = op == 0 ? (p.value[s][w] | q.value[s][w]) : (p.value[s][w] & ~q.value[s][w]);
                }
                if (seen_.count({combo.arity, {combo.value[0], combo.value[1]}}))
                    continue;
                combo.expr = op == 0 ? Expr::union_of(p.expr, q.expr) : Expr::difference(p.expr, q.expr);
                add(std::move(combo));
            }
        }
    }
    (void)depth;
}

bool SeparationOracle::member(const Rep& rep, std::size_t side, const Tuple& t) const {
    if (t.size() != rep.arity)
        return false;
    const auto& idx = index_[side][rep.arity];
    auto it = idx.find(t);
    return it != idx.end() && test_bit(rep.value[side], it->second);
}

const std::vector<std::uint64_t>& SeparationOracle::profile(std::size_t side, const Tuple& t,
                                                            std::size_t depth) const {
    auto& cache = profiles_[{side, depth}];
    auto it = cache.find(t);
    if (it != cache.end())
        return it->second;
    Bits bits(words_for(reps_.size()), 0);
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (reps_[i].depth <= depth && member(reps_[i], side, t))
            set_bit(bits, i);
    return cache.emplace(t, std::move(bits)).first->second;
}

std::optional<ExprPtr> SeparationOracle::separating_expression(const Tuple& a, const Tuple& b,
                                                               std::size_t depth) const {
    const Bits& pa = profile(0, a, depth);
    const Bits& pb = profile(1, b, depth);
    for (std::size_t w = 0; w < pa.size(); ++w) {
        if (const std::uint64_t diff = pa[w] ^ pb[w])
            return reps_[w * 64 + static_cast<std::size_t>(__builtin_ctzll(diff))].expr;
    }
    return std::nullopt;
}

bool indistinguishable_bruteforce(const Database& a, const Database& b, const Tuple& ta, const Tuple& tb,
                                  const EnumerationBounds& bounds) {
    return !SeparationOracle(a, b, bounds).separating_expression(ta, tb, bounds.max_depth);
}

bool cartesian_contains(const Relation& t, const Relation& r, const Relation& s) {
    for (const auto& p : r) {
        for (const auto& q : s) {
            Tuple row = p;
            row.insert(row.end(), q.begin(), q.end());
            if (!t.contains(row))
                return false;
        }
    }
    return true;
}

bool contained_in_cartesian(const Relation& t, const Relation& r, const Relation& s) {
    for (const auto& row : t) {
        if (row.size() != r.arity() + s.arity())
            return false;
        const Tuple p(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(r.arity()));
        const Tuple q(row.begin() + static_cast<std::ptrdiff_t>(r.arity()), row.end());
        if (!r.contains(p) || !s.contains(q))
            return false;
    }
    return true;
}

Relation composition(const Relation& r, const Relation& s) {
    std::vector<Tuple> out;
    for (const auto& p : r)
        for (const auto& q : s)
            if (p[1] == q[0])
                out.push_back({p[0], q[1]});
    return Relation(2, std::move(out));
}

bool has_path(const Relation& r, std::size_t k) {
    if (k == 0)
        return true;
    // Nodes from which a walk of the current length starts.
    std::set<Value> starts;
    for (const auto& e : r)
        starts.insert(e[0]);
    for (std::size_t len = 2; len <= k; ++len) {
        std::set<Value> next;
        for (const auto& e : r)
            if (starts.count(e[1]))
                next.insert(e[0]);
        starts = std::move(next);
    }
    return !starts.empty();
}

namespace {

bool extend_simple(const Relation& r, std::vector<Value>& path, std::size_t edges_left) {
    if (edges_left == 0)
        return true;
    for (const auto& e : r) {
        if (e[0] != path.back() || std::find(path.begin(), path.end(), e[1]) != path.end())
            continue;
        path.push_back(e[1]);
        if (extend_simple(r, path, edges_left - 1))
            return true;
        path.pop_back();
    }
    return false;
}

} // namespace

bool has_simple_path(const Relation& r, std::size_t k) {
    if (k == 0)
        return !r.empty();
    for (const auto& e : r) {
        if (e[0] == e[1])
            continue;
        std::vector<Value> path{e[0], e[1]};
        if (extend_simple(r, path, k - 1))
            return true;
    }
    return false;
}

bool has_cycle(const Relation& r, std::size_t k) {
    if (k == 0)
        return false;
    if (k == 1) {
        for (const auto& e : r)
            if (e[0] == e[1])
                return true;
        return false;
    }
    // A simple path of k - 1 edges closed by an edge back to its start.
    for (const auto& e : r) {
        if (e[0] == e[1])
            continue;
        std::vector<Value> path{e[0], e[1]};
        auto rec = [&](auto&& self, std::size_t edges_left) -> bool {
            if (edges_left == 0)
                return r.contains({path.back(), path.front()});
            for (const auto& f : r) {
                if (f[0] != path.back() || std::find(path.begin(), path.end(), f[1]) != path.end())
                    continue;
                path.push_back(f[1]);
                if (self(self, edges_left - 1))
                    return true;
                path.pop_back();
            }
            return false;
        };
        if (rec(rec, k - 2))
            return true;
    }
    return false;
}

bool count_at_least(const Relation& s, std::size_t k) {
    return s.size() >= k;
}

Schema random_schema(std::mt19937_64& rng, const RandomDatabaseParams& params) {
    static const char* kNames[] = {"R", "S", "T", "U", "V", "W"};
    std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(params.max_relations, 6));
    std::uniform_int_distribution<std::size_t> arity(1, params.max_arity);
    Schema schema;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i)
        schema.emplace(kNames[i], arity(rng));
    return schema;
}

Database random_database(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab,
                         const RandomDatabaseParams& params) {
    std::uniform_int_distribution<std::size_t> count(0, params.max_tuples);
    std::uniform_int_distribution<std::int64_t> value(1, static_cast<std::int64_t>(params.universe));
    Database db(vocab);
    for (const auto& [name, arity] : schema) {
        Relation rel(arity);
        const std::size_t n = count(rng);
        for (std::size_t i = 0; i < n; ++i) {
            Tuple t;
            for (std::size_t j = 0; j < arity; ++j)
                t.push_back(value(rng));
            rel.insert(std::move(t));
        }
        db.set_relation(name, std::move(rel));
    }
    return db;
}

std::pair<Database, Database> random_database_pair(std::mt19937_64& rng, const RandomDatabaseParams& params) {
    const Schema schema = random_schema(rng, params);
    std::bernoulli_distribution coin(0.5);
    const Vocabulary vocab(params.allow_order && coin(rng));
    Database a = random_database(rng, schema, vocab, params);
    if (coin(rng))
        return {a, random_database(rng, schema, vocab, params)};

    std::vector<std::int64_t> relabel(params.universe);
    for (std::size_t i = 0; i < relabel.size(); ++i)
        relabel[i] = static_cast<std::int64_t>(i + 1);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    Database b(vocab);
    for (const auto& [name, rel] : a.relations()) {
        Relation copy(rel.arity());
        for (const auto& t : rel) {
            Tuple u;
            for (const auto& v : t)
                u.push_back(relabel[static_cast<std::size_t>(v.as_int() - 1)]);
            copy.insert(std::move(u));
        }
        b.set_relation(name, std::move(copy));
    }
    // Perturb one relation by one tuple, half of the time.
    if (coin(rng)) {
        std::uniform_int_distribution<std::size_t> pick(0, schema.size() - 1);
        auto it = std::next(schema.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
        Relation rel = b.relation(it->first);
        std::uniform_int_distribution<std::int64_t> value(1, static_cast<std::int64_t>(params.universe));
        Tuple t;
        for (std::size_t j = 0; j < it->second; ++j)
            t.push_back(value(rng));
        if (rel.contains(t)) {
            std::vector<Tuple> rest;
            for (const auto& u : rel)
                if (u != t)
                    rest.push_back(u);
            rel = Relation(it->second, std::move(rest));
        } else {
            rel.insert(std::move(t));
        }
        b.set_relation(it->first, std::move(rel));
    }
    return {a, b};
}

} // namespace sa

namespace sa {

Condition random_condition(std::mt19937_64& rng, std::size_t left_arity, std::size_t right_arity,
                           const Vocabulary& vocab, std::size_t max_height) {
    const std::size_t vars = left_arity + right_arity;
    std::uniform_int_distribution<int> kind(0, max_height == 0 ? 2 : 5);
    switch (kind(rng)) {
    case 0:
    case 1:
    case 2: {
        if (vars == 0)
            return std::uniform_int_distribution<int>(0, 1)(rng) ? Condition::always() : Condition::never();
        std::uniform_int_distribution<std::size_t> pick(0, vars - 1);
        const Var u = position_var(pick(rng), left_arity);
        const Var v = position_var(pick(rng), left_arity);
        if (vocab.has_order() && std::uniform_int_distribution<int>(0, 1)(rng))
            return Condition::less(u, v);
        return Condition::equal(u, v);
    }
    case 3:
        return Condition::negate(random_condition(rng, left_arity, right_arity, vocab, max_height - 1));
    case 4:
        return Condition::all_of({random_condition(rng, left_arity, right_arity, vocab, max_height - 1),
                                  random_condition(rng, left_arity, right_arity, vocab, max_height - 1)});
    default:
        return Condition::any_of({random_condition(rng, left_arity, right_arity, vocab, max_height - 1),
                                  random_condition(rng, left_arity, right_arity, vocab, max_height - 1)});
    }
}

namespace {

ExprPtr random_of_arity(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab, std::size_t height,
                        std::optional<std::size_t> arity);

ExprPtr random_leaf(std::mt19937_64& rng, const Schema& schema, std::optional<std::size_t> arity) {
    std::vector<std::pair<std::string, std::size_t>> fits;
    for (const auto& [name, k] : schema)
        if (!arity || *arity <= k)
            fits.emplace_back(name, k);
    if (fits.empty())
        return nullptr;
    const auto& [name, k] = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
    ExprPtr e = Expr::relation(name, k);
    if (arity && *arity != k) {
        std::vector<std::size_t> all(k);
        for (std::size_t i = 0; i < k; ++i)
            all[i] = i + 1;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(*arity);
        e = Expr::projection(all, e);
    }
    return e;
}

ExprPtr random_of_arity(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab, std::size_t height,
                        std::optional<std::size_t> arity) {
    if (height == 0)
        return random_leaf(rng, schema, arity);
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0:
        return random_leaf(rng, schema, arity);
    case 1:
    case 2: {
        ExprPtr l = random_of_arity(rng, schema, vocab, height - 1, arity);
        if (!l)
            return nullptr;
        ExprPtr r = random_of_arity(rng, schema, vocab, height - 1, l->arity());
        if (!r)
            return l;
        return std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::union_of(l, r) : Expr::difference(l, r);
    }
    case 3: {
        ExprPtr child = random_of_arity(rng, schema, vocab, height - 1, std::nullopt);
        if (!child)
            return nullptr;
        if (arity && *arity > child->arity())
            return random_leaf(rng, schema, arity);
        std::vector<std::size_t> keep;
        for (std::size_t i = 1; i <= child->arity(); ++i)
            keep.push_back(i);
        std::shuffle(keep.begin(), keep.end(), rng);
        keep.resize(arity ? *arity : std::uniform_int_distribution<std::size_t>(0, child->arity())(rng));
        return Expr::projection(keep, child);
    }
    case 4: {
        ExprPtr child = random_of_arity(rng, schema, vocab, height - 1, arity);
        if (!child)
            return nullptr;
        return Expr::selection(random_condition(rng, child->arity(), 0, vocab), child);
    }
    default: {
        ExprPtr l = random_of_arity(rng, schema, vocab, height - 1, arity);
        ExprPtr r = random_of_arity(rng, schema, vocab, height - 1, std::nullopt);
        if (!l || !r)
            return l;
        return Expr::semijoin(random_condition(rng, l->arity(), r->arity(), vocab), l, r);
    }
    }
}

} // namespace

ExprPtr random_expression(std::mt19937_64& rng, const Schema& schema, const Vocabulary& vocab,
                          std::size_t max_height) {
    if (schema.empty())
        throw ValidationError("empty schema");
    ExprPtr e = random_of_arity(rng, schema, vocab, max_height, std::nullopt);
    return e ? e : random_leaf(rng, schema, std::nullopt);
}

} // namespace sa
