#include "sdl/dimensions.hpp"

#include "sdl/error.hpp"
#include "sdl/factorize.hpp"
#include "sdl/state_table.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

namespace sdl {

namespace {

constexpr int kInf = 1 << 20;

enum class Mode : char { sd = 'S', online = 'O', fixed = 'F' };

struct Bounds {
    int lo = -kInf;
    int hi = kInf;
};

struct BudgetHit {};

ColumnOrder order_of(Mode m) { return m == Mode::fixed ? ColumnOrder::fixed : ColumnOrder::free; }

}  // namespace

void SearchBudget::validate() const {
    if (max_states == 0) throw ArgumentError("budget: max_states must be positive");
    if (max_time && max_time->count() <= 0) throw ArgumentError("budget: max_time must be positive");
    if (depth_cap && *depth_cap <= 0) throw ArgumentError("budget: depth_cap must be positive");
    if (max_order_points == 0) throw ArgumentError("budget: max_order_points must be positive");
    if (max_subsets == 0) throw ArgumentError("budget: max_subsets must be positive");
}

struct Engine::Impl {
    EngineOptions options;
    SearchBudget budget;

    std::unordered_map<std::string, Bounds> memo;
    mutable std::shared_mutex memo_mutex;

    std::atomic<std::size_t> states{0};
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;

    Impl(EngineOptions o, SearchBudget b) : options(o), budget(std::move(b)) {
        budget.validate();
        if (options.workers == 0) options.workers = 1;
    }

    bool concurrent() const { return options.workers > 1; }

    void start_call() {
        states = 0;
        has_deadline = budget.max_time.has_value();
        if (has_deadline) deadline = std::chrono::steady_clock::now() + *budget.max_time;
    }

    void tick(int depth) {
        std::size_t n = ++states;
        if (n > budget.max_states) throw BudgetHit{};
        if (budget.depth_cap && depth > *budget.depth_cap) throw BudgetHit{};
        if (has_deadline && (n & 1023u) == 0 && std::chrono::steady_clock::now() > deadline) throw BudgetHit{};
    }

    Bounds lookup(const std::string& key) const {
        if (concurrent()) {
            std::shared_lock lock(memo_mutex);
            auto it = memo.find(key);
            return it == memo.end() ? Bounds{} : it->second;
        }
        auto it = memo.find(key);
        return it == memo.end() ? Bounds{} : it->second;
    }

    void store(const std::string& key, Bounds b) {
        auto merge = [&] {
            auto [it, inserted] = memo.try_emplace(key, b);
            if (!inserted) {
                it->second.lo = std::max(it->second.lo, b.lo);
                it->second.hi = std::min(it->second.hi, b.hi);
            }
        };
        if (concurrent()) {
            std::unique_lock lock(memo_mutex);
            merge();
        } else {
            merge();
        }
    }

    // Columns in the order they should be tried at a free node.
    std::vector<std::uint32_t> column_order(const StateTable& t, Mode mode) const {
        std::vector<std::uint32_t> cols(t.cols);
        std::iota(cols.begin(), cols.end(), 0u);
        if (!options.pruning) return cols;
        // (largest, second largest) group size per column.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> score(t.cols);
        std::vector<std::uint32_t> count;
        for (std::uint32_t c = 0; c < t.cols; ++c) {
            count.assign(column_arity(t, c), 0);
            for (std::uint32_t r = 0; r < t.rows; ++r) ++count[t.at(r, c)];
            std::partial_sort(count.begin(), count.begin() + 2, count.end(), std::greater<>());
            score[c] = {count[0], count[1]};
        }
        if (mode == Mode::sd) {
            // The learner wants a point where a mistake leaves little behind.
            std::stable_sort(cols.begin(), cols.end(), [&](auto a, auto b) {
                return std::tie(score[a].second, score[b].first) < std::tie(score[b].second, score[a].first);
            });
        } else {
            std::stable_sort(cols.begin(), cols.end(), [&](auto a, auto b) { return score[a].second > score[b].second; });
        }
        return cols;
    }

    // Value of predicting on column `c`: the learner predicts the label whose
    // successor is worst, the adversary answers; max(top1, 1 + top2) over the
    // successor values. Fail-soft with respect to (alpha, beta).
    int point_value(const StateTable& t, std::uint32_t c, Mode mode, int alpha, int beta, int depth) {
        auto groups = group_rows(t, c);
        std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
        std::vector<std::uint32_t> rest;
        rest.reserve(t.cols - 1);
        for (std::uint32_t j = 0; j < t.cols; ++j)
            if (j != c) rest.push_back(j);
        return combine_groups(
            groups.size(),
            [&](std::size_t g) {
                StateTable child = sub_table(t, groups[g], rest);
                canonicalize(child, order_of(mode));
                return child;
            },
            mode, alpha, beta, depth);
    }

    template <class MakeChild>
    int combine_groups(std::size_t n, MakeChild&& make_child, Mode mode, int alpha, int beta, int depth) {
        int top1 = -kInf;
        int top2 = -kInf;
        for (std::size_t g = 0; g < n; ++g) {
            StateTable child = make_child(g);
            int r = search(child, mode, alpha - 1, beta, depth + 1);
            if (r > top1) {
                top2 = top1;
                top1 = r;
            } else if (r > top2) {
                top2 = r;
            }
            int f = top2 == -kInf ? top1 : std::max(top1, 1 + top2);
            if (options.pruning && f >= beta) return f;
        }
        return top2 == -kInf ? top1 : std::max(top1, 1 + top2);
    }

    int search(const StateTable& t, Mode mode, int alpha, int beta, int depth) {
        if (t.rows == 0) return -1;
        if (t.cols == 0) return 0;
        tick(depth);

        const std::string key = table_key(t, static_cast<char>(mode));
        const Bounds known = lookup(key);
        const int lb = 1;
        const int ub = floor_log2(t.rows);
        if (!options.pruning) {
            if (known.lo == known.hi) return known.lo;
            alpha = -kInf;
            beta = kInf;
        } else {
            int lo = std::max(lb, known.lo);
            int hi = std::min(ub, known.hi);
            if (lo >= hi) return lo;
            if (lo >= beta) return lo;
            if (hi <= alpha) return hi;
            alpha = std::max(alpha, lo - 1);
            beta = std::min(beta, hi + 1);
        }

        int v;
        if (mode == Mode::fixed) {
            v = point_value(t, 0, mode, alpha, beta, depth);
        } else if (depth == 0 && concurrent() && t.cols > 1) {
            v = parallel_root(t, mode, alpha, beta);
        } else if (mode == Mode::sd) {
            v = kInf;
            for (auto c : column_order(t, mode)) {
                int b = options.pruning ? std::min(beta, v) : kInf;
                v = std::min(v, point_value(t, c, mode, alpha, b, depth));
                if (options.pruning && (v <= alpha || v <= lb)) break;
            }
        } else {
            v = -kInf;
            for (auto c : column_order(t, mode)) {
                int a = options.pruning ? std::max(alpha, v) : -kInf;
                v = std::max(v, point_value(t, c, mode, a, beta, depth));
                if (options.pruning && (v >= beta || v >= ub)) break;
            }
        }

        if (!options.pruning || (v > alpha && v < beta)) {
            store(key, {v, v});
        } else if (v <= alpha) {
            store(key, {-kInf, v});
        } else {
            store(key, {v, kInf});
        }
        return v;
    }

    // Every root column evaluated with the same window; combination is
    // order-independent, so the result does not depend on scheduling.
    int parallel_root(const StateTable& t, Mode mode, int alpha, int beta) {
        std::vector<int> values(t.cols);
        std::vector<std::exception_ptr> errors(options.workers);
        std::vector<std::thread> pool;
        std::atomic<std::uint32_t> next{0};
        for (unsigned w = 0; w < options.workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint32_t c; (c = next++) < t.cols;) values[c] = point_value(t, c, mode, alpha, beta, 0);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        return mode == Mode::sd ? *std::min_element(values.begin(), values.end())
                                : *std::max_element(values.begin(), values.end());
    }

    // Exact value of a canonical table. Probes "value > lo" upward so budget
    // exhaustion still leaves proven bounds.
    // With `floor` > 1 the answer is exact only when it exceeds floor; otherwise
    // some value >= the true one and <= floor is returned.
    int solve(const StateTable& t, Mode mode, const char* what, int floor = 1) {
        if (t.rows == 0) return -1;
        if (t.cols == 0) return 0;
        int lo = std::max(1, floor);
        int hi = floor_log2(t.rows);
        try {
            if (!options.pruning) return search(t, mode, -kInf, kInf, 0);
            if (lo >= hi) return lo;
            while (lo < hi) {
                int v = search(t, mode, lo, lo + 1, 0);
                if (v > lo)
                    lo = v;
                else
                    hi = lo;
            }
            return lo;
        } catch (const BudgetHit&) {
            throw BudgetExceeded(std::string(what) + ": search budget exceeded", lo, hi, states.load());
        }
    }

    int solve_sd(const StateTable& t, int floor = 1) {
        if (t.rows <= 1) return t.rows == 0 ? -1 : 0;
        if (!options.decompose) return solve(t, Mode::sd, "m_sd", floor);
        auto blocks = product_factors(t);
        if (blocks.size() == 1) return solve(t, Mode::sd, "m_sd", floor);
        std::vector<StateTable> parts;
        for (const auto& block : blocks) {
            std::vector<std::uint32_t> all_rows(t.rows);
            std::iota(all_rows.begin(), all_rows.end(), 0u);
            StateTable part = sub_table(t, all_rows, block);
            canonicalize(part, ColumnOrder::free);
            parts.push_back(std::move(part));
        }
        int total = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            try {
                total += solve(parts[i], Mode::sd, "m_sd");
            } catch (const BudgetExceeded& e) {
                int lo = total + e.lower(), hi = total + e.upper();
                for (std::size_t j = i + 1; j < parts.size(); ++j) {
                    lo += parts[j].rows > 1 ? 1 : 0;
                    hi += floor_log2(parts[j].rows);
                }
                throw BudgetExceeded("m_sd: search budget exceeded", lo, hi, states.load());
            }
        }
        return total;
    }

    // Calls visit(first, groups of first, rest) for every ordering of the columns;
    // orderings sharing a first point share its row partition. visit returns
    // true to stop.
    template <class Visit>
    void for_each_order(const StateTable& t, Visit&& visit) {
        for (std::uint32_t first = 0; first < t.cols; ++first) {
            auto groups = group_rows(t, first);
            std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
            std::vector<std::uint32_t> rest;
            for (std::uint32_t j = 0; j < t.cols; ++j)
                if (j != first) rest.push_back(j);
            do {
                tick(0);
                if (visit(groups, rest)) return;
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
    }

    int eval_order(const StateTable& t, const std::vector<std::vector<std::uint32_t>>& groups,
                   const std::vector<std::uint32_t>& rest, int alpha, int beta) {
        return combine_groups(
            groups.size(),
            [&](std::size_t g) {
                StateTable child = sub_table(t, groups[g], rest);
                canonicalize(child, ColumnOrder::fixed);
                return child;
            },
            Mode::fixed, alpha, beta, 0);
    }

    // Min (best) or max (worst) over orderings of the distinct columns, by
    // null-window probes so a budget stop still leaves proven bounds.
    // `floor` as in solve(), for the best ordering only.
    int order_extreme(const StateTable& t, bool best, int floor = 1) {
        if (t.rows <= 1) return t.rows == 0 ? -1 : 0;
        if (t.cols > budget.max_order_points)
            throw ArgumentError("ordering enumeration over " + std::to_string(t.cols) +
                                " distinct points exceeds max_order_points = " + std::to_string(budget.max_order_points));
        int lo = 1;
        int hi = floor_log2(t.rows);
        try {
            if (!options.pruning) {
                int v = best ? kInf : -kInf;
                for_each_order(t, [&](const auto& groups, const auto& rest) {
                    int f = eval_order(t, groups, rest, -kInf, kInf);
                    v = best ? std::min(v, f) : std::max(v, f);
                    return false;
                });
                return v;
            }
            if (best) {
                lo = std::max({lo, floor, solve_sd(t, floor)});  // every ordering is a self-directed strategy
                while (lo < hi) {
                    bool found = false;
                    int floor_seen = kInf;
                    for_each_order(t, [&](const auto& groups, const auto& rest) {
                        int f = eval_order(t, groups, rest, lo, lo + 1);
                        if (f <= lo) return found = true;
                        floor_seen = std::min(floor_seen, f);
                        return false;
                    });
                    if (found)
                        hi = lo;
                    else
                        lo = std::max(lo + 1, floor_seen);
                }
            } else {
                // Orderings already passed are <= lo, so one sweep suffices.
                for_each_order(t, [&](const auto& groups, const auto& rest) {
                    int f = eval_order(t, groups, rest, lo, lo + 1);
                    if (f > lo) lo = f;
                    return lo >= hi;
                });
                hi = lo;
            }
            return lo;
        } catch (const BudgetHit&) {
            throw BudgetExceeded(best ? "m_best: search budget exceeded" : "m_worst: search budget exceeded", lo, hi,
                                 states.load());
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded("m_best: search budget exceeded", e.lower(), hi, e.states());
        }
    }

    // Active points with distinct, non-forced columns (first occurrence), and
    // their table with column order kept.
    std::pair<std::vector<PointId>, StateTable> representatives(const ConceptClass& cls, const VersionSpace& vs,
                                                                const ActiveSet& active) {
        auto members = vs.members();
        std::vector<PointId> reps;
        std::set<std::vector<std::uint32_t>> seen;
        for (auto x : active.members()) {
            std::vector<std::uint32_t> sig;
            std::vector<std::uint32_t> rename(cls.num_labels(), UINT32_MAX);
            std::uint32_t next = 0;
            for (auto c : members) {
                auto& r = rename[cls.at(c, x)];
                if (r == UINT32_MAX) r = next++;
                sig.push_back(r);
            }
            if (next <= 1) continue;
            if (seen.insert(std::move(sig)).second) reps.push_back(x);
        }
        StateTable t = make_table(cls, vs, reps);
        canonicalize(t, ColumnOrder::fixed);
        if (t.cols != reps.size()) throw InvariantViolation("representative columns were reduced");
        return {std::move(reps), std::move(t)};
    }

    // max over S within `active` of m_sd (best = false) or m_best (best = true).
    SubsetValue subset_max(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, bool best) {
        if (vs.empty()) return {-1, {}};
        auto [reps, t] = representatives(cls, vs, active);
        if (t.cols == 0) return {0, {}};
        if (best && t.cols > budget.max_order_points)
            throw ArgumentError("ordering enumeration over " + std::to_string(t.cols) +
                                " distinct points exceeds max_order_points = " + std::to_string(budget.max_order_points));
        std::vector<std::vector<std::uint32_t>> blocks;
        if (!best && options.decompose) {
            blocks = product_factors(t);
        } else {
            blocks.emplace_back(t.cols);
            std::iota(blocks.back().begin(), blocks.back().end(), 0u);
        }
        std::vector<int> block_ub;
        for (const auto& b : blocks) block_ub.push_back(floor_log2(distinct_projections(t, b)));

        std::vector<std::uint32_t> all_rows(t.rows);
        std::iota(all_rows.begin(), all_rows.end(), 0u);
        const char* what = best ? "m_best" : "m_sd";
        SubsetValue out{0, {}};
        std::size_t examined = 0;
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            const auto& block = blocks[bi];
            const std::size_t k = block.size();
            if (k > 30) throw ArgumentError(std::string(what) + ": too many distinct points for subset search");
            // Larger subsets first, so small ones are mostly skipped by |S| <= incumbent.
            std::vector<std::uint32_t> masks;
            if ((std::size_t(1) << k) > budget.max_subsets)
                throw BudgetExceeded(std::string(what) + ": subset budget exceeded", out.value + 1,
                                     out.value + std::accumulate(block_ub.begin() + bi, block_ub.end(), 0), states.load());
            for (std::uint32_t m = 1; m < (1u << k); ++m) masks.push_back(m);
            std::stable_sort(masks.begin(), masks.end(),
                             [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });
            int inc = 0;
            std::uint32_t arg = 0;
            try {
                for (auto m : masks) {
                    if (std::popcount(m) <= inc) break;
                    if (++examined > budget.max_subsets) throw BudgetHit{};
                    std::vector<std::uint32_t> cols;
                    for (std::size_t j = 0; j < k; ++j)
                        if (m >> j & 1u) cols.push_back(block[j]);
                    StateTable sub = sub_table(t, all_rows, cols);
                    canonicalize(sub, ColumnOrder::free);
                    if (sub.rows <= 1 || floor_log2(sub.rows) <= inc) continue;
                    int v = best ? order_extreme(sub, true, inc) : solve_sd(sub, inc);
                    if (v > inc) {
                        inc = v;
                        arg = m;
                    }
                    if (inc >= block_ub[bi]) break;
                }
            } catch (const BudgetHit&) {
                throw BudgetExceeded(std::string(what) + ": search budget exceeded", out.value + inc,
                                     out.value + std::accumulate(block_ub.begin() + bi, block_ub.end(), 0), states.load());
            } catch (const BudgetExceeded& e) {
                throw BudgetExceeded(std::string(what) + ": search budget exceeded", out.value + inc,
                                     out.value + std::accumulate(block_ub.begin() + bi, block_ub.end(), 0), e.states());
            }
            out.value += inc;
            for (std::size_t j = 0; j < k; ++j)
                if (arg >> j & 1u) out.points.push_back(reps[block[j]]);
        }
        std::sort(out.points.begin(), out.points.end());
        return out;
    }
};

namespace {

void check_state(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    if (vs.universe() != cls.num_concepts()) throw ArgumentError("version space does not belong to this class");
    if (active.universe() != cls.num_points()) throw ArgumentError("active set does not belong to this class");
}

StateTable free_table(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    check_state(cls, vs, active);
    auto points = active.members();
    StateTable t = make_table(cls, vs, points);
    canonicalize(t, ColumnOrder::free);
    return t;
}

}  // namespace

Engine::Engine(EngineOptions options, SearchBudget budget) : impl_(std::make_unique<Impl>(options, std::move(budget))) {}
Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

int Engine::m_sd(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    impl_->start_call();
    return impl_->solve_sd(free_table(cls, vs, active));
}

SubsetValue Engine::m_sd_max(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    check_state(cls, vs, active);
    impl_->start_call();
    return impl_->subset_max(cls, vs, active, false);
}

SubsetValue Engine::m_best_max(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    check_state(cls, vs, active);
    impl_->start_call();
    return impl_->subset_max(cls, vs, active, true);
}

int Engine::m_sd(const ConceptClass& cls) { return m_sd_max(cls, VersionSpace::full(cls), ActiveSet::full(cls)).value; }
int Engine::m_best(const ConceptClass& cls) {
    return m_best_max(cls, VersionSpace::full(cls), ActiveSet::full(cls)).value;
}
int Engine::m_worst(const ConceptClass& cls) { return m_worst(cls, VersionSpace::full(cls), ActiveSet::full(cls)); }
int Engine::online_bound(const ConceptClass& cls) {
    return online_bound(cls, VersionSpace::full(cls), ActiveSet::full(cls));
}

int Engine::online_bound(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    impl_->start_call();
    return impl_->solve(free_table(cls, vs, active), Mode::online, "online_bound");
}

int Engine::fixed_order_bound(const ConceptClass& cls, const VersionSpace& vs, std::span<const PointId> order) {
    if (vs.universe() != cls.num_concepts()) throw ArgumentError("version space does not belong to this class");
    std::vector<bool> seen(cls.num_points(), false);
    for (auto x : order) {
        if (x >= cls.num_points()) throw ArgumentError("order: point id " + std::to_string(x) + " out of range");
        if (seen[x]) throw ArgumentError("order: point " + std::to_string(x) + " repeated; not a permutation");
        seen[x] = true;
    }
    impl_->start_call();
    StateTable t = make_table(cls, vs, order);
    canonicalize(t, ColumnOrder::fixed);
    return impl_->solve(t, Mode::fixed, "fixed_order_bound");
}

int Engine::m_best(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    impl_->start_call();
    return impl_->order_extreme(free_table(cls, vs, active), true);
}

int Engine::m_worst(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    impl_->start_call();
    return impl_->order_extreme(free_table(cls, vs, active), false);
}

std::size_t Engine::states_explored() const noexcept { return impl_->states.load(); }

std::size_t Engine::memo_size() const {
    std::shared_lock lock(impl_->memo_mutex);
    return impl_->memo.size();
}

void Engine::clear_memo() {
    std::unique_lock lock(impl_->memo_mutex);
    impl_->memo.clear();
}

const EngineOptions& Engine::options() const noexcept { return impl_->options; }
const SearchBudget& Engine::budget() const noexcept { return impl_->budget; }

void Engine::set_budget(SearchBudget budget) {
    budget.validate();
    impl_->budget = std::move(budget);
}

int m_sd(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, const SearchBudget& budget) {
    return Engine({}, budget).m_sd(cls, vs, active);
}
int m_sd(const ConceptClass& cls, const SearchBudget& budget) { return Engine({}, budget).m_sd(cls); }

int online_bound(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget) {
    return Engine({}, budget).online_bound(cls, VersionSpace::full(cls), active);
}
int online_bound(const ConceptClass& cls, const SearchBudget& budget) { return Engine({}, budget).online_bound(cls); }

int fixed_order_bound(const ConceptClass& cls, std::span<const PointId> order, const SearchBudget& budget) {
    return Engine({}, budget).fixed_order_bound(cls, VersionSpace::full(cls), order);
}

int m_best(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget) {
    return Engine({}, budget).m_best(cls, VersionSpace::full(cls), active);
}
int m_best(const ConceptClass& cls, const SearchBudget& budget) { return Engine({}, budget).m_best(cls); }

int m_worst(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget) {
    return Engine({}, budget).m_worst(cls, VersionSpace::full(cls), active);
}
int m_worst(const ConceptClass& cls, const SearchBudget& budget) { return Engine({}, budget).m_worst(cls); }

}  // namespace sdl
