#pragma once
// Test-side reference implementations. Deliberately naive: concept lists,
// point bitmasks, std::map memo, no reductions and no pruning. Only the label
// matrix is read from the library.

#include "sdl/concept_class.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Concepts = std::vector<int>;

struct Table {
    int n = 0;
    int L = 2;
    std::vector<std::vector<int>> rows;

    static Table of(const sdl::ConceptClass& cls) {
        Table t;
        t.n = int(cls.num_points());
        t.L = int(cls.num_labels());
        for (sdl::ConceptId c = 0; c < cls.num_concepts(); ++c) {
            std::vector<int> r;
            for (sdl::PointId x = 0; x < cls.num_points(); ++x) r.push_back(int(cls.at(c, x)));
            t.rows.push_back(r);
        }
        return t;
    }
    Concepts all() const {
        Concepts h(rows.size());
        std::iota(h.begin(), h.end(), 0);
        return h;
    }
    std::uint32_t full_mask() const { return n >= 32 ? ~0u : (1u << n) - 1; }
    Concepts with(const Concepts& h, int x, int y) const {
        Concepts g;
        for (int c : h)
            if (rows[c][x] == y) g.push_back(c);
        return g;
    }
};

// One round at a fixed point: learner predicts p, adversary answers a realizable y.
template <class Next>
int round_value(const Table& t, const Concepts& h, int x, Next&& next) {
    std::vector<int> vals(t.L, INT_MIN);
    for (int y = 0; y < t.L; ++y) {
        auto g = t.with(h, x, y);
        if (!g.empty()) vals[y] = next(g);
    }
    int best = INT_MAX;
    for (int p = 0; p < t.L; ++p) {
        int worst = INT_MIN;
        for (int y = 0; y < t.L; ++y)
            if (vals[y] != INT_MIN) worst = std::max(worst, int(y != p) + vals[y]);
        best = std::min(best, worst);
    }
    return best;
}

class Oracle {
public:
    explicit Oracle(Table t) : t_(std::move(t)) {}
    explicit Oracle(const sdl::ConceptClass& cls) : t_(Table::of(cls)) {}
    const Table& table() const { return t_; }

    /// Self-directed value on the point set `s`: learner picks the point.
    int sd(const Concepts& h, std::uint32_t s) {
        if (h.empty()) return -1;
        if (s == 0) return 0;
        auto key = std::make_pair(h, s);
        if (auto it = sd_memo_.find(key); it != sd_memo_.end()) return it->second;
        int best = INT_MAX;
        for (int x = 0; x < t_.n; ++x)
            if (s >> x & 1)
                best = std::min(best, round_value(t_, h, x, [&](const Concepts& g) { return sd(g, s & ~(1u << x)); }));
        return sd_memo_[key] = best;
    }
    int sd(std::uint32_t s) { return sd(t_.all(), s); }
    int sd_full() { return sd(t_.full_mask()); }
    /// Class value: maximum over all finite subsets.
    int sd_max() {
        int best = t_.rows.empty() ? -1 : 0;
        for (std::uint32_t s = 0; s <= t_.full_mask(); ++s) best = std::max(best, sd(s));
        return best;
    }

    /// Adversary picks the point.
    int online(const Concepts& h, std::uint32_t s) {
        if (h.empty()) return -1;
        if (s == 0) return 0;
        auto key = std::make_pair(h, s);
        if (auto it = on_memo_.find(key); it != on_memo_.end()) return it->second;
        int best = INT_MIN;
        for (int x = 0; x < t_.n; ++x)
            if (s >> x & 1)
                best = std::max(best,
                                round_value(t_, h, x, [&](const Concepts& g) { return online(g, s & ~(1u << x)); }));
        return on_memo_[key] = best;
    }
    int online_full() { return online(t_.all(), t_.full_mask()); }

    int fixed_order(const Concepts& h, const std::vector<int>& order, std::size_t i = 0) {
        if (h.empty()) return -1;
        if (i == order.size()) return 0;
        return round_value(t_, h, order[i], [&](const Concepts& g) { return fixed_order(g, order, i + 1); });
    }

    /// min / max over all orderings of the points of `s`.
    int order_extreme(std::uint32_t s, bool best) {
        std::vector<int> order;
        for (int x = 0; x < t_.n; ++x)
            if (s >> x & 1) order.push_back(x);
        int v = best ? INT_MAX : INT_MIN;
        do {
            int f = fixed_order(t_.all(), order);
            v = best ? std::min(v, f) : std::max(v, f);
        } while (std::next_permutation(order.begin(), order.end()));
        return v;
    }
    int worst_full() { return order_extreme(t_.full_mask(), false); }
    int best_max() {
        int v = t_.rows.empty() ? -1 : 0;
        for (std::uint32_t s = 1; s <= t_.full_mask(); ++s) v = std::max(v, order_extreme(s, true));
        return v;
    }

    bool shattered(std::uint32_t s) const {
        std::set<std::vector<int>> seen;
        for (const auto& r : t_.rows) {
            std::vector<int> p;
            for (int x = 0; x < t_.n; ++x)
                if (s >> x & 1) p.push_back(r[x]);
            seen.insert(p);
        }
        return seen.size() == (std::size_t(1) << __builtin_popcount(s));
    }
    int vc() const {
        if (t_.rows.empty()) return -1;
        int v = 0;
        for (std::uint32_t s = 0; s <= t_.full_mask(); ++s)
            if (shattered(s)) v = std::max(v, __builtin_popcount(s));
        return v;
    }
    /// Smallest point set on which concept c differs from every other concept.
    int teaching_size(int c) const {
        int best = t_.n;
        for (std::uint32_t s = 0; s <= t_.full_mask(); ++s) {
            bool ok = true;
            for (std::size_t d = 0; d < t_.rows.size() && ok; ++d) {
                if (int(d) == c) continue;
                bool differs = false;
                for (int x = 0; x < t_.n; ++x)
                    if ((s >> x & 1) && t_.rows[d][x] != t_.rows[c][x]) differs = true;
                ok = differs;
            }
            if (ok) best = std::min(best, __builtin_popcount(s));
        }
        return best;
    }
    int td() const {
        if (t_.rows.empty()) return -1;
        int v = 0;
        for (std::size_t c = 0; c < t_.rows.size(); ++c) v = std::max(v, teaching_size(int(c)));
        return v;
    }

private:
    Table t_;
    std::map<std::pair<Concepts, std::uint32_t>, int> sd_memo_, on_memo_;
};

/// Dichotomies of planar points (general position) cut by a line, by an angular
/// sweep in floating point: between consecutive critical directions the order of
/// projections is fixed, so every prefix of that order is a half-plane.
inline std::set<std::vector<int>> planar_dichotomies(const std::vector<std::pair<double, double>>& pts) {
    const double pi = std::acos(-1.0);
    std::vector<double> crit;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double a = std::atan2(pts[j].second - pts[i].second, pts[j].first - pts[i].first) + pi / 2;
            for (double b : {a, a + pi}) crit.push_back(std::fmod(b + 4 * pi, 2 * pi));
        }
    std::sort(crit.begin(), crit.end());
    std::set<std::vector<int>> out;
    for (std::size_t k = 0; k < crit.size(); ++k) {
        double next = k + 1 < crit.size() ? crit[k + 1] : crit[0] + 2 * pi;
        double th = (crit[k] + next) / 2;
        std::vector<std::pair<double, int>> proj;
        for (std::size_t i = 0; i < pts.size(); ++i)
            proj.push_back({std::cos(th) * pts[i].first + std::sin(th) * pts[i].second, int(i)});
        std::sort(proj.begin(), proj.end());
        for (std::size_t cut = 0; cut <= pts.size(); ++cut) {
            std::vector<int> d(pts.size(), 0);
            for (std::size_t i = cut; i < pts.size(); ++i) d[proj[i].second] = 1;
            out.insert(d);
        }
    }
    return out;
}

}  // namespace oracle
