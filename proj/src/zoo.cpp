#include "sdl/zoo.hpp"

#include "sdl/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace sdl::zoo {

using Rows = std::vector<std::vector<LabelId>>;

ConceptClass singletons(std::size_t n) {
    if (n < 2) throw ArgumentError("singletons: n must be >= 2");
    Rows rows(n, std::vector<LabelId>(n, 0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return ConceptClass::from_rows(n, 2, rows, DuplicateRows::reject);
}

ConceptClass thresholds(std::size_t n) {
    if (n < 1) throw ArgumentError("thresholds: n must be >= 1");
    Rows rows;
    for (std::size_t a = 0; a <= n; ++a) {
        std::vector<LabelId> r(n, 0);
        std::fill(r.begin(), r.begin() + a, 1);
        rows.push_back(std::move(r));
    }
    return ConceptClass::from_rows(n, 2, rows, DuplicateRows::reject);
}

ConceptClass k_intervals(std::size_t k, std::size_t n) {
    if (k < 1) throw ArgumentError("k_intervals: k must be >= 1");
    if (n < 2 * k) throw ArgumentError("k_intervals: need n >= 2k");
    if (n > kMaxIntervalPoints) throw ArgumentError("k_intervals: n exceeds cap " + std::to_string(kMaxIntervalPoints));
    Rows rows;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::size_t blocks = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i & 1u) && (i == 0 || !(mask >> (i - 1) & 1u))) ++blocks;
        if (blocks > k) continue;
        std::vector<LabelId> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = mask >> i & 1u;
        rows.push_back(std::move(r));
    }
    return ConceptClass::from_rows(n, 2, rows, DuplicateRows::reject);
}

ConceptClass grid_rectangles(std::size_t d, std::size_t n) {
    if (d < 1) throw ArgumentError("grid_rectangles: d must be >= 1");
    if (n < 2) throw ArgumentError("grid_rectangles: n_per_dim must be >= 2");
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= n;
        if (total > kMaxGridPoints)
            throw ArgumentError("grid_rectangles: n^d exceeds cap " + std::to_string(kMaxGridPoints));
    }
    auto coord = [&](std::size_t p, std::size_t axis) {
        for (std::size_t a = d - 1; a > axis; --a) p /= n;
        return p % n;
    };
    Rows rows{std::vector<LabelId>(total, 0)};
    // Intervals per axis, odometer over axes.
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t hi = lo; hi < n; ++hi) spans.emplace_back(lo, hi);
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        std::vector<LabelId> r(total);
        for (std::size_t p = 0; p < total; ++p) {
            bool in = true;
            for (std::size_t a = 0; a < d && in; ++a) {
                auto c = coord(p, a);
                in = spans[pick[a]].first <= c && c <= spans[pick[a]].second;
            }
            r[p] = in;
        }
        rows.push_back(std::move(r));
        std::size_t a = d;
        while (a > 0 && ++pick[a - 1] == spans.size()) pick[--a] = 0;
        if (a == 0) break;
    }
    std::vector<std::string> names;
    for (std::size_t p = 0; p < total; ++p) {
        std::string s = "(";
        for (std::size_t a = 0; a < d; ++a) s += (a ? "," : "") + std::to_string(coord(p, a));
        names.push_back(s + ")");
    }
    return ConceptClass::from_rows(total, 2, rows, DuplicateRows::dedupe, std::move(names));
}

namespace {

Rows bendavid_rows(std::size_t d, std::size_t n) {
    if (n == 0) {
        Rows rows;
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            std::vector<LabelId> r(d);
            for (std::size_t i = 0; i < d; ++i) r[i] = mask >> i & 1u;
            rows.push_back(std::move(r));
        }
        return rows;
    }
    Rows inner = bendavid_rows(d, n - 1);
    const std::size_t w = inner.front().size();
    Rows rows;
    for (std::size_t g = 0; g < 3; ++g)
        for (const auto& r : inner) {
            std::vector<LabelId> out(3 * w, 0);
            std::copy(r.begin(), r.end(), out.begin() + g * w);
            std::fill_n(out.begin() + ((g + 1) % 3) * w, w, 1);
            rows.push_back(std::move(out));
        }
    return rows;
}

}  // namespace

ConceptClass bendavid(std::size_t d, std::size_t n) {
    if (d < 1) throw ArgumentError("bendavid: d must be >= 1");
    if (d > 16) throw ArgumentError("bendavid: d exceeds cap 16");
    std::size_t points = d;
    for (std::size_t i = 0; i < n; ++i) {
        points *= 3;
        if (points > kMaxBendavidPoints)
            throw ArgumentError("bendavid: 3^n * d exceeds cap " + std::to_string(kMaxBendavidPoints));
    }
    return ConceptClass::from_rows(points, 2, bendavid_rows(d, n), DuplicateRows::reject);
}

ConceptClass perm_thresholds(std::size_t n) {
    if (n != 2 && n != 3) throw ArgumentError("perm_thresholds: n must be 2 or 3");
    const std::size_t N = std::size_t(1) << n;
    std::vector<std::uint32_t> perm(N);
    std::iota(perm.begin(), perm.end(), 1u);
    Rows rows;
    std::size_t i = 0;
    do {
        for (std::uint32_t m = 1; m <= N; ++m) {
            std::vector<LabelId> r(N);
            for (std::size_t k = 0; k < N; ++k) r[k] = LabelId(2 * i + (perm[k] <= m ? 1 : 0));
            rows.push_back(std::move(r));
        }
        ++i;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ConceptClass::from_rows(N, 2 * i, rows, DuplicateRows::reject);
}

// ---------------------------------------------------------------------------
// Exact linear separability: phase-1 simplex over the rationals with Bland's rule.

namespace {

mpq_class to_mpq(const Rational& r) {
    if (r.den == 0) throw ArgumentError("rational coordinate with zero denominator");
    mpq_class q(mpz_class(std::to_string(r.num)), mpz_class(std::to_string(r.den)));
    q.canonicalize();
    return q;
}

/// Is {z : A z >= b} non-empty (z free)? On success `witness` holds a solution.
bool feasible_geq(const std::vector<std::vector<mpq_class>>& A, const std::vector<mpq_class>& b,
                  std::vector<mpq_class>* witness) {
    const std::size_t m = A.size();
    const std::size_t k = m ? A[0].size() : 0;
    // Columns: z+ (k), z- (k), surplus (m), artificial (m), rhs.
    const std::size_t nv = 2 * k + 2 * m;
    std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(nv + 1, 0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j) {
            T[i][j] = sign * A[i][j];
            T[i][k + j] = -sign * A[i][j];
        }
        T[i][2 * k + i] = -sign;
        T[i][2 * k + m + i] = 1;
        T[i][nv] = sign * b[i];
        basis[i] = 2 * k + m + i;
    }
    // Reduced costs of min sum(artificial).
    std::vector<mpq_class> cost(nv + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= nv; ++j)
            if (j < 2 * k + m || j == nv) cost[j] -= T[i][j];

    while (true) {
        std::size_t enter = nv;
        for (std::size_t j = 0; j < nv; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == nv) break;
        std::size_t leave = m;
        mpq_class best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            mpq_class ratio = T[i][nv] / T[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen for a bounded-below phase 1
        const mpq_class piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            const mpq_class f = T[i][enter];
            for (std::size_t j = 0; j <= nv; ++j) T[i][j] -= f * T[leave][j];
        }
        if (cost[enter] != 0) {
            const mpq_class f = cost[enter];
            for (std::size_t j = 0; j <= nv; ++j) cost[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= 2 * k + m && T[i][nv] != 0) return false;
    if (witness) {
        witness->assign(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < k) (*witness)[basis[i]] += T[i][nv];
            else if (basis[i] < 2 * k) (*witness)[basis[i] - k] -= T[i][nv];
        }
    }
    return true;
}

struct SeparatorSearch {
    std::vector<std::vector<mpq_class>> x;  // points with a trailing 1 (bias)
    std::vector<std::vector<LabelId>> found;

    bool feasible(const std::vector<int>& signs, std::vector<mpq_class>* witness) const {
        std::vector<std::vector<mpq_class>> A;
        std::vector<mpq_class> b(signs.size(), 1);
        for (std::size_t i = 0; i < signs.size(); ++i) {
            std::vector<mpq_class> row = x[i];
            for (auto& v : row) v *= signs[i];
            A.push_back(std::move(row));
        }
        return feasible_geq(A, b, witness);
    }

    // signs[0..i) feasible with hyperplane `w`; extend to point i.
    void dfs(std::vector<int>& signs, const std::vector<mpq_class>& w) {
        const std::size_t i = signs.size();
        if (i == x.size()) {
            std::vector<LabelId> r(i);
            for (std::size_t j = 0; j < i; ++j) r[j] = signs[j] > 0;
            found.push_back(std::move(r));
            return;
        }
        mpq_class side = 0;
        for (std::size_t j = 0; j < w.size(); ++j) side += w[j] * x[i][j];
        for (int s : {-1, 1}) {
            signs.push_back(s);
            // The current hyperplane already puts x_i strictly on side s: scale it up.
            if (side * s > 0) {
                mpq_class scale = side * s >= 1 ? mpq_class(1) : mpq_class(1) / (side * s);
                std::vector<mpq_class> w2 = w;
                for (auto& v : w2) v *= scale;
                dfs(signs, w2);
            } else {
                std::vector<mpq_class> w2;
                if (feasible(signs, &w2)) dfs(signs, w2);
            }
            signs.pop_back();
        }
    }
};

}  // namespace

bool linearly_separable(const std::vector<RationalPoint>& points, const std::vector<bool>& positive) {
    if (points.size() != positive.size()) throw ArgumentError("linearly_separable: label count mismatch");
    if (points.empty()) return true;
    const std::size_t d = points.front().dim();
    SeparatorSearch s;
    std::vector<int> signs;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != d) throw ArgumentError("linearly_separable: dimension mismatch");
        std::vector<mpq_class> row;
        for (const auto& c : points[i].coords) row.push_back(to_mpq(c));
        row.push_back(1);
        s.x.push_back(std::move(row));
        signs.push_back(positive[i] ? 1 : -1);
    }
    return s.feasible(signs, nullptr);
}

ConceptClass linear_separators(const std::vector<RationalPoint>& points) {
    if (points.empty()) throw ArgumentError("linear_separators: need at least one point");
    if (points.size() > kMaxSeparatorPoints)
        throw ArgumentError("linear_separators: more than " + std::to_string(kMaxSeparatorPoints) + " points");
    const std::size_t d = points.front().dim();
    if (d == 0) throw ArgumentError("linear_separators: points must have dimension >= 1");
    SeparatorSearch s;
    for (const auto& p : points) {
        if (p.dim() != d) throw ArgumentError("linear_separators: dimension mismatch");
        std::vector<mpq_class> row;
        for (const auto& c : p.coords) row.push_back(to_mpq(c));
        row.push_back(1);
        s.x.push_back(std::move(row));
    }
    // Fix the first point positive; complements give the rest.
    std::vector<int> signs{1};
    std::vector<mpq_class> w(d + 1, 0);
    w[d] = 1;  // constant classifier
    s.dfs(signs, w);
    Rows rows = s.found;
    for (const auto& r : s.found) {
        std::vector<LabelId> c(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) c[j] = 1 - r[j];
        rows.push_back(std::move(c));
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> names;
    for (const auto& p : points) {
        std::string n = "(";
        for (std::size_t j = 0; j < p.coords.size(); ++j) {
            n += j ? "," : "";
            n += std::to_string(p.coords[j].num);
            if (p.coords[j].den != 1) n += "/" + std::to_string(p.coords[j].den);
        }
        names.push_back(n + ")");
    }
    return ConceptClass::from_rows(points.size(), 2, rows, DuplicateRows::dedupe, std::move(names));
}

std::vector<RationalPoint> octagon_config() {
    auto p = [](std::int64_t x, std::int64_t y) { return RationalPoint{{Rational{x, 1}, Rational{y, 1}}}; };
    return {p(1, 0), p(2, 2), p(0, 1), p(-2, 2), p(-1, 0), p(-2, -2), p(0, -1), p(2, -2)};
}

std::vector<RationalPoint> regular_octagon_config() {
    const Rational z{0, 1}, one{1, 1}, mone{-1, 1};
    const Rational a{697, 985}, b{696, 985}, ma{-697, 985}, mb{-696, 985};
    return {
        {{one, z}}, {{a, b}}, {{z, one}}, {{ma, b}}, {{mone, z}}, {{ma, mb}}, {{z, mone}}, {{a, mb}},
    };
}

std::vector<RationalPoint> embed_2d(std::size_t copies) {
    if (copies < 1) throw ArgumentError("embed_2d: copies must be >= 1");
    const auto base = octagon_config();
    std::vector<RationalPoint> out;
    for (std::size_t j = 0; j < copies; ++j)
        for (const auto& p : base) {
            RationalPoint q;
            q.coords.assign(3 * copies, Rational{0, 1});
            q.coords[3 * j] = p.coords[0];
            q.coords[3 * j + 1] = p.coords[1];
            q.coords[3 * j + 2] = Rational{1, 1};
            out.push_back(std::move(q));
        }
    return out;
}

ConceptClass random_class(std::size_t m, std::size_t n, std::size_t L, std::uint64_t seed) {
    if (L < 2) throw ArgumentError("random_class: need at least 2 labels");
    // Capacity L^n, saturating.
    std::size_t capacity = 1;
    for (std::size_t i = 0; i < n && capacity <= m; ++i) capacity *= L;
    if (m > capacity) throw ArgumentError("random_class: m exceeds the number of distinct rows L^n");
    std::mt19937_64 rng(seed);
    std::set<std::vector<LabelId>> seen;
    Rows rows;
    while (rows.size() < m) {
        std::vector<LabelId> r(n);
        for (auto& v : r) v = static_cast<LabelId>(rng() % L);
        if (seen.insert(r).second) rows.push_back(std::move(r));
    }
    return ConceptClass::from_rows(n, L, rows, DuplicateRows::reject);
}

ConceptClass vc1_tree_class(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("vc1_tree_class: n must be >= 1");
    std::mt19937_64 rng(seed);
    // Random recursive tree on nodes 0..n-1, then random point ids.
    std::vector<std::size_t> parent(n, 0);
    for (std::size_t i = 1; i < n; ++i) parent[i] = rng() % i;
    std::vector<PointId> id(n);
    std::iota(id.begin(), id.end(), 0u);
    std::shuffle(id.begin(), id.end(), rng);
    Rows rows{std::vector<LabelId>(n, 0)};
    for (std::size_t y = 0; y < n; ++y) {
        std::vector<LabelId> r(n, 0);
        for (std::size_t v = y;; v = parent[v]) {
            r[id[v]] = 1;
            if (v == 0) break;
        }
        rows.push_back(std::move(r));
    }
    return ConceptClass::from_rows(n, 2, rows, DuplicateRows::reject);
}

}  // namespace sdl::zoo
