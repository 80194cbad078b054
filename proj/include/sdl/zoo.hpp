#pragma once

#include "sdl/concept_class.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sdl::zoo {

/// num / den with den != 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct RationalPoint {
    std::vector<Rational> coords;
    std::size_t dim() const noexcept { return coords.size(); }
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

inline constexpr std::size_t kMaxGridPoints = 64;
inline constexpr std::size_t kMaxBendavidPoints = 256;
inline constexpr std::size_t kMaxSeparatorPoints = 16;
inline constexpr std::size_t kMaxIntervalPoints = 20;

/// One-hot rows, n >= 2.
ConceptClass singletons(std::size_t n);
/// Prefixes of 1s: 0..0, 10..0, ..., 1..1 (n + 1 concepts), n >= 1.
ConceptClass thresholds(std::size_t n);
/// Strings with at most k maximal blocks of 1s over n ordered points, n >= 2k, k >= 1.
ConceptClass k_intervals(std::size_t k, std::size_t n);
/// Axis-aligned boxes on the n^d grid plus the empty box. Point ids are
/// row-major with dimension 0 most significant.
ConceptClass grid_rectangles(std::size_t d, std::size_t n_per_dim);
/// The recursive 3x3 block class: 3^n * 2^d rows over 3^n * d points.
ConceptClass bendavid(std::size_t d, std::size_t n);
/// Thresholds tagged by the permutation that orders the domain: 2^n points,
/// (2^n)! * 2^n concepts, 2 * (2^n)! labels. Label 2i + b = (i-th permutation, bit b).
ConceptClass perm_thresholds(std::size_t n);

/// Every dichotomy of `points` realizable by an affine hyperplane, decided in
/// exact rational arithmetic. Label 1 = positive side. Rows sorted.
ConceptClass linear_separators(const std::vector<RationalPoint>& points);
/// Exact strict linear separability of `positive` vs the rest of `points`.
bool linearly_separable(const std::vector<RationalPoint>& points, const std::vector<bool>& positive);

/// Star-shaped octagon: the square (+-2, +-2) around the diamond (+-1, 0), (0, +-1),
/// vertices counter-clockwise from (1, 0). General position, 58 dichotomies,
/// self-directed value 4.
std::vector<RationalPoint> octagon_config();
/// Convex regular octagon on the unit circle: (+-1, 0), (0, +-1), (+-697/985, +-696/985).
/// Also 58 dichotomies, but its self-directed value is only 3.
std::vector<RationalPoint> regular_octagon_config();
/// `copies` octagons in 3 * copies dimensions: copy j uses coordinates 3j, 3j+1
/// for the octagon and 3j+2 = 1; all other coordinates are 0.
std::vector<RationalPoint> embed_2d(std::size_t copies);

/// m distinct uniform rows over n points and L labels (mt19937_64). m <= L^n, L >= 2.
ConceptClass random_class(std::size_t m, std::size_t n, std::size_t L, std::uint64_t seed);
/// Initial segments of a random tree order on n points, plus the empty concept.
ConceptClass vc1_tree_class(std::size_t n, std::uint64_t seed);

}  // namespace sdl::zoo
