#pragma once

#include "sdl/concept_class.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sdl {

/// Exhaustive solver for the labelling game on a tiny state. Independent of the
/// mistake-bound engine on purpose: it plays the game as stated (adversary labels
/// a subset, learner labels one point) with bitmask states and no reductions.
///
/// Local indices: concepts and points are renumbered 0.. in the order of
/// `points()` / the class rows. Masks are bit i = local index i.
class LabellingGameOracle {
public:
    using Mask = std::uint32_t;
    using LabelPair = std::pair<LabelId, LabelId>;

    /// Throws ArgumentError when the caps are exceeded or, in binary mode, num_labels != 2.
    LabellingGameOracle(const ConceptClass& cls, const ActiveSet& active, bool multiclass);

    const std::vector<PointId>& points() const noexcept { return points_; }
    bool multiclass() const noexcept { return multiclass_; }
    Mask all_concepts() const noexcept { return all_concepts_; }
    Mask all_points() const noexcept { return all_points_; }

    /// Label pairs the adversary may designate; binary mode has the single pair (0, 1).
    const std::vector<LabelPair>& pairs() const noexcept { return pairs_; }

    /// Game value from an adversary turn with concepts `h` still consistent and
    /// points `open` unlabelled. -1 if h is empty.
    int adversary_value(Mask h, Mask open);
    /// Value once the adversary has moved: designation[j] = pair index for open local point j.
    int learner_value(Mask h, Mask open, const std::vector<std::uint8_t>& designation);

    int value() { return adversary_value(all_concepts_, all_points_); }

    struct AdversaryMove {
        Mask labelled = 0;                       // C, local points
        std::vector<LabelId> labels;             // label per local point (meaningful on C)
        std::vector<std::uint8_t> designation;   // pair index per local point (meaningful off C)
        int value = 0;
    };
    struct LearnerMove {
        std::uint32_t point = 0;  // local
        LabelId label = 0;
        int value = 0;
    };

    /// Optimal moves, first in enumeration order (C ascending as an integer, then
    /// labellings by first realizing concept, then designations lexicographically;
    /// learner: lowest point, then lowest label).
    AdversaryMove best_adversary_move(Mask h, Mask open);
    LearnerMove best_learner_move(Mask h, Mask open, const std::vector<std::uint8_t>& designation);

    /// Concepts of `h` agreeing with `labels` on the points of `c`.
    Mask consistent(Mask h, Mask c, const std::vector<LabelId>& labels) const;
    /// Concepts of `h` labelling local point j with y.
    Mask consistent(Mask h, std::uint32_t j, LabelId y) const;

private:
    std::vector<std::vector<Mask>> with_label_;  // [point][label] -> concept mask
    std::vector<std::vector<LabelId>> table_;    // [concept][local point]
    std::vector<PointId> points_;
    std::vector<LabelPair> pairs_;
    std::vector<std::int8_t> memo_;  // index (h << k) | open; 127 = unknown
    Mask all_concepts_ = 0;
    Mask all_points_ = 0;
    std::size_t k_ = 0;
    bool multiclass_ = false;

    // Realizable labellings of c, one concept mask per labelling (by first concept).
    std::vector<Mask> labellings(Mask h, Mask c) const;
    template <class F>
    void for_each_designation(Mask open, F&& f) const;
};

}  // namespace sdl
