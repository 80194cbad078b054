#include "sdl/labelling_game.hpp"

#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"

#include <algorithm>

namespace sdl {

namespace {
constexpr std::int8_t kUnknown = 127;
}

LabellingGameOracle::LabellingGameOracle(const ConceptClass& cls, const ActiveSet& active, bool multiclass)
    : multiclass_(multiclass) {
    if (active.universe() != cls.num_points()) throw ArgumentError("active set does not belong to this class");
    if (active.size() > kGameMaxPoints)
        throw ArgumentError("labelling game oracle: " + std::to_string(active.size()) + " active points exceeds cap " +
                            std::to_string(kGameMaxPoints));
    if (cls.num_concepts() > kGameMaxConcepts)
        throw ArgumentError("labelling game oracle: " + std::to_string(cls.num_concepts()) +
                            " concepts exceeds cap " + std::to_string(kGameMaxConcepts));
    if (cls.num_labels() > kGameMaxLabels)
        throw ArgumentError("labelling game oracle: " + std::to_string(cls.num_labels()) + " labels exceeds cap " +
                            std::to_string(kGameMaxLabels));
    if (!multiclass && cls.num_labels() != 2)
        throw ArgumentError("binary labelling game needs exactly 2 labels; use the multi-class variant");

    points_ = active.members();
    k_ = points_.size();
    const std::size_t m = cls.num_concepts();
    all_concepts_ = m == 0 ? 0 : Mask((1u << m) - 1);
    all_points_ = Mask((1u << k_) - 1);

    table_.assign(m, std::vector<LabelId>(k_));
    with_label_.assign(k_, std::vector<Mask>(cls.num_labels(), 0));
    for (ConceptId c = 0; c < m; ++c)
        for (std::size_t j = 0; j < k_; ++j) {
            table_[c][j] = cls.at(c, points_[j]);
            with_label_[j][table_[c][j]] |= Mask(1) << c;
        }
    for (LabelId a = 0; a < cls.num_labels(); ++a)
        for (LabelId b = a + 1; b < cls.num_labels(); ++b) pairs_.emplace_back(a, b);
    memo_.assign(std::size_t(1) << (m + k_), kUnknown);
}

LabellingGameOracle::Mask LabellingGameOracle::consistent(Mask h, std::uint32_t j, LabelId y) const {
    return y < with_label_[j].size() ? h & with_label_[j][y] : 0;
}

LabellingGameOracle::Mask LabellingGameOracle::consistent(Mask h, Mask c, const std::vector<LabelId>& labels) const {
    for (std::uint32_t j = 0; j < k_; ++j)
        if (c >> j & 1u) h = consistent(h, j, labels[j]);
    return h;
}

std::vector<LabellingGameOracle::Mask> LabellingGameOracle::labellings(Mask h, Mask c) const {
    std::vector<Mask> out;
    Mask left = h;
    for (std::uint32_t i = 0; left != 0; ++i) {
        if (!(left >> i & 1u)) continue;
        Mask same = consistent(h, c, table_[i]);
        out.push_back(same);
        left &= ~same;
    }
    return out;
}

template <class F>
void LabellingGameOracle::for_each_designation(Mask open, F&& f) const {
    std::vector<std::uint8_t> d(k_, 0);
    std::vector<std::uint32_t> slots;
    for (std::uint32_t j = 0; j < k_; ++j)
        if (open >> j & 1u) slots.push_back(j);
    while (true) {
        if (f(d)) return;
        std::size_t i = slots.size();
        while (i > 0) {
            auto j = slots[i - 1];
            if (++d[j] < pairs_.size()) break;
            d[j] = 0;
            --i;
        }
        if (i == 0) return;
    }
}

int LabellingGameOracle::learner_value(Mask h, Mask open, const std::vector<std::uint8_t>& designation) {
    int best = 1 << 20;
    for (std::uint32_t j = 0; j < k_; ++j) {
        if (!(open >> j & 1u)) continue;
        auto [a, b] = pairs_[designation[j]];
        for (LabelId y : {a, b}) {
            Mask next = consistent(h, j, y);
            int v = next == 0 ? -1 : 1 + adversary_value(next, open & ~(Mask(1) << j));
            best = std::min(best, v);
        }
    }
    return best;
}

int LabellingGameOracle::adversary_value(Mask h, Mask open) {
    if (h == 0) return -1;
    if (open == 0) return 0;
    auto& slot = memo_[(std::size_t(h) << k_) | open];
    if (slot != kUnknown) return slot;
    int best = -1;
    // Submasks of open, ascending.
    for (Mask c = 0;; c = (c - open) & open) {
        const Mask rest = open & ~c;
        for (Mask g : labellings(h, c)) {
            if (rest == 0) {
                best = std::max(best, 0);
                continue;
            }
            for_each_designation(rest, [&](const std::vector<std::uint8_t>& d) {
                best = std::max(best, learner_value(g, rest, d));
                return false;
            });
        }
        if (c == open) break;
    }
    memo_[(std::size_t(h) << k_) | open] = static_cast<std::int8_t>(best);
    return best;
}

LabellingGameOracle::AdversaryMove LabellingGameOracle::best_adversary_move(Mask h, Mask open) {
    if (h == 0 || open == 0) throw StateError("labelling game: no adversary move in a finished game");
    AdversaryMove best;
    best.value = -2;
    for (Mask c = 0;; c = (c - open) & open) {
        const Mask rest = open & ~c;
        for (Mask g : labellings(h, c)) {
            std::uint32_t first = 0;
            while (!(g >> first & 1u)) ++first;
            auto consider = [&](int v, const std::vector<std::uint8_t>& d) {
                if (v <= best.value) return;
                best.value = v;
                best.labelled = c;
                best.labels = table_[first];
                best.designation = d;
            };
            if (rest == 0) {
                consider(0, std::vector<std::uint8_t>(k_, 0));
                continue;
            }
            for_each_designation(rest, [&](const std::vector<std::uint8_t>& d) {
                consider(learner_value(g, rest, d), d);
                return false;
            });
        }
        if (c == open) break;
    }
    return best;
}

LabellingGameOracle::LearnerMove LabellingGameOracle::best_learner_move(Mask h, Mask open,
                                                                        const std::vector<std::uint8_t>& designation) {
    if (open == 0) throw StateError("labelling game: no point left for the learner");
    LearnerMove best;
    best.value = 1 << 20;
    for (std::uint32_t j = 0; j < k_; ++j) {
        if (!(open >> j & 1u)) continue;
        auto [a, b] = pairs_[designation[j]];
        for (LabelId y : {a, b}) {
            Mask next = consistent(h, j, y);
            int v = next == 0 ? -1 : 1 + adversary_value(next, open & ~(Mask(1) << j));
            if (v < best.value) best = {j, y, v};
        }
    }
    return best;
}

int labelling_game_value(const ConceptClass& cls, const ActiveSet& active, bool multiclass) {
    LabellingGameOracle oracle(cls, active, multiclass);
    return oracle.value();
}

}  // namespace sdl
