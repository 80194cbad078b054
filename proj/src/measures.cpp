#include "sdl/dimensions.hpp"

#include "sdl/error.hpp"
#include "sdl/state_table.hpp"

#include <algorithm>
#include <set>

namespace sdl {

namespace {

// Is `points` shattered by the binary class?
bool shatters(const ConceptClass& cls, const std::vector<PointId>& points) {
    const std::size_t k = points.size();
    if (k >= 32 || (std::size_t(1) << k) > cls.num_concepts()) return false;
    std::vector<bool> seen(std::size_t(1) << k, false);
    std::size_t distinct = 0;
    for (ConceptId c = 0; c < cls.num_concepts(); ++c) {
        std::size_t pattern = 0;
        for (std::size_t i = 0; i < k; ++i) pattern |= std::size_t(cls.at(c, points[i])) << i;
        if (!seen[pattern]) {
            seen[pattern] = true;
            if (++distinct == seen.size()) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<PointId> shattered_set(const ConceptClass& cls, const SearchBudget& budget) {
    if (!cls.is_binary()) throw UnsupportedError("VC dimension is defined for binary classes only");
    if (cls.empty()) return {};
    budget.validate();
    std::size_t examined = 0;

    // Level-wise: a set is a candidate only if all its one-smaller subsets are shattered.
    std::set<std::vector<PointId>> level{{}};
    std::vector<PointId> best;
    while (!level.empty()) {
        best = *level.begin();
        std::set<std::vector<PointId>> next;
        for (const auto& s : level) {
            PointId start = s.empty() ? 0 : s.back() + 1;
            for (PointId x = start; x < cls.num_points(); ++x) {
                std::vector<PointId> cand = s;
                cand.push_back(x);
                bool subsets_ok = true;
                for (std::size_t drop = 0; drop + 1 < cand.size() && subsets_ok; ++drop) {
                    std::vector<PointId> sub;
                    for (std::size_t i = 0; i < cand.size(); ++i)
                        if (i != drop) sub.push_back(cand[i]);
                    subsets_ok = level.contains(sub);
                }
                if (!subsets_ok) continue;
                if (++examined > budget.max_subsets)
                    throw BudgetExceeded("vc_dim: subset budget exceeded", static_cast<int>(best.size()),
                                         floor_log2(cls.num_concepts()), examined);
                if (shatters(cls, cand)) next.insert(std::move(cand));
            }
        }
        level = std::move(next);
    }
    return best;
}

int vc_dim(const ConceptClass& cls, const SearchBudget& budget) {
    if (cls.empty()) return -1;
    return static_cast<int>(shattered_set(cls, budget).size());
}

namespace {

// Iterative-deepening minimum hitting set over the difference sets.
struct HittingSet {
    const std::vector<std::vector<PointId>>& sets;
    std::size_t budget;
    std::size_t nodes = 0;
    std::vector<char> chosen;
    std::vector<PointId> picked;

    bool hit(const std::vector<PointId>& s) const {
        return std::any_of(s.begin(), s.end(), [&](PointId x) { return chosen[x] != 0; });
    }

    bool dfs(std::size_t depth_left) {
        if (++nodes > budget) return false;
        auto open = std::find_if(sets.begin(), sets.end(), [&](const auto& s) { return !hit(s); });
        if (open == sets.end()) return true;
        if (depth_left == 0) return false;
        for (auto x : *open) {
            chosen[x] = 1;
            picked.push_back(x);
            if (dfs(depth_left - 1)) return true;
            picked.pop_back();
            chosen[x] = 0;
        }
        return false;
    }
};

}  // namespace

std::vector<PointId> teaching_set(const ConceptClass& cls, ConceptId target, const SearchBudget& budget) {
    if (target >= cls.num_concepts()) throw ArgumentError("concept id " + std::to_string(target) + " out of range");
    budget.validate();
    std::vector<std::vector<PointId>> diffs;
    for (ConceptId c = 0; c < cls.num_concepts(); ++c) {
        if (c == target) continue;
        std::vector<PointId> d;
        for (PointId x = 0; x < cls.num_points(); ++x)
            if (cls.at(c, x) != cls.at(target, x)) d.push_back(x);
        diffs.push_back(std::move(d));
    }
    HittingSet hs{diffs, budget.max_subsets, 0, std::vector<char>(cls.num_points(), 0), {}};
    for (std::size_t k = 0; k <= cls.num_points(); ++k) {
        if (hs.dfs(k)) {
            std::sort(hs.picked.begin(), hs.picked.end());
            return hs.picked;
        }
        if (hs.nodes > budget.max_subsets)
            throw BudgetExceeded("teaching_dim: search budget exceeded", static_cast<int>(k),
                                 static_cast<int>(cls.num_points()), hs.nodes);
    }
    throw InvariantViolation("teaching_set: rows are not distinct");
}

int teaching_dim(const ConceptClass& cls, const SearchBudget& budget) {
    if (cls.empty()) return -1;
    int td = 0;
    for (ConceptId c = 0; c < cls.num_concepts(); ++c)
        td = std::max(td, static_cast<int>(teaching_set(cls, c, budget).size()));
    return td;
}

}  // namespace sdl
