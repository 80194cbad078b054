#include "sdl/factorize.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <unordered_set>

namespace sdl {

std::size_t distinct_projections(const StateTable& t, const std::vector<std::uint32_t>& columns) {
    if (t.rows == 0) return 0;
    std::vector<unsigned> width(columns.size());
    unsigned total = 0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        std::uint32_t arity = column_arity(t, columns[j]);
        width[j] = std::max(1u, static_cast<unsigned>(std::bit_width(arity > 0 ? arity - 1 : 0u)));
        total += width[j];
    }
    if (total <= 64) {
        std::vector<std::uint64_t> keys(t.rows);
        for (std::uint32_t r = 0; r < t.rows; ++r) {
            std::uint64_t k = 0;
            for (std::size_t j = 0; j < columns.size(); ++j) k = (k << width[j]) | t.at(r, columns[j]);
            keys[r] = k;
        }
        std::sort(keys.begin(), keys.end());
        return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    std::unordered_set<std::string> seen;
    seen.reserve(t.rows);
    std::string key;
    for (std::uint32_t r = 0; r < t.rows; ++r) {
        key.clear();
        for (auto c : columns) {
            auto v = t.at(r, c);
            key.append(reinterpret_cast<const char*>(&v), sizeof v);
        }
        seen.insert(key);
    }
    return seen.size();
}

namespace {

// Union-find over columns for pairwise dependence.
struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

std::vector<std::uint32_t> complement(const std::vector<std::uint32_t>& all, const std::vector<std::uint32_t>& part) {
    std::vector<std::uint32_t> out;
    std::set_difference(all.begin(), all.end(), part.begin(), part.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> product_factors(const StateTable& t, std::size_t max_checks) {
    std::vector<std::uint32_t> all(t.cols);
    std::iota(all.begin(), all.end(), 0u);
    if (t.cols < 2 || t.rows < 4) return {all};

    // Columns whose pair projection is not a product must share a block.
    std::vector<std::size_t> single(t.cols);
    for (std::uint32_t c = 0; c < t.cols; ++c) single[c] = column_arity(t, c);
    Dsu dsu(t.cols);
    for (std::uint32_t a = 0; a < t.cols; ++a)
        for (std::uint32_t b = a + 1; b < t.cols; ++b)
            if (distinct_projections(t, {a, b}) != single[a] * single[b]) dsu.unite(a, b);

    std::vector<std::vector<std::uint32_t>> comps;
    {
        std::vector<int> comp_of(t.cols, -1);
        for (std::uint32_t c = 0; c < t.cols; ++c) {
            auto root = dsu.find(c);
            if (comp_of[root] < 0) {
                comp_of[root] = static_cast<int>(comps.size());
                comps.emplace_back();
            }
            comps[comp_of[root]].push_back(c);
        }
    }
    if (comps.size() == 1) return {all};

    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<std::size_t> remaining(comps.size());
    std::iota(remaining.begin(), remaining.end(), 0u);
    std::size_t checks = 0;

    auto columns_of = [&](const std::vector<std::size_t>& comp_ids) {
        std::vector<std::uint32_t> cols;
        for (auto i : comp_ids) cols.insert(cols.end(), comps[i].begin(), comps[i].end());
        std::sort(cols.begin(), cols.end());
        return cols;
    };

    while (remaining.size() > 1) {
        const auto rem_cols = columns_of(remaining);
        const std::size_t rem_rows = distinct_projections(t, rem_cols);
        const std::size_t first = remaining.front();
        std::vector<std::size_t> others(remaining.begin() + 1, remaining.end());
        std::vector<std::uint32_t> found;
        bool gave_up = false;
        // Smallest union of components containing `first` that factors out.
        for (std::size_t extra = 0; extra < others.size() && found.empty() && !gave_up; ++extra) {
            std::vector<bool> pick(others.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(extra), true);
            do {
                if (++checks > max_checks) {
                    gave_up = true;
                    break;
                }
                std::vector<std::size_t> ids{first};
                for (std::size_t i = 0; i < others.size(); ++i)
                    if (pick[i]) ids.push_back(others[i]);
                auto a = columns_of(ids);
                auto b = complement(rem_cols, a);
                std::size_t pa = distinct_projections(t, a);
                if (rem_rows % pa != 0) continue;
                if (pa * distinct_projections(t, b) == rem_rows) {
                    found = std::move(a);
                    break;
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        if (found.empty()) break;
        blocks.push_back(found);
        std::vector<std::size_t> next;
        for (auto i : remaining)
            if (!std::binary_search(found.begin(), found.end(), comps[i].front())) next.push_back(i);
        remaining = std::move(next);
    }
    if (!remaining.empty()) blocks.push_back(columns_of(remaining));
    return blocks;
}

}  // namespace sdl
