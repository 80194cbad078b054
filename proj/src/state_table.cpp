#include "sdl/state_table.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <unordered_set>

namespace sdl {

namespace {

bool row_less(const StateTable& t, std::uint32_t a, std::uint32_t b) {
    auto ra = t.row(a);
    auto rb = t.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
}

bool row_equal(const StateTable& t, std::uint32_t a, std::uint32_t b) {
    return t.cols == 0 || std::memcmp(t.row(a).data(), t.row(b).data(), t.cols * sizeof(std::uint32_t)) == 0;
}

// Sorts rows lexicographically and drops duplicates.
void sort_unique_rows(StateTable& t) {
    if (t.rows <= 1) return;
    std::vector<std::uint32_t> idx(t.rows);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return row_less(t, a, b); });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return row_equal(t, a, b); }),
              idx.end());
    std::vector<std::uint32_t> cells;
    cells.reserve(idx.size() * t.cols);
    for (auto r : idx) {
        auto row = t.row(r);
        cells.insert(cells.end(), row.begin(), row.end());
    }
    t.rows = static_cast<std::uint32_t>(idx.size());
    t.cells = std::move(cells);
}

// Renames labels of every column to 0,1,2,... by first appearance top to bottom.
// Returns the arity of each column.
std::vector<std::uint32_t> relabel(StateTable& t) {
    std::vector<std::uint32_t> arity(t.cols, 0);
    if (t.rows == 0) return arity;
    std::vector<std::uint32_t> seen_labels;
    for (std::uint32_t c = 0; c < t.cols; ++c) {
        std::uint32_t next = 0;
        // Small columns: linear map scan. Big alphabets: sort-based map.
        if (t.rows <= 64) {
            std::uint32_t from[64];
            std::uint32_t to[64];
            for (std::uint32_t r = 0; r < t.rows; ++r) {
                auto& cell = t.cells[std::size_t(r) * t.cols + c];
                std::uint32_t k = 0;
                while (k < next && from[k] != cell) ++k;
                if (k == next) {
                    from[next] = cell;
                    to[next] = next;
                    ++next;
                }
                cell = to[k];
            }
        } else {
            seen_labels.clear();
            for (std::uint32_t r = 0; r < t.rows; ++r) seen_labels.push_back(t.cells[std::size_t(r) * t.cols + c]);
            std::vector<std::uint32_t> uniq = seen_labels;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            constexpr std::uint32_t unset = ~0u;
            std::vector<std::uint32_t> rename(uniq.size(), unset);
            for (std::uint32_t r = 0; r < t.rows; ++r) {
                auto& cell = t.cells[std::size_t(r) * t.cols + c];
                auto pos = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), cell) - uniq.begin());
                if (rename[pos] == unset) rename[pos] = next++;
                cell = rename[pos];
            }
        }
        arity[c] = next;
    }
    return arity;
}

std::vector<std::uint32_t> column(const StateTable& t, std::uint32_t c) {
    std::vector<std::uint32_t> out(t.rows);
    for (std::uint32_t r = 0; r < t.rows; ++r) out[r] = t.at(r, c);
    return out;
}

StateTable with_columns(const StateTable& t, const std::vector<std::uint32_t>& keep) {
    StateTable out;
    out.rows = t.rows;
    out.cols = static_cast<std::uint32_t>(keep.size());
    out.cells.resize(std::size_t(out.rows) * out.cols);
    for (std::uint32_t r = 0; r < t.rows; ++r)
        for (std::uint32_t j = 0; j < out.cols; ++j) out.cells[std::size_t(r) * out.cols + j] = t.at(r, keep[j]);
    return out;
}

// Drops forced and duplicate columns. Free mode also sorts the survivors.
void reduce_columns(StateTable& t, ColumnOrder order, const std::vector<std::uint32_t>& arity) {
    std::vector<std::vector<std::uint32_t>> cols;
    std::vector<std::uint32_t> keep;
    for (std::uint32_t c = 0; c < t.cols; ++c) {
        if (arity[c] <= 1) continue;
        keep.push_back(c);
        cols.push_back(column(t, c));
    }
    if (order == ColumnOrder::free) {
        std::vector<std::uint32_t> idx(keep.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return cols[a] < cols[b]; });
        idx.erase(std::unique(idx.begin(), idx.end(), [&](auto a, auto b) { return cols[a] == cols[b]; }), idx.end());
        std::vector<std::uint32_t> sorted_keep;
        sorted_keep.reserve(idx.size());
        for (auto i : idx) sorted_keep.push_back(keep[i]);
        keep = std::move(sorted_keep);
    } else {
        std::vector<std::uint32_t> unique_keep;
        std::vector<std::size_t> firsts;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            bool dup = false;
            for (auto f : firsts)
                if (cols[f] == cols[i]) {
                    dup = true;
                    break;
                }
            if (!dup) {
                firsts.push_back(i);
                unique_keep.push_back(keep[i]);
            }
        }
        keep = std::move(unique_keep);
    }
    if (keep.size() == t.cols) {
        bool identity = true;
        for (std::uint32_t j = 0; j < keep.size(); ++j) identity = identity && keep[j] == j;
        if (identity) return;
    }
    t = with_columns(t, keep);
}

}  // namespace

StateTable make_table(const ConceptClass& cls, const VersionSpace& vs, std::span<const PointId> columns) {
    StateTable t;
    auto members = vs.members();
    t.rows = static_cast<std::uint32_t>(members.size());
    t.cols = static_cast<std::uint32_t>(columns.size());
    t.cells.resize(std::size_t(t.rows) * t.cols);
    for (std::uint32_t r = 0; r < t.rows; ++r)
        for (std::uint32_t j = 0; j < t.cols; ++j) t.cells[std::size_t(r) * t.cols + j] = cls.at(members[r], columns[j]);
    return t;
}

void canonicalize(StateTable& t, ColumnOrder order) {
    sort_unique_rows(t);
    if (t.rows <= 1) {
        t.cols = 0;
        t.cells.clear();
        return;
    }
    auto arity = relabel(t);
    reduce_columns(t, order, arity);
    const int rounds = order == ColumnOrder::free ? 2 : 1;
    for (int i = 0; i < rounds; ++i) {
        sort_unique_rows(t);
        arity = relabel(t);
        if (order == ColumnOrder::free) reduce_columns(t, order, arity);
    }
}

std::string table_key(const StateTable& t, char tag) {
    const bool narrow = t.rows <= 256;
    std::string out;
    out.reserve(9 + t.cells.size() * (narrow ? 1 : 4));
    out.push_back(tag);
    out.append(reinterpret_cast<const char*>(&t.rows), sizeof t.rows);
    out.append(reinterpret_cast<const char*>(&t.cols), sizeof t.cols);
    if (narrow) {
        for (auto v : t.cells) out.push_back(static_cast<char>(v));
    } else {
        out.append(reinterpret_cast<const char*>(t.cells.data()), t.cells.size() * sizeof(std::uint32_t));
    }
    return out;
}

std::uint32_t column_arity(const StateTable& t, std::uint32_t c) {
    std::uint32_t m = 0;
    for (std::uint32_t r = 0; r < t.rows; ++r) m = std::max(m, t.at(r, c) + 1);
    return m;
}

std::vector<std::vector<std::uint32_t>> group_rows(const StateTable& t, std::uint32_t c) {
    std::vector<std::vector<std::uint32_t>> groups(column_arity(t, c));
    for (std::uint32_t r = 0; r < t.rows; ++r) groups[t.at(r, c)].push_back(r);
    return groups;
}

StateTable sub_table(const StateTable& t, std::span<const std::uint32_t> rows, std::span<const std::uint32_t> columns) {
    StateTable out;
    out.rows = static_cast<std::uint32_t>(rows.size());
    out.cols = static_cast<std::uint32_t>(columns.size());
    out.cells.resize(std::size_t(out.rows) * out.cols);
    std::uint32_t* dst = out.cells.data();
    for (auto r : rows) {
        const std::uint32_t* src = t.cells.data() + std::size_t(r) * t.cols;
        for (auto c : columns) *dst++ = src[c];
    }
    return out;
}

int floor_log2(std::uint64_t n) { return n == 0 ? -1 : 63 - std::countl_zero(n); }

}  // namespace sdl
