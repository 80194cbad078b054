#pragma once

#include "sdl/concept_class.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sdl {

/// Dense rows x cols label matrix: the version space projected onto the
/// active points. All search engines work on this representation.
struct StateTable {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint32_t> cells;  // row-major

    std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return cells[std::size_t(r) * cols + c]; }
    std::span<const std::uint32_t> row(std::uint32_t r) const {
        return {cells.data() + std::size_t(r) * cols, cols};
    }
};

/// How columns may be rearranged while canonicalizing.
///   free  - point order is the learner's/adversary's choice: columns are sorted and all
///           duplicate columns collapse.
///   fixed - columns are a prediction sequence: order is kept, a column equal to an
///           earlier one is dropped (it is forced once the earlier one is labelled).
enum class ColumnOrder : std::uint8_t { free, fixed };

/// Rows = members of `vs` (ascending), columns = `columns` in the given order.
StateTable make_table(const ConceptClass& cls, const VersionSpace& vs, std::span<const PointId> columns);

/// Applies the value-preserving reductions in place: duplicate rows removed, forced
/// columns removed, duplicate columns collapsed, labels renamed per column by first
/// appearance, rows (and in free mode columns) sorted.
void canonicalize(StateTable& t, ColumnOrder order);

/// Exact byte encoding of a canonical table, tagged with `tag`.
std::string table_key(const StateTable& t, char tag);

/// Number of distinct labels in column `c`; valid after canonicalize (labels are dense).
std::uint32_t column_arity(const StateTable& t, std::uint32_t c);

/// Row indices grouped by their label in column `c`, group g holding label g.
/// Labels must be dense (canonical table).
std::vector<std::vector<std::uint32_t>> group_rows(const StateTable& t, std::uint32_t c);

/// Rows `rows` of `t` with columns `columns` (in that order).
StateTable sub_table(const StateTable& t, std::span<const std::uint32_t> rows,
                     std::span<const std::uint32_t> columns);

/// floor(log2(n)) for n >= 1.
int floor_log2(std::uint64_t n);

}  // namespace sdl
