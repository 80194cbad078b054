#pragma once

#include "sdl/state_table.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sdl {

/// Splits the columns of a canonical table into blocks such that the row set is
/// the Cartesian product of its projections onto the blocks. Blocks are minimal
/// as far as the search got within `max_checks` candidate tests; giving up only
/// coarsens the answer. Self-directed mistake bounds add over such blocks.
std::vector<std::vector<std::uint32_t>> product_factors(const StateTable& t, std::size_t max_checks = 200'000);

/// Number of distinct rows of `t` restricted to `columns`.
std::size_t distinct_projections(const StateTable& t, const std::vector<std::uint32_t>& columns);

}  // namespace sdl
