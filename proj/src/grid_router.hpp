#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pohp/core.hpp"

namespace pohp::forge::detail {

using Cell = std::pair<int, int>;  // 0-based (row, col)

struct RouteRequest {
  int height = 0;
  int width = 0;
  std::vector<std::vector<char>> free;  // free[r][c]: cell must be visited
  Cell start;
  std::vector<std::vector<char>> end;   // cells allowed as the far end; empty = any
  // Phases 0..phases-1 occur along the path in increasing order, each one
  // non-empty. allowed[r][c] is a bitmask of the phases cell (r, c) may
  // take; empty = any. gate[k], when set, is the last cell of phase k.
  int phases = 1;
  std::vector<std::vector<std::uint8_t>> allowed;
  std::array<std::optional<Cell>, 2> gate;
  std::function<Weight(Cell, Cell)> weight;
};

/// Minimum-weight Hamiltonian path of the free cells starting at `start`,
/// by a column-major frontier DP over plug labels. Empty when none exists.
/// At most 9 rows and 3 phases.
std::optional<std::vector<Cell>> route(const RouteRequest& req);

}  // namespace pohp::forge::detail
