#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pohp/core.hpp"

namespace pohp::oracle {

struct Limits {
  std::uint64_t node_cap = 100'000'000;
  double time_cap_seconds = 60.0;
};

enum class Status { feasible, infeasible, unknown };

struct Result {
  Status status = Status::infeasible;
  std::optional<Solution> solution;
  std::uint64_t nodes = 0;
};

/// Depth-first search over π-respecting sequences. Exact optimum for
/// Objective::minimize, first hit for Objective::decision; unknown only when
/// a cap is reached before the search completes.
Result oracle_solve(const Instance& inst, Limits limits = {});

/// Calls `visit` for every valid solution sequence (both directions and all
/// π-admissible starting points of a cycle count separately). Returns the count.
std::uint64_t enumerate_solutions(const Instance& inst, const std::function<void(const std::vector<int>&)>& visit = {});

}  // namespace pohp::oracle
