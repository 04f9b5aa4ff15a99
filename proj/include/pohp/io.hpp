#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pohp/core.hpp"
#include "pohp/decomp.hpp"

namespace pohp::io {

/// Input error with the 1-based line it was found on (0 when not line-bound).
struct ParseError : Error {
  ParseError(int line, const std::string& what);
  int line;
};

// Instance files:
//   pohi 1
//   problem path|cycle
//   v <id>
//   e <u> <v> [<weight>]
//   p <u> <v>          (u precedes v)
// '#' starts a comment. Vertices must be declared before use.
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst);

// Decomposition files:
//   pohd 1
//   kind path|tree
//   bag <bagid> <v>...
//   edge <parent> <child>   (tree only)
//   root <bagid>            (tree only)
// Path bags are taken in listed order.
using Decomposition = std::variant<decomp::PathDecomposition, decomp::TreeDecomposition>;
Decomposition parse_decomposition(std::string_view text, const Graph& g);
std::string emit_decomposition(const Decomposition& d, const Graph& g);

enum class Status { feasible, infeasible, unknown };
std::string to_string(Status s);

// Solution files:
//   status feasible|infeasible|unknown
//   weight <int>
//   order <v1> <v2> ...
struct SolutionFile {
  Status status = Status::unknown;
  std::optional<Weight> weight;
  std::vector<int> order;
};
SolutionFile parse_solution(std::string_view text, const Graph& g);
std::string emit_solution(const SolutionFile& s, const Graph& g);

}  // namespace pohp::io
