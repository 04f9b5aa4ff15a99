#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pohp/io.hpp"
#include "pohp/oracle.hpp"

namespace pohp::harness {

enum class Method { automatic, pw, tw, oracle };
std::optional<Method> parse_method(std::string_view name);

/// Decomposition unusable by the chosen solver (too wide, wrong kind, or the
/// width search ran out of budget). Reported as status unknown.
struct Unsupported : Error {
  using Error::Error;
};

struct SolveOptions {
  Method method = Method::automatic;
  std::optional<io::Decomposition> decomposition;
  oracle::Limits limits;
  decomp::SearchBudget search;
};

struct SolveOutcome {
  io::SolutionFile file;
  Method used = Method::oracle;
  std::string note;  // why the result is unknown, if it is
};

/// automatic: the oracle for n <= 8, otherwise the widest admissible
/// decomposition (cycle: pathwidth 4, then treewidth 3; path: pathwidth 3,
/// then treewidth 2). Throws decomp::DecompositionInvalid when a supplied
/// decomposition does not fit the graph.
SolveOutcome solve(const Instance& inst, const SolveOptions& opt);

/// Width-k decomposition of the requested kind, or nullopt when none exists.
/// Throws decomp::BudgetExceeded.
std::optional<io::Decomposition> decompose(const Graph& g, int k, bool tree, decomp::SearchBudget budget = {});

}  // namespace pohp::harness
