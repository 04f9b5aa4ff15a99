#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pohp/core.hpp"

namespace pohp::forge {

struct MalformedHeader : Error {
  using Error::Error;
};
struct LiteralOutOfRange : Error {
  using Error::Error;
};
struct ClauseArity : Error {
  using Error::Error;
};
struct NotMonotone : Error {
  using Error::Error;
};
struct UnsatisfiedAssignment : Error {
  using Error::Error;
};

/// Literals are signed 1-based variable indices.
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
  std::optional<int> budget;  // weighted reductions: at most this many true variables

  bool three_sat() const;        // every clause has exactly 3 literals
  bool monotone_two_sat() const;  // every clause has exactly 2 positive literals
};

/// DIMACS CNF ("c" comments, one "p cnf n m" header, 0-terminated clauses).
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);

/// assignment[i] is the value of variable i + 1.
bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);

// ---------------------------------------------------------------- proper interval instances

struct PiInstance {
  Instance inst;
  std::vector<int> sigma;  // construction ordering (proper interval ordering)
};

PiInstance gen_pi_path(const CnfFormula& f);
PiInstance gen_pi_cycle(const CnfFormula& f);

struct IntervalCheck {
  bool ok = false;
  int bandwidth = 0;
  std::string violation;
};

/// Umbrella property: for every edge v_i v_k and i < j < k, both v_i v_j and
/// v_j v_k are edges. Reports the bandwidth of the ordering. Throws
/// NotAPermutation.
IntervalCheck check_proper_interval_ordering(const Graph& g, std::span<const int> ordering);

// ---------------------------------------------------------------- grid instances

struct GridInstance {
  int width = 0;
  int height = 0;
  std::vector<std::string> column_gadget;  // gadget owning column c + 1, e.g. "S", "X2", "C1", "T"
  Instance inst;
  std::optional<Weight> budget;

  /// Vertex "r.c" (1-based row from the top, 1-based column).
  int vertex(int row, int col) const { return (row - 1) * width + (col - 1); }
};

GridInstance gen_grid7_path(const CnfFormula& f);
GridInstance gen_grid9_cycle(const CnfFormula& f);
GridInstance gen_grid5_minpath(const CnfFormula& f, int k);
GridInstance gen_grid6_mincycle(const CnfFormula& f, int k);

// ---------------------------------------------------------------- reductions as a family

enum class ReductionId { pi_path, pi_cycle, grid7_path, grid9_cycle, grid5_minpath, grid6_mincycle };

std::string to_string(ReductionId id);
std::optional<ReductionId> parse_reduction(std::string_view name);
const std::vector<ReductionId>& all_reductions();
bool is_weighted(ReductionId id);

/// The instance the generator for `id` produces (budget from f.budget, else
/// the variable count).
Instance generate(ReductionId id, const CnfFormula& f);

/// A solution of generate(id, f) built from a satisfying assignment. Throws
/// UnsatisfiedAssignment, and Error if routing fails.
Solution build_witness(ReductionId id, const CnfFormula& f, const std::vector<bool>& assignment);

// ---------------------------------------------------------------- generic reductions

using Solver = std::function<std::optional<Solution>(const Instance&)>;

/// Cycle instance solved through path instances π_{x,y}, one per edge xy
/// with x π-minimal and y π-maximal (both orientations).
std::optional<Solution> cycle_via_path(const Instance& inst, const Solver& path_solver);

/// Path instance solved as a cycle instance with a zero-weight universal
/// vertex placed last in π.
std::optional<Solution> path_via_cycle(const Instance& inst, const Solver& cycle_solver);

}  // namespace pohp::forge
