#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pohp/vertex_set.hpp"

namespace pohp {

using Weight = std::int64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CyclicOrder : Error {
  using Error::Error;
};
struct UnknownVertex : Error {
  using Error::Error;
};
struct NotAPermutation : Error {
  using Error::Error;
};
struct InvalidGraph : Error {
  using Error::Error;
};

/// Undirected simple graph over dense indices with opaque vertex names and
/// integer edge weights (default 0).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int add_vertex(std::string name);
  void add_edge(int u, int v, Weight w = 0);
  void set_weight(int u, int v, Weight w);

  int size() const { return static_cast<int>(names_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)].test(v); }
  const VertexSet& neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& neighbour_list(int v) const { return adj_list_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_list_[static_cast<std::size_t>(v)].size()); }

  /// Weight of edge uv; 0 for non-weighted edges. Requires adjacency.
  Weight weight(int u, int v) const;

  const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  std::optional<int> find(const std::string& name) const;
  int index_of(const std::string& name) const;  // throws UnknownVertex

  std::vector<std::pair<int, int>> edges() const;
  VertexSet empty_set() const { return VertexSet(static_cast<std::size_t>(size())); }
  VertexSet full_set() const;

 private:
  static std::uint64_t key(int u, int v);

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<VertexSet> adj_;
  std::vector<std::vector<int>> adj_list_;
  std::unordered_map<std::uint64_t, Weight> weights_;
  std::size_t edge_count_ = 0;
};

/// Strict partial order stored as transitively closed successor and
/// predecessor bitsets.
class PartialOrder {
 public:
  PartialOrder() = default;
  explicit PartialOrder(int n);

  int size() const { return static_cast<int>(succ_.size()); }
  bool less(int u, int v) const { return succ_[static_cast<std::size_t>(u)].test(v); }
  const VertexSet& succ(int v) const { return succ_[static_cast<std::size_t>(v)]; }
  const VertexSet& pred(int v) const { return pred_[static_cast<std::size_t>(v)]; }

  bool minimal(int v) const { return pred(v).none(); }
  bool maximal(int v) const { return succ(v).none(); }

  /// Union of Succ(v) over v in set.
  VertexSet succ_of(const VertexSet& s) const;
  VertexSet pred_of(const VertexSet& s) const;

  std::size_t pair_count() const;
  std::vector<std::pair<int, int>> pairs() const;

  friend PartialOrder close_order(int n, std::span<const std::pair<int, int>> constraints);

 private:
  std::vector<VertexSet> succ_;
  std::vector<VertexSet> pred_;
};

/// Transitive closure of the given precedence pairs. Throws CyclicOrder when
/// the closure would force some u ≺ u, UnknownVertex for out-of-range indices.
PartialOrder close_order(int n, std::span<const std::pair<int, int>> constraints);

enum class ProblemKind { path, cycle };
enum class Objective { decision, minimize };

struct Instance {
  Graph graph;
  PartialOrder order;
  ProblemKind kind = ProblemKind::path;
  Objective objective = Objective::minimize;

  int size() const { return graph.size(); }
};

struct Solution {
  std::vector<int> order;
  Weight weight = 0;
  ProblemKind kind = ProblemKind::path;
};

/// True iff no constrained pair appears reversed in seq. Throws
/// NotAPermutation if seq is not a permutation of 0..n-1.
bool is_linear_extension(std::span<const int> seq, const PartialOrder& order);

enum class Violation {
  none,
  not_a_permutation,
  not_adjacent,
  missing_closing_edge,
  order_violated,
  weight_mismatch,
  kind_mismatch,
};

struct ValidationReport {
  Violation violation = Violation::none;
  std::string message;
  std::vector<int> indices;  // offending positions in the sequence
  Weight weight = 0;         // recomputed weight (valid only when no structural violation)

  bool valid() const { return violation == Violation::none; }
};

/// Full end-to-end check of a proposed solution; violations are reported,
/// never thrown.
ValidationReport validate_solution(const Instance& inst, const Solution& sol);

/// Sum of traversed edge weights; for cycles includes the closing edge.
Weight tour_weight(const Graph& g, std::span<const int> seq, ProblemKind kind);

}  // namespace pohp
