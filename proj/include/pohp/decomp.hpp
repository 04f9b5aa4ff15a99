#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pohp/core.hpp"

namespace pohp::decomp {

struct BudgetExceeded : Error {
  using Error::Error;
};
struct WidthTooLarge : Error {
  using Error::Error;
};
struct SmallInstance : Error {
  using Error::Error;
};
struct DecompositionInvalid : Error {
  using Error::Error;
};

struct PathDecomposition {
  std::vector<VertexSet> bags;
  int width() const;
};

/// Bags of identical size; step i > 0 forgets forgotten[i] from bag i-1 and
/// introduces introduced[i]. Entries at index 0 are -1.
struct NormalPathDecomposition {
  std::vector<VertexSet> bags;
  std::vector<int> forgotten, introduced;
  int width() const;
};

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<int> parent;  // -1 at the root
  int root = 0;
  int width() const;
};

enum class NodeKind { leaf, exchange, join };

struct TreeNode {
  NodeKind kind = NodeKind::leaf;
  VertexSet bag;
  std::vector<int> children;
  int forgotten = -1;   // exchange: vertex of the child bag dropped here
  int introduced = -1;  // exchange: vertex new in this bag
};

struct NormalTreeDecomposition {
  std::vector<TreeNode> nodes;
  int root = 0;
  int width() const;
  std::vector<int> postorder() const;
  TreeDecomposition plain() const;
};

struct Check {
  bool ok = true;
  int width = -1;
  std::string violation;
};

Check validate(const PathDecomposition& d, const Graph& g);
Check validate(const TreeDecomposition& d, const Graph& g);
Check validate(const NormalPathDecomposition& d, const Graph& g);
Check validate(const NormalTreeDecomposition& d, const Graph& g);

struct SearchBudget {
  std::uint64_t nodes = 5'000'000;
};

/// Exact: nullopt iff the pathwidth exceeds k. Throws BudgetExceeded.
std::optional<PathDecomposition> find_path_decomposition(const Graph& g, int k, SearchBudget budget = {});

/// Exact: nullopt iff the treewidth exceeds k. Throws BudgetExceeded.
std::optional<TreeDecomposition> find_tree_decomposition(const Graph& g, int k, SearchBudget budget = {});

/// Exact widths by the same searches (k grows until success).
int pathwidth(const Graph& g, SearchBudget budget = {});
int treewidth(const Graph& g, SearchBudget budget = {});

/// Strict form with bags of exactly width+1 = 5 vertices (bag_size overrides).
NormalPathDecomposition normalize_path(const PathDecomposition& d, const Graph& g, int bag_size = 5);

/// One bag holding all n vertices: the normal path form of instances too
/// small for 5-vertex bags.
NormalPathDecomposition single_bag(int n);

/// A single leaf holding all n vertices, for instances too small for
/// 4-vertex bags.
NormalTreeDecomposition single_leaf(int n);

/// Strict form with bags of exactly 4 vertices (bag_size overrides).
NormalTreeDecomposition normalize_tree(const TreeDecomposition& d, const Graph& g, int bag_size = 4);

/// Every bag gains vertex v (which must be new); used by the path-via-cycle wrappers.
PathDecomposition with_vertex(const PathDecomposition& d, int v, std::size_t n);
TreeDecomposition with_vertex(const TreeDecomposition& d, int v, std::size_t n);

}  // namespace pohp::decomp
