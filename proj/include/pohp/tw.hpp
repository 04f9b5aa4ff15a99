#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pohp/core.hpp"
#include "pohp/decomp.hpp"
#include "pohp/pw.hpp"

namespace pohp::tw {

enum class Side : std::uint8_t { left, right };

/// Bag-local signature over a 4-vertex bag plus the side bit of two-path
/// entries created at a join.
struct TwSignature {
  pw::LocalSignature local;
  std::optional<Side> d;
};

struct Options {
  bool measure = false;
};

struct Stats {
  std::uint64_t states = 0;
  std::uint64_t max_row = 0;
  std::uint64_t transitions = 0;
  // measured only with Options::measure
  std::uint64_t mapping_conflicts = 0;      // (node, signature) reached with two vertex→path maps
  std::uint64_t two_path_misplaced = 0;     // two-path entries at nodes whose parent is not a join
  std::uint64_t forgotten_terminal = 0;
  std::uint64_t distinct_mappings = 0;      // over entries that extend to a solution
  std::uint64_t distinct_mappings_raw = 0;
  std::uint64_t useful_states = 0;
};

struct Result {
  std::optional<Solution> solution;
  Stats stats;
};

/// What the parent of a node needs from its row.
struct RowFilter {
  int parent_forgets = -1;   // exchange parent: this vertex must be interior
  bool parent_join = false;
  bool root = false;         // keep complete cycles only
};

/// Rows of a bottom-up evaluation, addressed by the handle each step returns.
class Table {
 public:
  struct Entry {
    TwSignature signature;
    Weight weight = 0;
    VertexSet placed;
    bool cycle = false;
  };

  Table(const Instance& inst, Options opt = {});
  ~Table();
  Table(Table&&) noexcept;

  int leaf(const std::vector<int>& bag_vertices, RowFilter f);
  int exchange(int child, int u, int w, RowFilter f);
  int join(int left, int right, RowFilter f);

  std::vector<Entry> entries(int row) const;
  std::size_t size(int row) const;
  std::optional<Solution> best_cycle(int row) const;
  Stats finish(int root);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Minimum-weight π-extending Hamiltonian cycle over a normal tree
/// decomposition with 4-vertex bags. Throws DecompositionInvalid.
Result solve_cycle_tw3(const Instance& inst, const decomp::NormalTreeDecomposition& d, Options opt = {});

/// Minimum-weight π-extending Hamiltonian path given a tree decomposition
/// of G of width at most 2 (universal vertex reduction).
Result solve_path_tw2(const Instance& inst, const decomp::TreeDecomposition& d, Options opt = {});

}  // namespace pohp::tw
