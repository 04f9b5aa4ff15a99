#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pohp/core.hpp"
#include "pohp/decomp.hpp"
#include "pohp/segments.hpp"

namespace pohp::pw {

enum class Role : std::uint8_t { start, end, interior, solo };
enum class Form : std::uint8_t { one_path, two_paths, cycle, other };

/// Bag-local part of a signature over a bag listed in ascending vertex
/// order. Path ids are 1-based and numbered by first occurrence in the bag.
struct LocalSignature {
  std::vector<int> bag;
  std::vector<std::uint8_t> path;
  std::vector<Role> role;
  std::array<segments::Kind, 3> kind{segments::Kind::mid, segments::Kind::mid, segments::Kind::mid};
  Form form = Form::other;

  std::uint64_t code() const;  // injective for bags of at most 8 vertices
  int path_count() const;
  int nontrivial_count() const;
};

struct PwSignature {
  LocalSignature local;
  int ell = 0;  // 1-based origin bag; 0 unless two_paths
  std::optional<LocalSignature> tau;
};

/// Valid local signatures of one bag (i is 1-based, k the bag count).
std::vector<LocalSignature> local_signatures(const std::vector<int>& bag, bool last_bag);

/// All valid signatures of bag i of d, including origin data.
std::vector<PwSignature> enumerate_signatures(const decomp::NormalPathDecomposition& d, int i);
std::uint64_t count_signatures(const decomp::NormalPathDecomposition& d, int i);

struct Options {
  bool measure = false;  // record every transition for the table statistics
};

struct Stats {
  std::uint64_t states = 0;        // table entries over all bags
  std::uint64_t max_row = 0;
  std::uint64_t transitions = 0;
  // measured only with Options::measure
  std::uint64_t mapping_conflicts = 0;        // (bag, signature) reached with two vertex→path maps
  std::uint64_t predecessor_conflicts = 0;    // two-path entries with ℓ < i fed by predecessors with different paths or roles
  std::uint64_t kind_only_predecessors = 0;   // ... fed by predecessors differing only in mid/close labels
  std::uint64_t forgotten_terminal = 0;       // forgotten vertex was a terminal in a live entry
  std::uint64_t distinct_mappings = 0;        // over entries that extend to a solution
  std::uint64_t distinct_mappings_raw = 0;    // over all entries
  std::uint64_t useful_states = 0;
};

struct Result {
  std::optional<Solution> solution;
  Stats stats;
};

/// One bag-by-bag table. Rows are computed in place; the previous row is
/// always available as entries of the current bag.
class Table {
 public:
  struct Entry {
    PwSignature signature;
    Weight weight = 0;
    VertexSet placed;
    bool cycle = false;
  };

  Table(const Instance& inst, Options opt = {});
  ~Table();
  Table(Table&&) noexcept;

  /// First bag: its vertices are introduced one at a time.
  void start(const std::vector<int>& bag_vertices, int next_forget);
  /// Forget u (must be interior), introduce w. next_forget is the vertex the
  /// following step forgets, or -1 at the last bag.
  void step(int u, int w, int next_forget);

  std::vector<Entry> entries() const;
  std::size_t size() const;
  std::optional<Solution> best_cycle() const;
  Stats finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Minimum-weight π-extending Hamiltonian cycle over a normal path
/// decomposition with 5-vertex bags. Throws DecompositionInvalid.
Result solve_cycle_pw4(const Instance& inst, const decomp::NormalPathDecomposition& d, Options opt = {});

/// Minimum-weight π-extending Hamiltonian path given a path decomposition
/// of G of width at most 3 (universal vertex reduction).
Result solve_path_pw3(const Instance& inst, const decomp::PathDecomposition& d, Options opt = {});

}  // namespace pohp::pw
