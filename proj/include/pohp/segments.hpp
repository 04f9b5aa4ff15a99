#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pohp/core.hpp"

namespace pohp::segments {

struct NotAdjacent : Error {
  using Error::Error;
};
struct AlreadyPlaced : Error {
  using Error::Error;
};
struct TwoCloseParts : Error {
  using Error::Error;
};
struct CloseAlreadyExists : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};

enum class Kind { mid, close };

/// Set-level view of one fragment. For a mid block only `set`, `succ`,
/// `pred` are meaningful; a close block additionally carries its tail (the
/// λ-suffix) and head (the λ-prefix) with their successor/predecessor unions.
struct BlockSummary {
  Kind kind = Kind::mid;
  VertexSet set, succ, pred;
  VertexSet tail, tail_succ;
  VertexSet head, head_pred;
};

/// Exact consistency of a family of internally forward blocks: true iff
/// the unplaced vertices can be interleaved with the blocks into a linear
/// extension (mid blocks contiguous, close head first and tail last).
///
/// Conditions: no outsider between two members of a mid block; the
/// precedence digraph over mid blocks is acyclic; a close tail has no
/// successors outside itself and a close head no predecessors outside itself.
bool blocks_consistent(std::span<const BlockSummary> blocks);
bool blocks_consistent(std::span<const BlockSummary* const> blocks);

/// Summary of the fragment obtained by traversing a, then the edge from
/// a's back to b's front, then b. `wrap` marks that edge as the one from
/// λ's last vertex to its first. False when the result is not internally
/// forward or would carry two wraps.
bool concat_summary(const BlockSummary& a, const BlockSummary& b, bool wrap, BlockSummary& out);

/// Summary of a single-vertex mid fragment.
BlockSummary solo_summary(const PartialOrder& order, int v);

/// Oriented path fragment of a partial solution.
struct Fragment {
  Kind kind = Kind::mid;
  std::vector<int> seq;
  int split = 0;  // close only: seq[0..split) is the tail, the rest the head
  VertexSet vertices, tail, head;

  int front() const { return seq.front(); }
  int back() const { return seq.back(); }
  bool trivial() const { return seq.size() == 1; }
};

struct SegmentConfiguration {
  std::vector<Fragment> fragments;
  Weight weight = 0;
  VertexSet placed;

  static SegmentConfiguration empty(int n);
  int close_index() const;  // -1 if none
};

enum class End { front, back };

struct Endpoint {
  int fragment = -1;  // -1 selects the solo target in attach
  End end = End::back;
};

/// Adds w as a solo fragment (target.fragment == -1) or at one end of an
/// existing fragment. nullopt when the result contradicts π.
std::optional<SegmentConfiguration> attach(const Instance& inst, const SegmentConfiguration& config, int w,
                                           Endpoint target);

/// Bridges two fragments through the unplaced vertex w: left, w, right.
/// A mid operand whose named end is on the wrong side is traversed reversed.
std::optional<SegmentConfiguration> merge(const Instance& inst, const SegmentConfiguration& config, int w,
                                          Endpoint left, Endpoint right);

/// Turns a mid fragment into the close fragment. The edge at position j
/// joins seq[j-1] and seq[j]; tail = seq[0..j), head = seq[j..). j equal to
/// the length yields an empty head.
std::optional<SegmentConfiguration> designate_wrap(const Instance& inst, const SegmentConfiguration& config,
                                                   int fragment, int j);

/// Set summary of a fragment.
BlockSummary summarize(const PartialOrder& order, const Fragment& f);

/// Reference predicate by exhaustive search over interleavings; ignores
/// graph adjacency. Throws TooLarge for more than 12 vertices.
bool order_feasible(const PartialOrder& order, const SegmentConfiguration& config);

/// Sum of weights over consecutive fragment vertices.
Weight recompute_weight(const Graph& g, const SegmentConfiguration& config);

}  // namespace pohp::segments
