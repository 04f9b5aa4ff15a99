#include "pohp/segments.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace pohp::segments {

bool blocks_consistent(std::span<const BlockSummary> blocks) {
  std::vector<const BlockSummary*> ptrs;
  ptrs.reserve(blocks.size());
  for (const auto& b : blocks) ptrs.push_back(&b);
  return blocks_consistent(std::span<const BlockSummary* const>(ptrs));
}

bool blocks_consistent(std::span<const BlockSummary* const> blocks) {
  std::vector<const BlockSummary*> mids;
  int closes = 0;
  for (const BlockSummary* bp : blocks) {
    const auto& b = *bp;
    if (b.kind == Kind::close) {
      ++closes;
      if (!b.tail_succ.subset_of(b.tail) || !b.head_pred.subset_of(b.head)) return false;
    } else {
      if (!b.succ.meet_subset_of(b.pred, b.set)) return false;
      mids.push_back(bp);
    }
  }
  if (closes > 1) return false;
  const std::size_t k = mids.size();
  if (k < 2) return true;

  // Kahn over the mid-block precedence digraph
  std::vector<int> indeg(k, 0);
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && mids[a]->succ.intersects(mids[b]->set)) {
        out[a].push_back(b);
        ++indeg[b];
      }
  std::vector<std::size_t> ready;
  for (std::size_t a = 0; a < k; ++a)
    if (indeg[a] == 0) ready.push_back(a);
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto a = ready.back();
    ready.pop_back();
    ++seen;
    for (auto b : out[a])
      if (--indeg[b] == 0) ready.push_back(b);
  }
  return seen == k;
}

SegmentConfiguration SegmentConfiguration::empty(int n) {
  SegmentConfiguration c;
  c.placed = VertexSet(static_cast<std::size_t>(n));
  return c;
}

int SegmentConfiguration::close_index() const {
  for (std::size_t i = 0; i < fragments.size(); ++i)
    if (fragments[i].kind == Kind::close) return static_cast<int>(i);
  return -1;
}

BlockSummary summarize(const PartialOrder& order, const Fragment& f) {
  BlockSummary b;
  b.kind = f.kind;
  b.set = f.vertices;
  b.succ = order.succ_of(f.vertices);
  b.pred = order.pred_of(f.vertices);
  if (f.kind == Kind::close) {
    b.tail = f.tail;
    b.head = f.head;
    b.tail_succ = order.succ_of(f.tail);
    b.head_pred = order.pred_of(f.head);
  }
  return b;
}

BlockSummary solo_summary(const PartialOrder& order, int v) {
  BlockSummary b;
  const auto n = static_cast<std::size_t>(order.size());
  b.set = VertexSet(n);
  b.set.set(v);
  b.succ = order.succ(v);
  b.pred = order.pred(v);
  return b;
}

bool concat_summary(const BlockSummary& a, const BlockSummary& b, bool wrap, BlockSummary& out) {
  const bool ac = a.kind == Kind::close, bc = b.kind == Kind::close;
  if (ac && bc) return false;
  if (wrap && (ac || bc)) return false;
  if (!ac && !bc) {
    if (wrap) {
      out.kind = Kind::close;
      out.set = a.set | b.set;
      out.succ = a.succ | b.succ;
      out.pred = a.pred | b.pred;
      out.tail = a.set;
      out.tail_succ = a.succ;
      out.head = b.set;
      out.head_pred = b.pred;
      return true;
    }
    if (b.succ.intersects(a.set)) return false;
    out.kind = Kind::mid;
    out.set = a.set | b.set;
    out.succ = a.succ | b.succ;
    out.pred = a.pred | b.pred;
    out.tail = VertexSet();
    out.tail_succ = VertexSet();
    out.head = VertexSet();
    out.head_pred = VertexSet();
    return true;
  }
  if (bc) {
    // a joins the front of b's tail
    if (b.tail_succ.intersects(a.set)) return false;
    out.kind = Kind::close;
    out.set = a.set | b.set;
    out.succ = a.succ | b.succ;
    out.pred = a.pred | b.pred;
    out.tail = a.set | b.tail;
    out.tail_succ = a.succ | b.tail_succ;
    out.head = b.head;
    out.head_pred = b.head_pred;
    return true;
  }
  // b joins the back of a's head
  if (b.succ.intersects(a.head)) return false;
  out.kind = Kind::close;
  out.set = a.set | b.set;
  out.succ = a.succ | b.succ;
  out.pred = a.pred | b.pred;
  out.tail = a.tail;
  out.tail_succ = a.tail_succ;
  out.head = a.head | b.set;
  out.head_pred = a.head_pred | b.pred;
  return true;
}

namespace {

bool consistent(const PartialOrder& order, const SegmentConfiguration& c) {
  std::vector<BlockSummary> blocks;
  blocks.reserve(c.fragments.size());
  for (const auto& f : c.fragments) blocks.push_back(summarize(order, f));
  return blocks_consistent(blocks);
}

Fragment solo(int n, int w) {
  Fragment f;
  f.seq = {w};
  f.vertices = VertexSet(static_cast<std::size_t>(n));
  f.vertices.set(w);
  f.tail = f.head = VertexSet(static_cast<std::size_t>(n));
  return f;
}

void rebuild_parts(Fragment& f) {
  std::size_t n = f.vertices.capacity();
  f.tail = f.head = VertexSet(n);
  if (f.kind != Kind::close) return;
  for (std::size_t i = 0; i < f.seq.size(); ++i)
    (static_cast<int>(i) < f.split ? f.tail : f.head).set(f.seq[i]);
}

// No vertex of `later` precedes a vertex of `earlier`.
bool forward_pair(const PartialOrder& order, const VertexSet& earlier, const VertexSet& later) {
  return !order.succ_of(later).intersects(earlier);
}

void check_unplaced(const Instance& inst, const SegmentConfiguration& c, int w) {
  if (w < 0 || w >= inst.size()) throw UnknownVertex("vertex index out of range");
  if (c.placed.test(w)) throw AlreadyPlaced("vertex " + inst.graph.name(w) + " is already placed");
}

const Fragment& fragment_at(const SegmentConfiguration& c, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= c.fragments.size()) throw Error("fragment index out of range");
  return c.fragments[static_cast<std::size_t>(i)];
}

}  // namespace

std::optional<SegmentConfiguration> attach(const Instance& inst, const SegmentConfiguration& config, int w,
                                           Endpoint target) {
  check_unplaced(inst, config, w);
  const auto& po = inst.order;
  SegmentConfiguration out = config;
  out.placed.set(w);
  if (target.fragment < 0) {
    out.fragments.push_back(solo(inst.size(), w));
  } else {
    Fragment f = fragment_at(config, target.fragment);
    int t = target.end == End::back ? f.back() : f.front();
    if (!inst.graph.adjacent(t, w))
      throw NotAdjacent(inst.graph.name(w) + " is not adjacent to " + inst.graph.name(t));
    if (target.end == End::back) {
      const VertexSet& part = f.kind == Kind::close ? f.head : f.vertices;
      if (po.succ(w).intersects(part)) return std::nullopt;
      f.seq.push_back(w);
    } else {
      const VertexSet& part = f.kind == Kind::close ? f.tail : f.vertices;
      if (po.pred(w).intersects(part)) return std::nullopt;
      f.seq.insert(f.seq.begin(), w);
      if (f.kind == Kind::close) ++f.split;
    }
    f.vertices.set(w);
    rebuild_parts(f);
    out.weight += inst.graph.weight(t, w);
    out.fragments[static_cast<std::size_t>(target.fragment)] = std::move(f);
  }
  if (!consistent(po, out)) return std::nullopt;
  return out;
}

std::optional<SegmentConfiguration> merge(const Instance& inst, const SegmentConfiguration& config, int w,
                                          Endpoint left, Endpoint right) {
  check_unplaced(inst, config, w);
  if (left.fragment == right.fragment) throw Error("merge needs two distinct fragments");
  Fragment l = fragment_at(config, left.fragment);
  Fragment r = fragment_at(config, right.fragment);
  if (l.kind == Kind::close && r.kind == Kind::close) throw TwoCloseParts("both operands are close fragments");
  const auto& po = inst.order;

  auto orient = [&](Fragment& f, End wanted, End given) -> bool {
    if (f.trivial() || wanted == given) return true;
    if (f.kind == Kind::close) throw Error("a close fragment cannot be traversed reversed");
    if (po.pred_of(f.vertices).intersects(f.vertices)) return false;
    std::reverse(f.seq.begin(), f.seq.end());
    return true;
  };
  if (!orient(l, End::back, left.end) || !orient(r, End::front, right.end)) return std::nullopt;
  if (!inst.graph.adjacent(l.back(), w))
    throw NotAdjacent(inst.graph.name(w) + " is not adjacent to " + inst.graph.name(l.back()));
  if (!inst.graph.adjacent(w, r.front()))
    throw NotAdjacent(inst.graph.name(w) + " is not adjacent to " + inst.graph.name(r.front()));

  VertexSet wset(static_cast<std::size_t>(inst.size()));
  wset.set(w);
  Fragment m;
  m.vertices = l.vertices | r.vertices | wset;
  m.seq = l.seq;
  m.seq.push_back(w);
  m.seq.insert(m.seq.end(), r.seq.begin(), r.seq.end());
  if (l.kind == Kind::mid && r.kind == Kind::mid) {
    if (!forward_pair(po, l.vertices, wset) || !forward_pair(po, l.vertices | wset, r.vertices)) return std::nullopt;
    m.kind = Kind::mid;
  } else if (r.kind == Kind::close) {
    if (!forward_pair(po, l.vertices, wset) || !forward_pair(po, l.vertices | wset, r.tail)) return std::nullopt;
    m.kind = Kind::close;
    m.split = static_cast<int>(l.seq.size()) + 1 + r.split;
  } else {
    if (!forward_pair(po, l.head, wset) || !forward_pair(po, l.head | wset, r.vertices)) return std::nullopt;
    m.kind = Kind::close;
    m.split = l.split;
  }
  rebuild_parts(m);

  SegmentConfiguration out;
  out.placed = config.placed | wset;
  out.weight = config.weight + inst.graph.weight(l.back(), w) + inst.graph.weight(w, r.front());
  for (std::size_t i = 0; i < config.fragments.size(); ++i)
    if (static_cast<int>(i) != left.fragment && static_cast<int>(i) != right.fragment)
      out.fragments.push_back(config.fragments[i]);
  out.fragments.push_back(std::move(m));
  if (!consistent(po, out)) return std::nullopt;
  return out;
}

std::optional<SegmentConfiguration> designate_wrap(const Instance& inst, const SegmentConfiguration& config,
                                                   int fragment, int j) {
  const Fragment& f0 = fragment_at(config, fragment);
  if (f0.kind != Kind::mid) throw Error("only a mid fragment can receive the wrap");
  if (config.close_index() >= 0) throw CloseAlreadyExists("configuration already has a close fragment");
  if (j < 1 || j > static_cast<int>(f0.seq.size())) throw Error("wrap position out of range");
  SegmentConfiguration out = config;
  Fragment& f = out.fragments[static_cast<std::size_t>(fragment)];
  f.kind = Kind::close;
  f.split = j;
  rebuild_parts(f);
  if (!consistent(inst.order, out)) return std::nullopt;
  return out;
}

bool order_feasible(const PartialOrder& order, const SegmentConfiguration& config) {
  const int n = order.size();
  if (n > 12) throw TooLarge("reference predicate is limited to 12 vertices");

  std::vector<std::vector<int>> units;
  std::vector<int> head, tail;
  VertexSet covered(static_cast<std::size_t>(n));
  for (const auto& f : config.fragments) {
    covered |= f.vertices;
    if (f.kind == Kind::close) {
      tail.assign(f.seq.begin(), f.seq.begin() + f.split);
      head.assign(f.seq.begin() + f.split, f.seq.end());
    } else {
      units.push_back(f.seq);
    }
  }
  for (int v = 0; v < n; ++v)
    if (!covered.test(v)) units.push_back({v});

  auto mask_of = [](const std::vector<int>& seq) {
    std::uint32_t m = 0;
    for (int v : seq) m |= 1U << v;
    return m;
  };
  std::vector<std::uint32_t> pred_mask(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) order.pred(v).for_each([&](int u) { pred_mask[static_cast<std::size_t>(v)] |= 1U << u; });

  // Places seq after `placed`; returns the new mask or nullopt on a violation.
  auto place = [&](std::uint32_t placed, const std::vector<int>& seq) -> std::optional<std::uint32_t> {
    for (int v : seq) {
      if ((pred_mask[static_cast<std::size_t>(v)] & ~placed) != 0) return std::nullopt;
      placed |= 1U << v;
    }
    return placed;
  };

  auto start = place(0, head);
  if (!start) return false;
  std::uint32_t all_units = 0;
  for (const auto& u : units) all_units |= mask_of(u);
  const std::uint32_t goal = *start | all_units;

  std::unordered_set<std::uint32_t> dead;
  auto dfs = [&](auto&& self, std::uint32_t placed) -> bool {
    if (placed == goal) return place(placed, tail).has_value();
    if (dead.count(placed)) return false;
    for (const auto& u : units) {
      if (placed & (1U << u.front())) continue;
      if (auto next = place(placed, u); next && self(self, *next)) return true;
    }
    dead.insert(placed);
    return false;
  };
  return dfs(dfs, *start);
}

Weight recompute_weight(const Graph& g, const SegmentConfiguration& config) {
  Weight w = 0;
  for (const auto& f : config.fragments)
    for (std::size_t i = 1; i < f.seq.size(); ++i) w += g.weight(f.seq[i - 1], f.seq[i]);
  return w;
}

}  // namespace pohp::segments
