#include "pohp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace pohp::oracle {

namespace {

struct Search {
  const Instance& inst;
  const Graph& g;
  const PartialOrder& po;
  int n;
  bool cycle;
  bool minimize;
  Limits limits;
  Weight min_edge = 0;  // min(0, smallest weight), for the bound
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::vector<int> seq;
  VertexSet placed;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::optional<Solution> best;
  const std::function<void(const std::vector<int>&)>* visit = nullptr;
  std::uint64_t count = 0;

  // (placed mask, last vertex) -> smallest weight it was reached with; only
  // for n <= 64 and outside enumeration
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, int>& k) const { return boost::hash_value(k); }
  };
  std::unordered_map<std::pair<std::uint64_t, int>, Weight, KeyHash> seen;
  static constexpr std::size_t kMemoCap = 4'000'000;
  std::uint64_t mask = 0;

  Search(const Instance& i, Limits l)
      : inst(i), g(i.graph), po(i.order), n(i.size()), cycle(i.kind == ProblemKind::cycle),
        minimize(i.objective == Objective::minimize), limits(l), placed(static_cast<std::size_t>(n)) {
    for (auto [u, v] : g.edges()) min_edge = std::min(min_edge, g.weight(u, v));
  }

  bool tick() {
    if (aborted) return false;
    ++nodes;
    if (nodes > limits.node_cap) aborted = true;
    if ((nodes & 4095) == 0) {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (secs > limits.time_cap_seconds) aborted = true;
    }
    return !aborted;
  }

  bool available(int v) const { return !placed.test(v) && po.pred(v).subset_of(placed); }

  // The unplaced vertices plus the current end must still admit a
  // Hamiltonian path from that end: connected, and every unplaced vertex has
  // two usable neighbours except for at most one far end (for a cycle the
  // far end's second neighbour is the start).
  bool hopeless() const {
    const int last = seq.back();
    VertexSet open = g.full_set() - placed;
    if (open.none()) return false;
    VertexSet usable = open;
    usable.set(last);
    int ends = 0;
    bool dead = false;
    open.for_each([&](int v) {
      if (dead) return;
      VertexSet nb = g.neighbours(v) & usable;
      int d = static_cast<int>(nb.count());
      if (cycle && g.adjacent(v, seq.front()) && v != last) ++d;
      if (d == 0 || (d == 1 && ++ends > 1)) dead = true;
    });
    if (dead) return true;
    // connectivity by flooding from the end
    VertexSet reached(static_cast<std::size_t>(n)), frontier(static_cast<std::size_t>(n));
    reached.set(last);
    frontier.set(last);
    while (frontier.any()) {
      VertexSet next(static_cast<std::size_t>(n));
      frontier.for_each([&](int v) { next |= g.neighbours(v); });
      next &= usable;
      next -= reached;
      reached |= next;
      frontier = std::move(next);
    }
    return !usable.subset_of(reached);
  }

  // true when an equal or lighter visit of the same state was already made
  bool dominated(Weight w) {
    if (visit || n > 64) return false;
    const auto key = std::make_pair(mask, seq.back());
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (it->second <= w) return true;
      it->second = w;
      return false;
    }
    if (seen.size() < kMemoCap) seen.emplace(key, w);
    return false;
  }

  void finish(Weight w) {
    if (cycle) {
      if (!g.adjacent(seq.back(), seq.front())) return;
      w += g.weight(seq.back(), seq.front());
    }
    if (visit) {
      ++count;
      if (*visit) (*visit)(seq);
      return;
    }
    if (!best || w < best->weight) best = Solution{seq, w, inst.kind};
  }

  // returns true to stop the whole search
  bool dfs(Weight w) {
    if (!tick()) return true;
    if (static_cast<int>(seq.size()) == n) {
      finish(w);
      return !visit && !minimize && best.has_value();
    }
    if (!visit && minimize && best) {
      Weight left = static_cast<Weight>(n - static_cast<int>(seq.size())) - (cycle ? 0 : 1) + 1;
      if (w + left * min_edge >= best->weight) return false;
    }
    if (dominated(w) || hopeless()) return false;
    const int last = seq.back();
    for (int v : g.neighbour_list(last)) {
      if (!available(v)) continue;
      seq.push_back(v);
      placed.set(v);
      if (n <= 64) mask |= 1ull << v;
      bool stop = dfs(w + g.weight(last, v));
      if (n <= 64) mask &= ~(1ull << v);
      placed.reset(v);
      seq.pop_back();
      if (stop) return true;
    }
    return false;
  }

  void run() {
    if (n == 0) return;
    if (cycle && n < 3) return;
    std::vector<int> starts;
    for (int v = 0; v < n; ++v)
      if (po.minimal(v)) starts.push_back(v);
    for (int s : starts) {
      seq = {s};
      placed.set(s);
      seen.clear();  // cycle closure depends on the start
      mask = n <= 64 ? 1ull << s : 0;
      bool stop = dfs(0);
      placed.reset(s);
      if (stop) break;
    }
  }
};

}  // namespace

Result oracle_solve(const Instance& inst, Limits limits) {
  Search s(inst, limits);
  s.run();
  Result r;
  r.nodes = s.nodes;
  if (s.best && !(s.aborted && inst.objective == Objective::minimize)) {
    r.status = Status::feasible;
    r.solution = s.best;
  } else if (s.aborted) {
    r.status = Status::unknown;
    r.solution = s.best;
  } else {
    r.status = Status::infeasible;
  }
  return r;
}

std::uint64_t enumerate_solutions(const Instance& inst, const std::function<void(const std::vector<int>&)>& visit) {
  Limits unlimited{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<double>::infinity()};
  Search s(inst, unlimited);
  s.visit = &visit;
  s.run();
  return s.count;
}

}  // namespace pohp::oracle
