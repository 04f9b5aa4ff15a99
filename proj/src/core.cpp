#include "pohp/core.hpp"

#include <algorithm>

namespace pohp {

Graph::Graph(int n) {
  for (int i = 0; i < n; ++i) add_vertex(std::to_string(i));
}

int Graph::add_vertex(std::string name) {
  if (index_.count(name)) throw InvalidGraph("duplicate vertex name: " + name);
  int id = size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  // capacities must agree, so grow every existing row
  std::size_t n = names_.size();
  for (auto& row : adj_) {
    VertexSet grown(n);
    row.for_each([&](int v) { grown.set(v); });
    row = std::move(grown);
  }
  adj_.emplace_back(n);
  adj_list_.emplace_back();
  return id;
}

std::uint64_t Graph::key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

void Graph::add_edge(int u, int v, Weight w) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw UnknownVertex("edge endpoint out of range");
  if (u == v) throw InvalidGraph("self-loop on " + name(u));
  if (adjacent(u, v)) throw InvalidGraph("duplicate edge " + name(u) + " " + name(v));
  adj_[static_cast<std::size_t>(u)].set(v);
  adj_[static_cast<std::size_t>(v)].set(u);
  adj_list_[static_cast<std::size_t>(u)].push_back(v);
  adj_list_[static_cast<std::size_t>(v)].push_back(u);
  if (w != 0) weights_[key(u, v)] = w;
  ++edge_count_;
}

void Graph::set_weight(int u, int v, Weight w) {
  if (!adjacent(u, v)) throw InvalidGraph("no edge " + name(u) + " " + name(v));
  if (w == 0)
    weights_.erase(key(u, v));
  else
    weights_[key(u, v)] = w;
}

Weight Graph::weight(int u, int v) const {
  auto it = weights_.find(key(u, v));
  return it == weights_.end() ? 0 : it->second;
}

std::optional<int> Graph::find(const std::string& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Graph::index_of(const std::string& n) const {
  auto r = find(n);
  if (!r) throw UnknownVertex("unknown vertex: " + n);
  return *r;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < size(); ++u)
    for (int v : adj_list_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet Graph::full_set() const {
  VertexSet s = empty_set();
  for (int v = 0; v < size(); ++v) s.set(v);
  return s;
}

PartialOrder::PartialOrder(int n)
    : succ_(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n))),
      pred_(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n))) {}

VertexSet PartialOrder::succ_of(const VertexSet& s) const {
  VertexSet out(s.capacity());
  s.for_each([&](int v) { out |= succ(v); });
  return out;
}

VertexSet PartialOrder::pred_of(const VertexSet& s) const {
  VertexSet out(s.capacity());
  s.for_each([&](int v) { out |= pred(v); });
  return out;
}

std::size_t PartialOrder::pair_count() const {
  std::size_t c = 0;
  for (const auto& s : succ_) c += s.count();
  return c;
}

std::vector<std::pair<int, int>> PartialOrder::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) succ(u).for_each([&](int v) { out.emplace_back(u, v); });
  return out;
}

PartialOrder close_order(int n, std::span<const std::pair<int, int>> constraints) {
  PartialOrder po(n);
  for (auto [u, v] : constraints) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw UnknownVertex("order pair out of range");
    if (u == v) throw CyclicOrder("reflexive constraint on vertex " + std::to_string(u));
    po.succ_[static_cast<std::size_t>(u)].set(v);
  }
  // Warshall on bit rows
  for (int k = 0; k < n; ++k) {
    const VertexSet row_k = po.succ_[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i)
      if (po.succ_[static_cast<std::size_t>(i)].test(k)) po.succ_[static_cast<std::size_t>(i)] |= row_k;
  }
  for (int i = 0; i < n; ++i)
    if (po.succ_[static_cast<std::size_t>(i)].test(i))
      throw CyclicOrder("precedence constraints contain a cycle through vertex " + std::to_string(i));
  for (int u = 0; u < n; ++u)
    po.succ_[static_cast<std::size_t>(u)].for_each([&](int v) { po.pred_[static_cast<std::size_t>(v)].set(u); });
  return po;
}

namespace {

bool is_permutation_of(std::span<const int> seq, int n) {
  if (static_cast<int>(seq.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : seq) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

}  // namespace

bool is_linear_extension(std::span<const int> seq, const PartialOrder& order) {
  int n = order.size();
  if (!is_permutation_of(seq, n)) throw NotAPermutation("sequence is not a permutation of the vertex set");
  VertexSet placed(static_cast<std::size_t>(n));
  for (int v : seq) {
    if (!order.pred(v).subset_of(placed)) return false;
    placed.set(v);
  }
  return true;
}

Weight tour_weight(const Graph& g, std::span<const int> seq, ProblemKind kind) {
  Weight w = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) w += g.weight(seq[i - 1], seq[i]);
  if (kind == ProblemKind::cycle && seq.size() >= 3) w += g.weight(seq.back(), seq.front());
  return w;
}

ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  ValidationReport r;
  const int n = inst.size();
  const auto& seq = sol.order;
  auto fail = [&](Violation v, std::string msg, std::vector<int> idx = {}) {
    r.violation = v;
    r.message = std::move(msg);
    r.indices = std::move(idx);
    return r;
  };
  if (sol.kind != inst.kind) return fail(Violation::kind_mismatch, "solution kind differs from instance kind");
  if (!is_permutation_of(seq, n)) return fail(Violation::not_a_permutation, "order is not a permutation of V");
  if (n == 0) return fail(Violation::not_a_permutation, "empty instance has no solution");
  if (inst.kind == ProblemKind::cycle && n < 3)
    return fail(Violation::missing_closing_edge, "a Hamiltonian cycle needs at least three vertices");
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!inst.graph.adjacent(seq[i - 1], seq[i]))
      return fail(Violation::not_adjacent,
                  "consecutive vertices " + inst.graph.name(seq[i - 1]) + " and " + inst.graph.name(seq[i]) +
                      " are not adjacent",
                  {static_cast<int>(i - 1), static_cast<int>(i)});
  if (inst.kind == ProblemKind::cycle && !inst.graph.adjacent(seq.back(), seq.front()))
    return fail(Violation::missing_closing_edge, "last and first vertex are not adjacent",
                {n - 1, 0});
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i) {
    int v = seq[static_cast<std::size_t>(i)];
    int bad = -1;
    inst.order.pred(v).for_each([&](int u) {
      if (bad < 0 && pos[static_cast<std::size_t>(u)] > i) bad = u;
    });
    if (bad >= 0)
      return fail(Violation::order_violated,
                  "precedence " + inst.graph.name(bad) + " < " + inst.graph.name(v) + " is violated",
                  {pos[static_cast<std::size_t>(bad)], i});
  }
  r.weight = tour_weight(inst.graph, seq, inst.kind);
  if (inst.objective == Objective::minimize && r.weight != sol.weight)
    return fail(Violation::weight_mismatch,
                "reported weight " + std::to_string(sol.weight) + " but tour weighs " + std::to_string(r.weight));
  return r;
}

}  // namespace pohp
