#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pohp/core.hpp"
#include "pohp/decomp.hpp"

namespace testing_helpers {

struct WindowInstance {
  pohp::Instance inst;
  pohp::decomp::NormalPathDecomposition decomposition;  // bags of `bag_size` vertices
};

// Random π consistent with a hidden linear order; closure density stays at or below `density`.
inline pohp::PartialOrder random_order(std::mt19937& rng, int n, double density) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  const double total = n < 2 ? 1.0 : n * (n - 1) / 2.0;
  std::vector<std::pair<int, int>> pairs;
  auto order = pohp::close_order(n, pairs);
  for (int tries = 0; tries < 4 * n && n >= 2; ++tries) {
    int i = static_cast<int>(rng() % static_cast<unsigned>(n)), j = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    pairs.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    auto next = pohp::close_order(n, pairs);
    if (static_cast<double>(next.pair_count()) > density * total) {
      pairs.pop_back();
      continue;
    }
    order = std::move(next);
  }
  return order;
}

// Graph grown along a sliding window: each new vertex is adjacent only to
// members of the current bag, so the window sequence is a normal path
// decomposition of width bag_size - 1.
inline WindowInstance random_window_instance(std::mt19937& rng, int n, int bag_size, pohp::ProblemKind kind,
                                             int edge_pct = 60, double density = 0.3) {
  WindowInstance out;
  auto& g = out.inst.graph;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  auto coin = [&] { return static_cast<int>(rng() % 100) < edge_pct; };
  auto weight = [&] { return static_cast<pohp::Weight>(rng() % 10); };
  const int first = std::min(n, bag_size);
  std::vector<int> bag;
  pohp::VertexSet bs(static_cast<std::size_t>(n));
  for (int v = 0; v < first; ++v) {
    for (int u : bag)
      if (coin()) g.add_edge(u, v, weight());
    bag.push_back(v);
    bs.set(v);
  }
  auto& d = out.decomposition;
  d.bags.push_back(bs);
  d.forgotten.push_back(-1);
  d.introduced.push_back(-1);
  for (int w = first; w < n; ++w) {
    auto pos = rng() % bag.size();
    int u = bag[pos];
    bag.erase(bag.begin() + static_cast<long>(pos));
    bs.reset(u);
    for (int x : bag)
      if (coin()) g.add_edge(x, w, weight());
    bag.push_back(w);
    bs.set(w);
    d.bags.push_back(bs);
    d.forgotten.push_back(u);
    d.introduced.push_back(w);
  }
  out.inst.order = random_order(rng, n, density * (static_cast<double>(rng() % 1001) / 1000.0));
  out.inst.kind = kind;
  return out;
}

// Random partial k-tree: every vertex after the first k+1 attaches to k
// members of an earlier (k+1)-clique, so the treewidth is at most k.
inline pohp::Instance random_ktree_instance(std::mt19937& rng, int n, int k, pohp::ProblemKind kind, int edge_pct = 70,
                                            double density = 0.3) {
  pohp::Instance inst;
  auto& g = inst.graph;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  auto coin = [&] { return static_cast<int>(rng() % 100) < edge_pct; };
  auto weight = [&] { return static_cast<pohp::Weight>(rng() % 10); };
  std::vector<std::vector<int>> cliques;
  std::vector<int> first;
  for (int v = 0; v < std::min(n, k + 1); ++v) {
    for (int u : first)
      if (coin()) g.add_edge(u, v, weight());
    first.push_back(v);
  }
  cliques.push_back(first);
  for (int w = k + 1; w < n; ++w) {
    auto base = cliques[rng() % cliques.size()];
    base.erase(base.begin() + static_cast<long>(rng() % base.size()));
    for (int u : base)
      if (coin()) g.add_edge(u, w, weight());
    base.push_back(w);
    cliques.push_back(base);
  }
  inst.order = random_order(rng, n, density * (static_cast<double>(rng() % 1001) / 1000.0));
  inst.kind = kind;
  return inst;
}

}  // namespace testing_helpers
