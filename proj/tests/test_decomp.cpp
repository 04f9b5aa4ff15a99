#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "pohp/decomp.hpp"

using namespace pohp;
using namespace pohp::decomp;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph grid(int r, int c) {
  Graph g(r * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1);
      if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j);
    }
  return g;
}

VertexSet bag(std::size_t n, std::initializer_list<int> vs) {
  VertexSet s(n);
  for (int v : vs) s.set(v);
  return s;
}

// vertex separation minimised over all orderings
int brute_pathwidth(const Graph& g) {
  int n = g.size();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  int best = n;
  do {
    int worst = 0;
    for (int i = 0; i < n; ++i) {
      int cnt = 0;
      for (int a = 0; a <= i; ++a) {
        bool out = false;
        for (int b = i + 1; b < n; ++b)
          if (g.adjacent(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)])) out = true;
        cnt += out;
      }
      worst = std::max(worst, cnt);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// max later-degree in the fill graph minimised over all elimination orders
int brute_treewidth(const Graph& g) {
  int n = g.size();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  int best = n;
  do {
    std::vector<std::vector<char>> a(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : g.edges()) a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = a[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    int worst = 0;
    for (int v : p) {
      std::vector<int> nb;
      for (int u = 0; u < n; ++u)
        if (!gone[static_cast<std::size_t>(u)] && a[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) nb.push_back(u);
      worst = std::max(worst, static_cast<int>(nb.size()));
      for (int x : nb)
        for (int y : nb)
          if (x != y) a[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 1;
      gone[static_cast<std::size_t>(v)] = 1;
    }
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

Graph random_graph(std::mt19937& rng, int n, int pct) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng() % 100) < pct) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("validate examples") {
  auto p5 = path_graph(5);
  PathDecomposition d{{bag(5, {0, 1}), bag(5, {1, 2}), bag(5, {2, 3}), bag(5, {3, 4})}};
  auto c = validate(d, p5);
  CHECK(c.ok);
  CHECK(c.width == 1);

  auto k3 = complete(3);
  PathDecomposition miss{{bag(3, {0, 1}), bag(3, {1, 2})}};
  c = validate(miss, k3);
  CHECK_FALSE(c.ok);
  CHECK(c.violation.find("uncovered") != std::string::npos);

  auto p3 = path_graph(3);
  PathDecomposition broken{{bag(3, {0, 1}), bag(3, {1, 2}), bag(3, {0, 2})}};
  c = validate(broken, p3);
  CHECK_FALSE(c.ok);
  CHECK(c.violation.find("contiguous") != std::string::npos);

  TreeDecomposition t{{bag(3, {0, 1}), bag(3, {1, 2}), bag(3, {0})}, {-1, 0, 1}, 0};
  CHECK_FALSE(validate(t, p3).ok);
}

TEST_CASE("find_path_decomposition examples") {
  auto p6 = path_graph(6);
  auto d = find_path_decomposition(p6, 1);
  REQUIRE(d);
  CHECK(validate(*d, p6).ok);
  CHECK(d->width() == 1);

  CHECK_FALSE(find_path_decomposition(complete(5), 3));

  auto g33 = grid(3, 3);
  CHECK_FALSE(find_path_decomposition(g33, 2));
  auto d3 = find_path_decomposition(g33, 3);
  REQUIRE(d3);
  CHECK(validate(*d3, g33).ok);
  CHECK(d3->width() == 3);
}

TEST_CASE("find_tree_decomposition examples") {
  Graph tree(7);
  for (int v = 1; v < 7; ++v) tree.add_edge((v - 1) / 2, v);
  auto t = find_tree_decomposition(tree, 1);
  REQUIRE(t);
  CHECK(validate(*t, tree).ok);
  CHECK(t->width() == 1);

  CHECK_FALSE(find_tree_decomposition(complete(5), 3));

  Graph c4(4);
  for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  CHECK_FALSE(find_tree_decomposition(c4, 1));
  auto t4 = find_tree_decomposition(c4, 2);
  REQUIRE(t4);
  CHECK(t4->width() == 2);
}

TEST_CASE("search budget is enforced") {
  std::mt19937 rng(3);
  auto g = random_graph(rng, 40, 30);
  CHECK_THROWS_AS(find_path_decomposition(g, 4, SearchBudget{50}), BudgetExceeded);
}

TEST_CASE("exact widths agree with brute force on small graphs") {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = random_graph(rng, n, 20 + static_cast<int>(rng() % 60));
    int pw = brute_pathwidth(g), tw = brute_treewidth(g);
    CHECK(pathwidth(g) == pw);
    CHECK(treewidth(g) == tw);
    auto d = find_path_decomposition(g, pw);
    REQUIRE(d);
    CHECK(validate(*d, g).ok);
    CHECK(d->width() <= pw);
    auto td = find_tree_decomposition(g, tw);
    REQUIRE(td);
    CHECK(validate(*td, g).ok);
    CHECK(td->width() <= tw);
  }
}

TEST_CASE("normalize_path examples") {
  auto p6 = path_graph(6);
  auto d = find_path_decomposition(p6, 1);
  auto nd = normalize_path(*d, p6);
  CHECK(nd.bags.size() == 2);
  CHECK(validate(nd, p6).ok);
  CHECK(nd.bags[0].count() == 5);

  auto p10 = path_graph(10);
  auto nd10 = normalize_path(*find_path_decomposition(p10, 4), p10);
  CHECK(nd10.bags.size() == 6);

  auto k5 = complete(5);
  CHECK_THROWS_AS(normalize_path(*find_path_decomposition(k5, 4), k5), SmallInstance);
  auto k6 = complete(6);
  CHECK_THROWS_AS(normalize_path(*find_path_decomposition(k6, 5), k6), WidthTooLarge);
}

TEST_CASE("normalize_path keeps forgotten vertices away from the future") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    int n = 6 + static_cast<int>(rng() % 8);
    auto g = random_graph(rng, n, 25);
    auto d = find_path_decomposition(g, 4);
    if (!d) continue;
    auto nd = normalize_path(*d, g);
    REQUIRE(validate(nd, g).ok);
    VertexSet future(static_cast<std::size_t>(n));
    for (std::size_t i = nd.bags.size(); i-- > 1;) {
      future.set(nd.introduced[i]);
      CHECK_FALSE(g.neighbours(nd.forgotten[i]).intersects(future));
    }
  }
}

TEST_CASE("normalize_tree examples") {
  auto p8 = path_graph(8);
  PathDecomposition pd = *find_path_decomposition(p8, 1);
  TreeDecomposition chain;
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    chain.bags.push_back(pd.bags[i]);
    chain.parent.push_back(i == 0 ? -1 : static_cast<int>(i) - 1);
  }
  auto nt = normalize_tree(chain, p8);
  CHECK(validate(nt, p8).ok);
  CHECK(std::none_of(nt.nodes.begin(), nt.nodes.end(), [](const TreeNode& x) { return x.kind == NodeKind::join; }));

  Graph star(9);
  for (int v = 1; v < 9; ++v) star.add_edge(0, v);
  TreeDecomposition sd;
  sd.bags.push_back(bag(9, {0}));
  sd.parent.push_back(-1);
  for (int v = 1; v < 9; ++v) {
    sd.bags.push_back(bag(9, {0, v}));
    sd.parent.push_back(0);
  }
  auto ns = normalize_tree(sd, star);
  CHECK(validate(ns, star).ok);
  CHECK(std::any_of(ns.nodes.begin(), ns.nodes.end(), [](const TreeNode& x) { return x.kind == NodeKind::join; }));

  auto k4 = complete(4);
  CHECK_THROWS_AS(normalize_tree(*find_tree_decomposition(k4, 3), k4), SmallInstance);
}

TEST_CASE("normalize_tree on random width-3 graphs") {
  std::mt19937 rng(31);
  int done = 0;
  for (int t = 0; t < 80; ++t) {
    int n = 5 + static_cast<int>(rng() % 10);
    auto g = random_graph(rng, n, 20 + static_cast<int>(rng() % 20));
    auto td = find_tree_decomposition(g, 3);
    if (!td) continue;
    auto nt = normalize_tree(*td, g);
    CHECK(validate(nt, g).ok);
    CHECK(nt.width() == 3);
    ++done;
  }
  CHECK(done > 30);
}
