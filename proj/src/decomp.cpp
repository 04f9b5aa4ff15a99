#include "pohp/decomp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace pohp::decomp {

namespace {

int max_bag(const std::vector<VertexSet>& bags) {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.count()) - 1);
  return w;
}

Check fail(std::string msg) {
  Check c;
  c.ok = false;
  c.violation = std::move(msg);
  return c;
}

// Cover and edge axioms shared by both decomposition kinds.
std::optional<Check> check_cover(const std::vector<VertexSet>& bags, const Graph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  VertexSet all(n);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    if (bags[i].capacity() != n) return fail("bag " + std::to_string(i) + " has the wrong capacity");
    all |= bags[i];
  }
  for (int v = 0; v < g.size(); ++v)
    if (!all.test(v)) return fail("vertex " + g.name(v) + " is in no bag");
  for (auto [u, v] : g.edges()) {
    bool hit = false;
    for (const auto& b : bags)
      if (b.test(u) && b.test(v)) {
        hit = true;
        break;
      }
    if (!hit) return fail("edge " + g.name(u) + " " + g.name(v) + " is uncovered");
  }
  return std::nullopt;
}

}  // namespace

int PathDecomposition::width() const { return max_bag(bags); }
int NormalPathDecomposition::width() const { return max_bag(bags); }
int TreeDecomposition::width() const { return max_bag(bags); }

int NormalTreeDecomposition::width() const {
  int w = -1;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.count()) - 1);
  return w;
}

std::vector<int> NormalTreeDecomposition::postorder() const {
  std::vector<int> out;
  if (nodes.empty()) return out;
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    if (done) {
      out.push_back(v);
      continue;
    }
    stack.emplace_back(v, true);
    const auto& ch = nodes[static_cast<std::size_t>(v)].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, false);
  }
  return out;
}

TreeDecomposition NormalTreeDecomposition::plain() const {
  TreeDecomposition t;
  t.root = root;
  t.parent.assign(nodes.size(), -1);
  for (const auto& nd : nodes) t.bags.push_back(nd.bag);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : nodes[i].children) t.parent[static_cast<std::size_t>(c)] = static_cast<int>(i);
  return t;
}

Check validate(const PathDecomposition& d, const Graph& g) {
  if (auto bad = check_cover(d.bags, g)) return *bad;
  for (int v = 0; v < g.size(); ++v) {
    int state = 0;  // 0 before, 1 inside, 2 after
    for (const auto& b : d.bags) {
      bool in = b.test(v);
      if (in && state == 2) return fail("occurrences of " + g.name(v) + " are not contiguous");
      if (in) state = 1;
      if (!in && state == 1) state = 2;
    }
  }
  Check c;
  c.width = d.width();
  return c;
}

Check validate(const TreeDecomposition& d, const Graph& g) {
  const std::size_t m = d.bags.size();
  if (d.parent.size() != m) return fail("parent array does not match the bag count");
  if (m == 0) {
    if (g.size() == 0) return Check{true, -1, {}};
    return fail("no bags");
  }
  if (d.root < 0 || static_cast<std::size_t>(d.root) >= m || d.parent[static_cast<std::size_t>(d.root)] != -1)
    return fail("root is not a parentless node");
  for (std::size_t i = 0; i < m; ++i) {
    int p = d.parent[i];
    if (static_cast<int>(i) != d.root && (p < 0 || static_cast<std::size_t>(p) >= m))
      return fail("node " + std::to_string(i) + " has no valid parent");
    // walking up must reach the root
    int cur = static_cast<int>(i);
    std::size_t steps = 0;
    while (cur != d.root && steps <= m) {
      cur = d.parent[static_cast<std::size_t>(cur)];
      ++steps;
      if (cur < 0) break;
    }
    if (cur != d.root) return fail("bag tree is not connected or has a cycle");
  }
  if (auto bad = check_cover(d.bags, g)) return *bad;
  for (int v = 0; v < g.size(); ++v) {
    int nodes_with = 0, links = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!d.bags[i].test(v)) continue;
      ++nodes_with;
      int p = d.parent[i];
      if (p >= 0 && d.bags[static_cast<std::size_t>(p)].test(v)) ++links;
    }
    if (nodes_with - links != 1) return fail("bags containing " + g.name(v) + " do not form a subtree");
  }
  Check c;
  c.width = d.width();
  return c;
}

Check validate(const NormalPathDecomposition& d, const Graph& g) {
  auto base = validate(PathDecomposition{d.bags}, g);
  if (!base.ok) return base;
  if (d.bags.empty()) return base;
  const auto size = d.bags.front().count();
  if (d.forgotten.size() != d.bags.size() || d.introduced.size() != d.bags.size())
    return fail("step annotations do not match the bag count");
  for (std::size_t i = 0; i < d.bags.size(); ++i) {
    if (d.bags[i].count() != size) return fail("bag " + std::to_string(i) + " has the wrong size");
    if (i == 0) continue;
    int u = d.forgotten[i], w = d.introduced[i];
    if (u < 0 || w < 0 || u >= g.size() || w >= g.size()) return fail("step " + std::to_string(i) + " lacks annotations");
    VertexSet expect = d.bags[i - 1];
    if (!expect.test(u) || expect.test(w)) return fail("step " + std::to_string(i) + " annotations are inconsistent");
    expect.reset(u);
    expect.set(w);
    if (!(expect == d.bags[i])) return fail("bags " + std::to_string(i - 1) + " and " + std::to_string(i) + " differ in more than two vertices");
  }
  if (d.bags.size() != static_cast<std::size_t>(g.size()) - size + 1) return fail("bag count is not n - width");
  return base;
}

Check validate(const NormalTreeDecomposition& d, const Graph& g) {
  auto base = validate(d.plain(), g);
  if (!base.ok) return base;
  if (d.nodes.empty()) return base;
  const auto size = d.nodes[static_cast<std::size_t>(d.root)].bag.count();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& nd = d.nodes[i];
    const std::string at = "node " + std::to_string(i);
    if (nd.bag.count() != size) return fail(at + " has the wrong bag size");
    switch (nd.kind) {
      case NodeKind::leaf:
        if (!nd.children.empty()) return fail(at + " is a leaf with children");
        break;
      case NodeKind::join: {
        if (nd.children.size() != 2) return fail(at + " is a join without two children");
        for (int c : nd.children) {
          const auto& ch = d.nodes[static_cast<std::size_t>(c)];
          if (!(ch.bag == nd.bag)) return fail(at + " is a join whose child bag differs");
          if (ch.kind == NodeKind::leaf) return fail(at + " is a join with a leaf child");
        }
        break;
      }
      case NodeKind::exchange: {
        if (nd.children.size() != 1) return fail(at + " is an exchange without exactly one child");
        const auto& ch = d.nodes[static_cast<std::size_t>(nd.children[0])];
        int u = nd.forgotten, w = nd.introduced;
        if (u < 0 || w < 0 || !ch.bag.test(u) || ch.bag.test(w)) return fail(at + " has inconsistent exchange annotations");
        VertexSet expect = ch.bag;
        expect.reset(u);
        expect.set(w);
        if (!(expect == nd.bag)) return fail(at + " differs from its child in more than two vertices");
        break;
      }
    }
  }
  return base;
}

namespace {

struct PathSearch {
  const Graph& g;
  int n;
  int k;
  SearchBudget budget;
  std::uint64_t nodes = 0;
  std::unordered_set<VertexSet> failed;
  std::vector<int> order;

  VertexSet boundary_after(const VertexSet& s2, const VertexSet& boundary, int v) const {
    VertexSet out(static_cast<std::size_t>(n));
    auto keep = [&](int u) {
      if (!g.neighbours(u).subset_of(s2)) out.set(u);
    };
    boundary.for_each(keep);
    keep(v);
    return out;
  }

  bool dfs(const VertexSet& s, const VertexSet& boundary, int placed) {
    if (placed == n) return true;
    if (failed.count(s)) return false;
    if (++nodes > budget.nodes) throw BudgetExceeded("path decomposition search exceeded its node budget");
    // a vertex with no outside neighbours can always go next
    for (int v = 0; v < n; ++v) {
      if (s.test(v) || !g.neighbours(v).subset_of(s)) continue;
      VertexSet s2 = s;
      s2.set(v);
      order.push_back(v);
      if (dfs(s2, boundary_after(s2, boundary, v), placed + 1)) return true;
      order.pop_back();
      failed.insert(s);
      return false;
    }
    std::vector<std::pair<std::size_t, int>> cand;
    for (int v = 0; v < n; ++v) {
      if (s.test(v)) continue;
      VertexSet s2 = s;
      s2.set(v);
      auto b = boundary_after(s2, boundary, v);
      if (static_cast<int>(b.count()) <= k) cand.emplace_back(b.count(), v);
    }
    std::sort(cand.begin(), cand.end());
    for (auto [sz, v] : cand) {
      VertexSet s2 = s;
      s2.set(v);
      order.push_back(v);
      if (dfs(s2, boundary_after(s2, boundary, v), placed + 1)) return true;
      order.pop_back();
    }
    failed.insert(s);
    return false;
  }
};

struct TreeSearch {
  int n;
  int k;
  SearchBudget budget;
  std::uint64_t nodes = 0;
  std::unordered_set<VertexSet> failed;
  std::vector<int> order;

  static void eliminate(std::vector<VertexSet>& adj, VertexSet& alive, int v) {
    VertexSet nb = adj[static_cast<std::size_t>(v)] & alive;
    nb.for_each([&](int a) {
      adj[static_cast<std::size_t>(a)] |= nb;
      adj[static_cast<std::size_t>(a)].reset(a);
      adj[static_cast<std::size_t>(a)].reset(v);
    });
    alive.reset(v);
  }

  static bool clique(const std::vector<VertexSet>& adj, const VertexSet& nb) {
    bool ok = true;
    nb.for_each([&](int a) {
      if (!ok) return;
      VertexSet rest = nb;
      rest.reset(a);
      if (!rest.subset_of(adj[static_cast<std::size_t>(a)])) ok = false;
    });
    return ok;
  }

  bool dfs(std::vector<VertexSet> adj, VertexSet alive, const VertexSet& gone) {
    if (static_cast<int>(alive.count()) <= k + 1) {
      alive.for_each([&](int v) { order.push_back(v); });
      return true;
    }
    if (failed.count(gone)) return false;
    if (++nodes > budget.nodes) throw BudgetExceeded("tree decomposition search exceeded its node budget");
    for (int v : alive.members()) {
      VertexSet nb = adj[static_cast<std::size_t>(v)] & alive;
      if (static_cast<int>(nb.count()) <= k && clique(adj, nb)) {
        auto adj2 = adj;
        VertexSet alive2 = alive, gone2 = gone;
        eliminate(adj2, alive2, v);
        gone2.set(v);
        order.push_back(v);
        if (dfs(std::move(adj2), alive2, gone2)) return true;
        order.pop_back();
        failed.insert(gone);
        return false;
      }
    }
    std::vector<std::pair<std::size_t, int>> cand;
    alive.for_each([&](int v) {
      auto d = (adj[static_cast<std::size_t>(v)] & alive).count();
      if (static_cast<int>(d) <= k) cand.emplace_back(d, v);
    });
    std::sort(cand.begin(), cand.end());
    for (auto [d, v] : cand) {
      auto adj2 = adj;
      VertexSet alive2 = alive, gone2 = gone;
      eliminate(adj2, alive2, v);
      gone2.set(v);
      order.push_back(v);
      if (dfs(std::move(adj2), alive2, gone2)) return true;
      order.pop_back();
    }
    failed.insert(gone);
    return false;
  }
};

// Later neighbours of every vertex in the fill graph of an elimination order.
std::vector<VertexSet> higher_neighbours(const Graph& g, const std::vector<int>& order) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<VertexSet> adj;
  for (int v = 0; v < g.size(); ++v) adj.push_back(g.neighbours(v));
  VertexSet alive(n);
  for (int v = 0; v < g.size(); ++v) alive.set(v);
  std::vector<VertexSet> up(n, VertexSet(n));
  for (int v : order) {
    up[static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)] & alive;
    up[static_cast<std::size_t>(v)].reset(v);
    TreeSearch::eliminate(adj, alive, v);
  }
  return up;
}

TreeDecomposition from_elimination(const Graph& g, const std::vector<int>& order) {
  const auto n = static_cast<std::size_t>(g.size());
  auto up = higher_neighbours(g, order);
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  TreeDecomposition t;
  t.bags.resize(n);
  t.parent.assign(n, -1);
  std::vector<int> roots;
  for (int v : order) {
    auto& bag = t.bags[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])];
    bag = up[static_cast<std::size_t>(v)];
    bag.set(v);
    int best = -1;
    up[static_cast<std::size_t>(v)].for_each([&](int u) {
      if (best < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(best)]) best = u;
    });
    if (best < 0)
      roots.push_back(pos[static_cast<std::size_t>(v)]);
    else
      t.parent[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = pos[static_cast<std::size_t>(best)];
  }
  // chain components together; their bags are disjoint
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) t.parent[static_cast<std::size_t>(roots[i])] = roots[i + 1];
  t.root = roots.empty() ? 0 : roots.back();
  return t;
}

}  // namespace

std::optional<PathDecomposition> find_path_decomposition(const Graph& g, int k, SearchBudget budget) {
  const int n = g.size();
  PathDecomposition d;
  if (n == 0) return d;
  if (k < 0) return std::nullopt;
  PathSearch s{g, n, k, budget, {}, {}, {}};
  VertexSet empty(static_cast<std::size_t>(n));
  if (!s.dfs(empty, empty, 0)) return std::nullopt;
  VertexSet prefix(static_cast<std::size_t>(n)), boundary(static_cast<std::size_t>(n));
  for (int v : s.order) {
    VertexSet bag = boundary;
    bag.set(v);
    d.bags.push_back(bag);
    prefix.set(v);
    boundary = s.boundary_after(prefix, boundary, v);
  }
  return d;
}

std::optional<TreeDecomposition> find_tree_decomposition(const Graph& g, int k, SearchBudget budget) {
  const int n = g.size();
  if (n == 0) return TreeDecomposition{};
  if (k < 0) return std::nullopt;
  TreeSearch s{n, k, budget, {}, {}, {}};
  std::vector<VertexSet> adj;
  for (int v = 0; v < n; ++v) adj.push_back(g.neighbours(v));
  VertexSet alive(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) alive.set(v);
  if (!s.dfs(adj, alive, VertexSet(static_cast<std::size_t>(n)))) return std::nullopt;
  return from_elimination(g, s.order);
}

int pathwidth(const Graph& g, SearchBudget budget) {
  for (int k = 0;; ++k)
    if (find_path_decomposition(g, k, budget)) return g.size() == 0 ? -1 : k;
}

int treewidth(const Graph& g, SearchBudget budget) {
  for (int k = 0;; ++k)
    if (find_tree_decomposition(g, k, budget)) return g.size() == 0 ? -1 : k;
}

NormalPathDecomposition single_bag(int n) {
  NormalPathDecomposition d;
  VertexSet all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all.set(v);
  d.bags.push_back(all);
  d.forgotten.push_back(-1);
  d.introduced.push_back(-1);
  return d;
}

NormalTreeDecomposition single_leaf(int n) {
  NormalTreeDecomposition d;
  TreeNode leaf;
  leaf.bag = VertexSet(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) leaf.bag.set(v);
  d.nodes.push_back(std::move(leaf));
  return d;
}

NormalPathDecomposition normalize_path(const PathDecomposition& d, const Graph& g, int bag_size) {
  auto chk = validate(d, g);
  if (!chk.ok) throw DecompositionInvalid(chk.violation);
  if (chk.width >= bag_size) throw WidthTooLarge("path decomposition is wider than the normal form allows");
  const int n = g.size();
  if (n <= bag_size) throw SmallInstance("instance too small for the normal path form");

  std::vector<int> first(static_cast<std::size_t>(n), -1), last(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < d.bags.size(); ++i)
    d.bags[i].for_each([&](int v) {
      if (first[static_cast<std::size_t>(v)] < 0) first[static_cast<std::size_t>(v)] = static_cast<int>(i);
      last[static_cast<std::size_t>(v)] = static_cast<int>(i);
    });
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto fa = first[static_cast<std::size_t>(a)], fb = first[static_cast<std::size_t>(b)];
    if (fa != fb) return fa < fb;
    return last[static_cast<std::size_t>(a)] < last[static_cast<std::size_t>(b)];
  });
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  // latest neighbour position decides how long a vertex must stay
  std::vector<int> reach(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbour_list(v))
      reach[static_cast<std::size_t>(v)] = std::max(reach[static_cast<std::size_t>(v)], pos[static_cast<std::size_t>(u)]);

  NormalPathDecomposition out;
  VertexSet bag(static_cast<std::size_t>(n));
  for (int i = 0; i < bag_size; ++i) bag.set(order[static_cast<std::size_t>(i)]);
  out.bags.push_back(bag);
  out.forgotten.push_back(-1);
  out.introduced.push_back(-1);
  for (int j = bag_size; j < n; ++j) {
    int w = order[static_cast<std::size_t>(j)];
    int drop = -1;
    bag.for_each([&](int u) {
      if (reach[static_cast<std::size_t>(u)] >= j) return;
      if (drop < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(drop)]) drop = u;
    });
    if (drop < 0) throw WidthTooLarge("no vertex can be forgotten; input width exceeds the bag size");
    bag.reset(drop);
    bag.set(w);
    out.bags.push_back(bag);
    out.forgotten.push_back(drop);
    out.introduced.push_back(w);
  }
  auto fin = validate(out, g);
  if (!fin.ok) throw DecompositionInvalid("normalization produced an invalid decomposition: " + fin.violation);
  return out;
}

NormalTreeDecomposition normalize_tree(const TreeDecomposition& d, const Graph& g, int bag_size) {
  auto chk = validate(d, g);
  if (!chk.ok) throw DecompositionInvalid(chk.violation);
  if (chk.width >= bag_size) throw WidthTooLarge("tree decomposition is wider than the normal form allows");
  const int n = g.size();
  if (n <= bag_size) throw SmallInstance("instance too small for the normal tree form");
  const auto N = static_cast<std::size_t>(n);

  // elimination order by peeling leaf bags
  const std::size_t m = d.bags.size();
  std::vector<int> pending_children(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (d.parent[i] >= 0) ++pending_children[static_cast<std::size_t>(d.parent[i])];
  std::vector<int> leaves;
  for (std::size_t i = 0; i < m; ++i)
    if (pending_children[i] == 0 && static_cast<int>(i) != d.root) leaves.push_back(static_cast<int>(i));
  std::vector<int> order;
  VertexSet done(N);
  auto emit = [&](const VertexSet& s) {
    s.for_each([&](int v) {
      if (!done.test(v)) {
        done.set(v);
        order.push_back(v);
      }
    });
  };
  while (!leaves.empty()) {
    int l = leaves.back();
    leaves.pop_back();
    int p = d.parent[static_cast<std::size_t>(l)];
    emit(d.bags[static_cast<std::size_t>(l)] - d.bags[static_cast<std::size_t>(p)]);
    if (--pending_children[static_cast<std::size_t>(p)] == 0 && p != d.root) leaves.push_back(p);
  }
  emit(d.bags[static_cast<std::size_t>(d.root)]);

  auto up = higher_neighbours(g, order);
  std::vector<int> pos(N);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> kids(N);
  std::vector<int> forest_roots;
  for (int v : order) {
    if (static_cast<int>(up[static_cast<std::size_t>(v)].count()) >= bag_size)
      throw WidthTooLarge("elimination order exceeds the bag size");
    int best = -1;
    up[static_cast<std::size_t>(v)].for_each([&](int u) {
      if (best < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(best)]) best = u;
    });
    if (best < 0)
      forest_roots.push_back(v);
    else
      kids[static_cast<std::size_t>(best)].push_back(v);
  }

  NormalTreeDecomposition out;
  VertexSet root_bag(N);
  for (int i = n - bag_size; i < n; ++i) root_bag.set(order[static_cast<std::size_t>(i)]);
  std::vector<int> top;
  for (int i = 0; i < n - bag_size; ++i) {
    int c = order[static_cast<std::size_t>(i)];
    bool hangs = true;
    up[static_cast<std::size_t>(c)].for_each([&](int u) {
      if (pos[static_cast<std::size_t>(u)] < n - bag_size) hangs = false;
    });
    // c is the topmost vertex of its subtree outside the root bag
    int par = -1;
    up[static_cast<std::size_t>(c)].for_each([&](int u) {
      if (par < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(par)]) par = u;
    });
    if (par < 0 || root_bag.test(par)) {
      if (!hangs) throw DecompositionInvalid("elimination tree violates the later-neighbour property");
      top.push_back(c);
    }
  }

  struct Job {
    int node;
    std::vector<int> pending;
  };
  out.nodes.push_back(TreeNode{NodeKind::leaf, root_bag, {}, -1, -1});
  out.root = 0;
  std::vector<Job> jobs{{0, top}};
  while (!jobs.empty()) {
    Job job = std::move(jobs.back());
    jobs.pop_back();
    const VertexSet bag = out.nodes[static_cast<std::size_t>(job.node)].bag;
    if (job.pending.empty()) {
      out.nodes[static_cast<std::size_t>(job.node)].kind = NodeKind::leaf;
      continue;
    }
    if (job.pending.size() >= 2) {
      int left = static_cast<int>(out.nodes.size());
      out.nodes.push_back(TreeNode{NodeKind::leaf, bag, {}, -1, -1});
      int right = static_cast<int>(out.nodes.size());
      out.nodes.push_back(TreeNode{NodeKind::leaf, bag, {}, -1, -1});
      auto& nd = out.nodes[static_cast<std::size_t>(job.node)];
      nd.kind = NodeKind::join;
      nd.children = {left, right};
      jobs.push_back({left, {job.pending.front()}});
      jobs.push_back({right, std::vector<int>(job.pending.begin() + 1, job.pending.end())});
      continue;
    }
    int c = job.pending.front();
    const auto& need = up[static_cast<std::size_t>(c)];
    if (!need.subset_of(bag)) throw DecompositionInvalid("pending subtree needs vertices outside the bag");
    int w = -1;
    (bag - need).for_each([&](int u) {
      if (w < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(w)]) w = u;
    });
    VertexSet child_bag = bag;
    child_bag.reset(w);
    child_bag.set(c);
    int child = static_cast<int>(out.nodes.size());
    out.nodes.push_back(TreeNode{NodeKind::leaf, child_bag, {}, -1, -1});
    auto& nd = out.nodes[static_cast<std::size_t>(job.node)];
    nd.kind = NodeKind::exchange;
    nd.children = {child};
    nd.forgotten = c;
    nd.introduced = w;
    jobs.push_back({child, kids[static_cast<std::size_t>(c)]});
  }
  auto fin = validate(out, g);
  if (!fin.ok) throw DecompositionInvalid("normalization produced an invalid decomposition: " + fin.violation);
  return out;
}

PathDecomposition with_vertex(const PathDecomposition& d, int v, std::size_t n) {
  PathDecomposition out;
  for (const auto& b : d.bags) {
    VertexSet nb(n);
    b.for_each([&](int x) { nb.set(x); });
    nb.set(v);
    out.bags.push_back(nb);
  }
  if (out.bags.empty()) {
    VertexSet nb(n);
    nb.set(v);
    out.bags.push_back(nb);
  }
  return out;
}

TreeDecomposition with_vertex(const TreeDecomposition& d, int v, std::size_t n) {
  TreeDecomposition out;
  out.parent = d.parent;
  out.root = d.root;
  for (const auto& b : d.bags) {
    VertexSet nb(n);
    b.for_each([&](int x) { nb.set(x); });
    nb.set(v);
    out.bags.push_back(nb);
  }
  if (out.bags.empty()) {
    VertexSet nb(n);
    nb.set(v);
    out.bags.push_back(nb);
    out.parent = {-1};
    out.root = 0;
  }
  return out;
}

}  // namespace pohp::decomp
