#include <cstdlib>

#include "grid_router.hpp"
#include "pohp/forge.hpp"

namespace pohp::forge {

namespace {

// index of the first literal of clause j made true by a
int satisfied_literal(const CnfFormula& f, const std::vector<bool>& a, std::size_t j) {
  const auto& c = f.clauses[j];
  for (std::size_t k = 0; k < c.size(); ++k)
    if (a[static_cast<std::size_t>(std::abs(c[k]) - 1)] == (c[k] > 0)) return static_cast<int>(k);
  throw UnsatisfiedAssignment("clause " + std::to_string(j + 1) + " is not satisfied");
}

Solution pi_witness(const CnfFormula& f, const std::vector<bool>& A, bool cycle) {
  const auto pi = cycle ? gen_pi_cycle(f) : gen_pi_path(f);
  const auto& g = pi.inst.graph;
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  auto I = [](int v) { return std::to_string(v); };
  auto at = [&](const std::string& name) { return g.index_of(name); };
  auto var = [&](int i, bool positive) { return at((positive ? "x" : "~x") + I(i)); };
  std::vector<int> chosen(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) chosen[static_cast<std::size_t>(j)] = satisfied_literal(f, A, static_cast<std::size_t>(j));

  std::vector<int> seq{at("s")};
  for (int i = 1; i <= n; ++i) seq.push_back(var(i, A[static_cast<std::size_t>(i - 1)]));
  for (int j = 1; j <= m; ++j) {
    seq.push_back(at("a1_" + I(j)));
    seq.push_back(at("l" + I(chosen[static_cast<std::size_t>(j - 1)] + 1) + "_" + I(j)));
    seq.push_back(at("b1_" + I(j)));
  }
  seq.push_back(at("t"));
  std::vector<std::string> backbone;
  for (int i = 0; i <= n; ++i) backbone.push_back("r" + I(i));
  for (int j = 1; j <= m; ++j)
    for (const char* p : {"u", "v", "w"}) backbone.push_back(p + I(j));
  for (auto it = backbone.rbegin(); it != backbone.rend(); ++it) seq.push_back(at(*it));
  seq.push_back(at("s'"));
  for (int i = 1; i <= n; ++i) seq.push_back(var(i, !A[static_cast<std::size_t>(i - 1)]));
  // leftover literals: enter next to a2 (l2 or l3), leave next to b2 (l1 or l3)
  static const int rest[3][2] = {{1, 2}, {2, 0}, {1, 0}};
  for (int j = 1; j <= m; ++j) {
    seq.push_back(at("a2_" + I(j)));
    for (int k : rest[chosen[static_cast<std::size_t>(j - 1)]]) seq.push_back(at("l" + I(k + 1) + "_" + I(j)));
    seq.push_back(at("b2_" + I(j)));
  }
  seq.push_back(at("t'"));
  if (cycle)
    for (auto it = backbone.rbegin(); it != backbone.rend(); ++it) seq.push_back(at(*it + "'"));
  return Solution{seq, tour_weight(g, seq, pi.inst.kind), pi.inst.kind};
}

// Explicit prefix of a grid walk plus the frontier-DP router for the rest.
struct GridWalk {
  const GridInstance& gi;
  std::vector<int> seq;
  std::vector<char> used;

  explicit GridWalk(const GridInstance& g) : gi(g), used(static_cast<std::size_t>(g.inst.size()), 0) {}

  void add(int r, int c) {
    const int v = gi.vertex(r, c);
    if (used[static_cast<std::size_t>(v)]) throw Error("witness revisits " + gi.inst.graph.name(v));
    used[static_cast<std::size_t>(v)] = 1;
    seq.push_back(v);
  }
  void row(int r, int c0, int c1) {
    for (int c = c0; c0 <= c1 ? c <= c1 : c >= c1; c0 <= c1 ? ++c : --c) add(r, c);
  }
  void col(int c, int r0, int r1) {
    for (int r = r0; r0 <= r1 ? r <= r1 : r >= r1; r0 <= r1 ? ++r : --r) add(r, c);
  }
  std::pair<int, int> last() const {
    const int v = seq.back();
    return {v / gi.width + 1, v % gi.width + 1};
  }

  // Covers every unused cell in columns [c0, c1] starting next to the
  // current end; `end` restricts the far end (1-based cells).
  void route(int c0, int c1, std::vector<std::pair<int, int>> end, std::optional<std::pair<int, int>> start = {}) {
    detail::RouteRequest req;
    req.height = gi.height;
    req.width = gi.width;
    req.free.assign(static_cast<std::size_t>(gi.height), std::vector<char>(static_cast<std::size_t>(gi.width), 0));
    for (int r = 1; r <= gi.height; ++r)
      for (int c = c0; c <= c1; ++c)
        req.free[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] = !used[static_cast<std::size_t>(gi.vertex(r, c))];
    bool keep_start = true;
    auto [sr, sc] = last();
    if (start) {
      std::tie(sr, sc) = *start;
      keep_start = false;
    }
    req.free[static_cast<std::size_t>(sr - 1)][static_cast<std::size_t>(sc - 1)] = 1;
    req.start = {sr - 1, sc - 1};
    if (!end.empty()) {
      req.end.assign(static_cast<std::size_t>(gi.height), std::vector<char>(static_cast<std::size_t>(gi.width), 0));
      for (auto [r, c] : end) req.end[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] = 1;
    }
    // precedences left among unvisited cells become an early/late split
    for (auto [u, v] : gi.inst.order.pairs()) {
      if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)]) continue;
      if (req.allowed.empty()) {
        req.phases = 2;
        req.allowed.assign(static_cast<std::size_t>(gi.height), std::vector<std::uint8_t>(static_cast<std::size_t>(gi.width), 3));
      }
      auto mark = [&](int x, std::uint8_t p) {
        auto& slot = req.allowed[static_cast<std::size_t>(x / gi.width)][static_cast<std::size_t>(x % gi.width)];
        if (!(slot & p)) throw Error("witness cannot split the precedences at " + gi.inst.graph.name(x));
        slot = p;
      };
      mark(u, 1);
      mark(v, 2);
    }
    const auto& g = gi.inst.graph;
    req.weight = [&](detail::Cell a, detail::Cell b) {
      return g.weight(gi.vertex(a.first + 1, a.second + 1), gi.vertex(b.first + 1, b.second + 1));
    };
    auto path = detail::route(req);
    if (!path) throw Error("no routing for the remaining cells of columns " + std::to_string(c0) + ".." + std::to_string(c1));
    for (std::size_t k = keep_start ? 1 : 0; k < path->size(); ++k) add((*path)[k].first + 1, (*path)[k].second + 1);
  }

  Solution solution() const { return Solution{seq, tour_weight(gi.inst.graph, seq, gi.inst.kind), gi.inst.kind}; }
};

bool truth(const std::vector<bool>& A, int i) { return A[static_cast<std::size_t>(i - 1)]; }

// Cell roles for a whole-grid routing in three phases: 0 runs from s to t,
// 1 holds the variable vertices of false sides, 2 the literal vertices that
// must follow them.
struct Roles {
  std::vector<int> zero;          // on the s-t part
  std::vector<int> early;         // after t, before every late cell
  std::vector<int> late;          // after every early cell
  std::vector<int> zero_or_late;  // anywhere except among the early cells
};

Solution phased_witness(const GridInstance& gi, int s, int t, const Roles& roles) {
  const int H = gi.height, W = gi.width;
  detail::RouteRequest req;
  req.height = H;
  req.width = W;
  req.free.assign(static_cast<std::size_t>(H), std::vector<char>(static_cast<std::size_t>(W), 1));
  req.start = {s / W, s % W};
  req.phases = 3;
  req.allowed.assign(static_cast<std::size_t>(H), std::vector<std::uint8_t>(static_cast<std::size_t>(W), 7));
  auto limit = [&](int v, std::uint8_t m) { req.allowed[static_cast<std::size_t>(v / W)][static_cast<std::size_t>(v % W)] &= m; };
  for (auto [u, v] : gi.inst.order.pairs()) {
    if (u == t) limit(v, 6);
    if (v == t && u != s) limit(u, 1);
  }
  limit(t, 1);
  for (int v : roles.zero) limit(v, 1);
  for (int v : roles.early) limit(v, 2);
  for (int v : roles.late) limit(v, 4);
  for (int v : roles.zero_or_late) limit(v, 5);
  req.gate[0] = detail::Cell{t / W, t % W};
  if (gi.inst.kind == ProblemKind::cycle) {
    req.end.assign(static_cast<std::size_t>(H), std::vector<char>(static_cast<std::size_t>(W), 0));
    for (int u : gi.inst.graph.neighbours(s).members()) req.end[static_cast<std::size_t>(u / W)][static_cast<std::size_t>(u % W)] = 1;
  }
  const auto& g = gi.inst.graph;
  req.weight = [&](detail::Cell a, detail::Cell b) { return g.weight(a.first * W + a.second, b.first * W + b.second); };
  auto path = detail::route(req);
  if (!path) throw Error("no phased routing of the grid exists for this assignment");
  std::vector<int> seq;
  seq.reserve(path->size());
  for (auto [r, c] : *path) seq.push_back(r * W + c);
  return Solution{seq, tour_weight(g, seq, gi.inst.kind), gi.inst.kind};
}

Solution grid7_witness(const CnfFormula& f, const std::vector<bool>& A) {
  const auto gi = gen_grid7_path(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size()), W = gi.width;
  auto xo = [](int i) { return 2 + 6 * (i - 1); };
  auto co = [&](int j) { return 2 + 6 * n + 4 * (j - 1); };
  GridWalk w(gi);
  // s to t through rows 3..5
  for (int i = 1; i <= n; ++i) {
    const int o = xo(i);
    if (!truth(A, i)) {
      w.row(3, o + 1, o + 6);
    } else {
      w.col(o + 1, 3, 5);
      w.row(5, o + 2, o + 5);
      w.col(o + 6, 5, 3);
    }
  }
  for (int j = 1; j <= m; ++j) {
    const int o = co(j), R = satisfied_literal(f, A, static_cast<std::size_t>(j - 1)) + 3;
    w.col(o + 1, 3, R);
    w.row(R, o + 2, o + 3);
    w.col(o + 4, R, 3);
  }
  // leftover variable vertices along rows 1 and 7
  w.col(W, 2, 1);
  for (int c = W - 1; c >= 1; --c) {
    w.add(1, c);
    for (int i = 1; i <= n; ++i)
      if (truth(A, i) && c == xo(i) + 4) {
        w.col(c, 2, 3);
        w.col(c - 1, 3, 1);
        --c;
      }
  }
  w.col(1, 2, 7);
  for (int c = 2; c <= W; ++c) {
    w.add(7, c);
    for (int i = 1; i <= n; ++i)
      if (!truth(A, i) && c == xo(i) + 4) {
        w.col(c, 6, 5);
        w.col(c + 1, 5, 7);
        ++c;
      }
  }
  w.route(1, W, {});
  return w.solution();
}

Solution grid9_witness(const CnfFormula& f, const std::vector<bool>& A) {
  const auto gi = gen_grid9_cycle(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size()), W = gi.width;
  auto xo = [](int i) { return 2 + 8 * (i - 1); };
  auto co = [&](int j) { return 2 + 8 * n + 6 * (j - 1); };
  Roles roles;
  for (int i = 1; i <= n; ++i)
    for (int c = xo(i) + 4; c <= xo(i) + 5; ++c) {
      auto& pos = truth(A, i) ? roles.zero : roles.early;
      auto& neg = truth(A, i) ? roles.early : roles.zero;
      pos.push_back(gi.vertex(7, c));
      neg.push_back(gi.vertex(4, c));
    }
  for (int j = 1; j <= m; ++j)
    for (int a = 1; a <= 3; ++a) {
      const int lit = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      auto& role = truth(A, std::abs(lit)) == (lit > 0) ? roles.zero_or_late : roles.late;
      for (int c = co(j) + 3; c <= co(j) + 4; ++c) role.push_back(gi.vertex(a + 3, c));
    }
  return phased_witness(gi, gi.vertex(7, xo(1) + 1), gi.vertex(4, W - 1), roles);
}

Solution grid5_witness(const CnfFormula& f, const std::vector<bool>& A) {
  const auto gi = gen_grid5_minpath(f, f.budget.value_or(f.variables));
  const int n = f.variables, m = static_cast<int>(f.clauses.size()), W = gi.width;
  auto xo = [](int i) { return 6 * (i - 1); };
  auto co = [&](int j) { return 6 * n + 7 * (j - 1); };
  GridWalk w(gi);
  for (int i = 1; i <= n; ++i) {
    const int o = xo(i);
    w.row(5, o + 1, o + 3);
    if (truth(A, i)) {
      w.col(o + 3, 4, 3);
      w.col(o + 4, 3, 5);
    } else {
      w.add(4, o + 3);
      w.col(o + 4, 4, 5);
    }
    w.row(5, o + 5, o + 6);
  }
  for (int j = 1; j <= m; ++j) {
    const int o = co(j);
    if (satisfied_literal(f, A, static_cast<std::size_t>(j - 1)) == 0) {
      w.row(5, o + 1, o + 2);
      w.row(4, o + 2, o + 3);
      w.row(5, o + 3, o + 7);
    } else {
      w.row(5, o + 1, o + 3);
      w.row(4, o + 3, o + 4);
      w.row(5, o + 4, o + 7);
    }
  }
  w.add(5, W);  // t
  w.col(W, 4, 1);
  w.row(1, W - 1, 1);
  w.col(1, 2, 4);
  // variable gadgets first, so literal vertices come after their variables
  w.route(1, 6 * n, {{4, 6 * n}});
  w.route(6 * n + 1, W, {}, std::pair{4, 6 * n + 1});
  return w.solution();
}

Solution grid6_witness(const CnfFormula& f, const std::vector<bool>& A) {
  const auto gi = gen_grid6_mincycle(f, f.budget.value_or(f.variables));
  const int n = f.variables, m = static_cast<int>(f.clauses.size()), W = gi.width;
  auto xo = [](int i) { return 1 + 6 * (i - 1); };
  auto co = [&](int j) { return 1 + 6 * n + 7 * (j - 1); };
  Roles roles;
  for (int i = 1; i <= n; ++i) (truth(A, i) ? roles.zero : roles.early).push_back(gi.vertex(4, xo(i) + 3));
  for (int j = 1; j <= m; ++j)
    for (int a = 1; a <= 2; ++a) {
      const int i = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      (truth(A, i) ? roles.zero_or_late : roles.late).push_back(gi.vertex(5, co(j) + 1 + 2 * a));
    }
  return phased_witness(gi, gi.vertex(6, 1), gi.vertex(6, W), roles);
}

}  // namespace

Solution build_witness(ReductionId id, const CnfFormula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.variables)
    throw UnsatisfiedAssignment("assignment has " + std::to_string(assignment.size()) + " values for " +
                                std::to_string(f.variables) + " variables");
  if (!satisfies(f, assignment)) throw UnsatisfiedAssignment("assignment does not satisfy the formula");
  switch (id) {
    case ReductionId::pi_path: return pi_witness(f, assignment, false);
    case ReductionId::pi_cycle: return pi_witness(f, assignment, true);
    case ReductionId::grid7_path: return grid7_witness(f, assignment);
    case ReductionId::grid9_cycle: return grid9_witness(f, assignment);
    case ReductionId::grid5_minpath: return grid5_witness(f, assignment);
    case ReductionId::grid6_mincycle: return grid6_witness(f, assignment);
  }
  throw Error("unknown reduction");
}

}  // namespace pohp::forge
