#include "pohp/forge.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace pohp::forge {

bool CnfFormula::three_sat() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.size() == 3; });
}

bool CnfFormula::monotone_two_sat() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const auto& c) { return c.size() == 2 && c[0] > 0 && c[1] > 0; });
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool header = false;
  long declared = 0;
  std::vector<int> clause;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt, extra;
      long n = -1, m = -1;
      if (header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0 || (ls >> extra))
        throw MalformedHeader("expected a single header line 'p cnf <variables> <clauses>'");
      header = true;
      f.variables = static_cast<int>(n);
      declared = m;
      continue;
    }
    if (!header) throw MalformedHeader("clause data before the 'p cnf' header");
    do {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw MalformedHeader("not an integer literal: " + tok);
      if (lit == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (std::labs(lit) > f.variables) throw LiteralOutOfRange("literal " + tok + " exceeds the variable count");
      clause.push_back(static_cast<int>(lit));
    } while (ls >> tok);
  }
  if (!header) throw MalformedHeader("missing 'p cnf' header");
  if (!clause.empty()) f.clauses.push_back(std::move(clause));
  if (static_cast<long>(f.clauses.size()) != declared)
    throw MalformedHeader("header declares " + std::to_string(declared) + " clauses, found " +
                          std::to_string(f.clauses.size()));
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& a) {
  if (static_cast<int>(a.size()) != f.variables) return false;
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int l : c) sat = sat || a[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0);
    if (!sat) return false;
  }
  return true;
}

namespace {

void require_three_sat(const CnfFormula& f) {
  if (f.variables < 1 || f.clauses.empty()) throw ClauseArity("the reduction needs at least one variable and one clause");
  if (!f.three_sat()) throw ClauseArity("every clause must have exactly three literals");
}

void require_monotone(const CnfFormula& f) {
  if (f.variables < 1 || f.clauses.empty()) throw ClauseArity("the reduction needs at least one variable and one clause");
  for (const auto& c : f.clauses)
    if (c.size() != 2) throw ClauseArity("every clause must have exactly two literals");
  if (!f.monotone_two_sat()) throw NotMonotone("every literal must be positive");
}

// Instance under construction: named vertices, edges, precedence pairs.
struct Builder {
  Instance inst;
  std::vector<std::pair<int, int>> prec;

  int add(const std::string& name) { return inst.graph.add_vertex(name); }
  int at(const std::string& name) const { return inst.graph.index_of(name); }
  void edge(int u, int v, Weight w = 0) {
    if (!inst.graph.adjacent(u, v)) inst.graph.add_edge(u, v, w);
  }
  void before(int u, int v) { prec.emplace_back(u, v); }
  void finish(ProblemKind kind, Objective obj) {
    inst.order = close_order(inst.size(), prec);
    inst.kind = kind;
    inst.objective = obj;
  }
};

PiInstance gen_pi(const CnfFormula& f, bool cycle) {
  require_three_sat(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  Builder b;
  auto I = [](int v) { return std::to_string(v); };
  const int s = b.add("s"), s2 = b.add("s'");
  std::vector<int> x(static_cast<std::size_t>(n) + 1), nx(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    x[static_cast<std::size_t>(i)] = b.add("x" + I(i));
    nx[static_cast<std::size_t>(i)] = b.add("~x" + I(i));
  }
  struct Clause {
    int a1, a2, l[3], b1, b2;
  };
  std::vector<Clause> C(static_cast<std::size_t>(m) + 1);
  for (int j = 1; j <= m; ++j) {
    auto& c = C[static_cast<std::size_t>(j)];
    c.a1 = b.add("a1_" + I(j));
    c.a2 = b.add("a2_" + I(j));
    for (int k = 0; k < 3; ++k) c.l[k] = b.add("l" + I(k + 1) + "_" + I(j));
    c.b1 = b.add("b1_" + I(j));
    c.b2 = b.add("b2_" + I(j));
  }
  const int t = b.add("t"), t2 = b.add("t'");
  // backbone in path order
  std::vector<int> back;
  std::vector<int> r(static_cast<std::size_t>(n) + 1), u(static_cast<std::size_t>(m) + 1),
      v(static_cast<std::size_t>(m) + 1), w(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= n; ++i) back.push_back(r[static_cast<std::size_t>(i)] = b.add("r" + I(i)));
  for (int j = 1; j <= m; ++j) {
    back.push_back(u[static_cast<std::size_t>(j)] = b.add("u" + I(j)));
    back.push_back(v[static_cast<std::size_t>(j)] = b.add("v" + I(j)));
    back.push_back(w[static_cast<std::size_t>(j)] = b.add("w" + I(j)));
  }

  auto all = [&](std::initializer_list<int> A, std::initializer_list<int> B) {
    for (int p : A)
      for (int q : B) b.edge(p, q);
  };
  b.edge(s, s2);
  for (int i = 1; i <= n; ++i) b.edge(x[static_cast<std::size_t>(i)], nx[static_cast<std::size_t>(i)]);
  for (int j = 1; j <= m; ++j) {
    const auto& c = C[static_cast<std::size_t>(j)];
    all({c.l[0]}, {c.l[1], c.l[2]});
    b.edge(c.l[1], c.l[2]);
    b.edge(c.a1, c.a2);
    b.edge(c.b1, c.b2);
    all({c.a1, c.b1}, {c.l[0], c.l[1], c.l[2]});
    all({c.a2}, {c.l[1], c.l[2]});
    all({c.b2}, {c.l[0], c.l[2]});
  }
  b.edge(t, t2);
  // exits of each gadget to the entries of the next
  std::vector<std::vector<int>> entry, exit;
  entry.push_back({s, s2});
  exit.push_back({s, s2});
  for (int i = 1; i <= n; ++i) {
    entry.push_back({x[static_cast<std::size_t>(i)], nx[static_cast<std::size_t>(i)]});
    exit.push_back(entry.back());
  }
  for (int j = 1; j <= m; ++j) {
    const auto& c = C[static_cast<std::size_t>(j)];
    entry.push_back({c.a1, c.a2});
    exit.push_back({c.b1, c.b2});
  }
  entry.push_back({t, t2});
  exit.push_back({t, t2});
  for (std::size_t g = 0; g + 1 < entry.size(); ++g)
    for (int p : exit[g])
      for (int q : entry[g + 1]) b.edge(p, q);
  // backbone
  for (std::size_t k = 0; k + 1 < back.size(); ++k) b.edge(back[k], back[k + 1]);
  auto X = [&](int i) { return std::vector<int>{x[static_cast<std::size_t>(i)], nx[static_cast<std::size_t>(i)]}; };
  auto link = [&](int p, const std::vector<int>& qs) {
    for (int q : qs) b.edge(p, q);
  };
  link(r[0], {s, s2});
  link(r[0], X(1));
  for (int i = 1; i < n; ++i) {
    link(r[static_cast<std::size_t>(i)], X(i));
    link(r[static_cast<std::size_t>(i)], X(i + 1));
  }
  link(r[static_cast<std::size_t>(n)], X(n));
  link(r[static_cast<std::size_t>(n)], {C[1].a1, C[1].a2});
  for (int j = 1; j <= m; ++j) {
    const auto& c = C[static_cast<std::size_t>(j)];
    link(u[static_cast<std::size_t>(j)], {c.a1, c.a2, c.l[0], c.l[1], c.l[2]});
    link(v[static_cast<std::size_t>(j)], {c.l[0], c.l[1], c.l[2], c.b1, c.b2});
    link(w[static_cast<std::size_t>(j)], {c.b1, c.b2});
    if (j < m)
      link(w[static_cast<std::size_t>(j)], {C[static_cast<std::size_t>(j) + 1].a1, C[static_cast<std::size_t>(j) + 1].a2});
    else
      link(w[static_cast<std::size_t>(j)], {t, t2});
  }

  // precedence
  for (int q = 0; q < b.inst.size(); ++q)
    if (q != s) b.before(s, q);
  for (int q : back) b.before(t, q);
  b.before(t, s2);
  b.before(s2, t2);
  for (int j = 1; j <= m; ++j)
    for (int k = 0; k < 3; ++k) {
      const int lit = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)];
      const int var = std::abs(lit);
      b.before(lit > 0 ? x[static_cast<std::size_t>(var)] : nx[static_cast<std::size_t>(var)],
               C[static_cast<std::size_t>(j)].l[k]);
    }

  // second backbone for the cycle variant
  std::vector<int> copy(back.size());
  if (cycle) {
    const Graph g0 = b.inst.graph;
    std::vector<char> in_back(static_cast<std::size_t>(g0.size()), 0);
    for (int q : back) in_back[static_cast<std::size_t>(q)] = 1;
    for (std::size_t k = 0; k < back.size(); ++k) copy[k] = b.add(g0.name(back[k]) + "'");
    for (std::size_t k = 0; k < back.size(); ++k) {
      for (int q : g0.neighbour_list(back[k]))
        if (!in_back[static_cast<std::size_t>(q)]) b.edge(copy[k], q);
      b.edge(copy[k], back[k]);
      if (k + 1 < back.size()) {
        b.edge(copy[k], back[k + 1]);
        b.edge(copy[k], copy[k + 1]);
      }
      b.before(t2, copy[k]);
    }
  }
  b.finish(cycle ? ProblemKind::cycle : ProblemKind::path, Objective::decision);

  PiInstance out;
  auto& sg = out.sigma;
  sg = {s, s2, r[0]};
  if (cycle) sg.push_back(copy[0]);
  for (int i = 1; i <= n; ++i) {
    sg.push_back(x[static_cast<std::size_t>(i)]);
    sg.push_back(nx[static_cast<std::size_t>(i)]);
    sg.push_back(r[static_cast<std::size_t>(i)]);
    if (cycle) sg.push_back(copy[static_cast<std::size_t>(i)]);
  }
  for (int j = 1; j <= m; ++j) {
    const auto& c = C[static_cast<std::size_t>(j)];
    const std::size_t k = static_cast<std::size_t>(n + 1 + 3 * (j - 1));
    sg.insert(sg.end(), {c.a2, c.a1, u[static_cast<std::size_t>(j)]});
    if (cycle) sg.push_back(copy[k]);
    sg.insert(sg.end(), {c.l[1], c.l[2], c.l[0], v[static_cast<std::size_t>(j)]});
    if (cycle) sg.push_back(copy[k + 1]);
    sg.insert(sg.end(), {c.b1, c.b2, w[static_cast<std::size_t>(j)]});
    if (cycle) sg.push_back(copy[k + 2]);
  }
  sg.push_back(t);
  sg.push_back(t2);
  out.inst = std::move(b.inst);
  return out;
}

// Rectangular grid with "r.c" names; constraints by (row, col) pairs.
struct GridBuilder {
  GridInstance gi;
  std::vector<std::pair<int, int>> prec;

  GridBuilder(int w, int h) {
    gi.width = w;
    gi.height = h;
    auto& g = gi.inst.graph;
    for (int r = 1; r <= h; ++r)
      for (int c = 1; c <= w; ++c) g.add_vertex(std::to_string(r) + "." + std::to_string(c));
    for (int r = 1; r <= h; ++r)
      for (int c = 1; c <= w; ++c) {
        if (c < w) g.add_edge(gi.vertex(r, c), gi.vertex(r, c + 1));
        if (r < h) g.add_edge(gi.vertex(r, c), gi.vertex(r + 1, c));
      }
  }
  int v(int r, int c) const { return gi.vertex(r, c); }
  void gadget(const std::string& name, int first_col, int cols) {
    if (gi.column_gadget.size() < static_cast<std::size_t>(gi.width)) gi.column_gadget.resize(static_cast<std::size_t>(gi.width));
    for (int c = first_col; c < first_col + cols; ++c) gi.column_gadget[static_cast<std::size_t>(c - 1)] = name;
  }
  void before(int u, int w) {
    if (u != w) prec.emplace_back(u, w);
  }
  void first(int s) {
    for (int q = 0; q < gi.inst.size(); ++q) before(s, q);
  }
  void finish(ProblemKind kind, Objective obj) {
    gi.inst.order = close_order(gi.inst.size(), prec);
    gi.inst.kind = kind;
    gi.inst.objective = obj;
  }
};

}  // namespace

PiInstance gen_pi_path(const CnfFormula& f) { return gen_pi(f, false); }
PiInstance gen_pi_cycle(const CnfFormula& f) { return gen_pi(f, true); }

IntervalCheck check_proper_interval_ordering(const Graph& g, std::span<const int> ordering) {
  const int n = g.size();
  if (static_cast<int>(ordering.size()) != n) throw NotAPermutation("ordering length differs from the vertex count");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int v = ordering[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] >= 0) throw NotAPermutation("ordering is not a permutation");
    pos[static_cast<std::size_t>(v)] = i;
  }
  IntervalCheck out;
  for (auto [a, b] : g.edges()) {
    int i = pos[static_cast<std::size_t>(a)], k = pos[static_cast<std::size_t>(b)];
    if (i > k) std::swap(i, k);
    out.bandwidth = std::max(out.bandwidth, k - i);
    const int vi = ordering[static_cast<std::size_t>(i)], vk = ordering[static_cast<std::size_t>(k)];
    for (int j = i + 1; j < k; ++j) {
      const int vj = ordering[static_cast<std::size_t>(j)];
      if (!g.adjacent(vi, vj) || !g.adjacent(vj, vk)) {
        out.violation = "edge " + g.name(vi) + "-" + g.name(vk) + " spans " + g.name(vj) + " without the umbrella edges";
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------- grids

GridInstance gen_grid7_path(const CnfFormula& f) {
  require_three_sat(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  const int W = 6 * n + 4 * m + 2, H = 7;
  GridBuilder b(W, H);
  auto xo = [](int i) { return 2 + 6 * (i - 1); };           // column offset of X_i
  auto co = [&](int j) { return 2 + 6 * n + 4 * (j - 1); };  // column offset of C_j
  b.gadget("S", 1, 2);
  for (int i = 1; i <= n; ++i) b.gadget("X" + std::to_string(i), xo(i) + 1, 6);
  for (int j = 1; j <= m; ++j) b.gadget("C" + std::to_string(j), co(j) + 1, 4);
  const int s = b.v(3, xo(1) + 1), t = b.v(3, co(m) + 4);
  b.first(s);
  for (int r = 1; r <= H; ++r)
    for (int c = 1; c <= 2; ++c) b.before(t, b.v(r, c));
  for (int c = 1; c <= W; ++c)
    for (int r : {1, 2, 6, 7}) b.before(t, b.v(r, c));
  for (int i = 1; i <= n; ++i)
    for (int c = 2; c <= 5; ++c) b.before(t, b.v(4, xo(i) + c));
  for (int j = 1; j <= m; ++j)
    for (int a = 1; a <= 3; ++a) {
      const int lit = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      const int i = std::abs(lit);
      // negative variable vertices X_i[3,3..4], positive X_i[5,4..5]
      const int row = lit > 0 ? 5 : 3, c0 = lit > 0 ? 4 : 3;
      for (int dc = 0; dc < 2; ++dc)
        for (int lc = 2; lc <= 3; ++lc) b.before(b.v(row, xo(i) + c0 + dc), b.v(a + 2, co(j) + lc));
    }
  b.finish(ProblemKind::path, Objective::decision);
  return std::move(b.gi);
}

GridInstance gen_grid9_cycle(const CnfFormula& f) {
  require_three_sat(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  const int W = 2 + 8 * n + 6 * m + 2, H = 9;
  GridBuilder b(W, H);
  auto xo = [](int i) { return 2 + 8 * (i - 1); };
  auto co = [&](int j) { return 2 + 8 * n + 6 * (j - 1); };
  b.gadget("S", 1, 2);
  for (int i = 1; i <= n; ++i) b.gadget("X" + std::to_string(i), xo(i) + 1, 8);
  for (int j = 1; j <= m; ++j) b.gadget("C" + std::to_string(j), co(j) + 1, 6);
  b.gadget("T", W - 1, 2);
  const int s = b.v(7, xo(1) + 1), t = b.v(4, W - 1);
  b.first(s);
  for (int r = 1; r <= H; ++r)
    for (int c : {1, 2, W - 1, W}) b.before(t, b.v(r, c));
  for (int c = 1; c <= W; ++c)
    for (int r : {1, 2, 3, 8, 9}) b.before(t, b.v(r, c));
  for (int i = 1; i <= n; ++i)
    for (int r = 5; r <= 6; ++r)
      for (int c = 3; c <= 6; ++c) b.before(t, b.v(r, xo(i) + c));
  for (int j = 1; j <= m; ++j)
    for (int c = 2; c <= 3; ++c) b.before(t, b.v(7, co(j) + c));
  for (int j = 1; j <= m; ++j)
    for (int a = 1; a <= 3; ++a) {
      const int lit = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      const int i = std::abs(lit);
      // negative variable vertices X_i[4,4..5], positive X_i[7,4..5]
      const int row = lit > 0 ? 7 : 4;
      for (int dc = 0; dc < 2; ++dc)
        for (int lc = 3; lc <= 4; ++lc) b.before(b.v(row, xo(i) + 4 + dc), b.v(a + 3, co(j) + lc));
    }
  b.finish(ProblemKind::cycle, Objective::decision);
  return std::move(b.gi);
}

GridInstance gen_grid5_minpath(const CnfFormula& f, int k) {
  require_monotone(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  const int W = 6 * n + 7 * m + 1, H = 5;
  GridBuilder b(W, H);
  auto xo = [](int i) { return 6 * (i - 1); };
  auto co = [&](int j) { return 6 * n + 7 * (j - 1); };
  for (int i = 1; i <= n; ++i) b.gadget("X" + std::to_string(i), xo(i) + 1, 6);
  for (int j = 1; j <= m; ++j) b.gadget("C" + std::to_string(j), co(j) + 1, 7);
  b.gadget("T", W, 1);
  const int s = b.v(5, 1), t = b.v(5, W);
  b.first(s);
  for (int i = 1; i <= n; ++i) {
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 6; ++c) b.before(t, b.v(r, xo(i) + c));
    b.before(t, b.v(3, xo(i) + 2));
    b.before(t, b.v(4, xo(i) + 2));
    b.gi.inst.graph.set_weight(b.v(4, xo(i) + 3), b.v(3, xo(i) + 3), 1);
  }
  for (int j = 1; j <= m; ++j) {
    for (int r = 1; r <= 3; ++r)
      for (int c = 1; c <= 7; ++c) b.before(t, b.v(r, co(j) + c));
    b.before(b.v(4, co(j) + 3), t);
    for (int a = 1; a <= 2; ++a) {
      const int i = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      b.before(b.v(3, xo(i) + 3), b.v(4, co(j) + 2 * a));
    }
  }
  b.finish(ProblemKind::path, Objective::minimize);
  b.gi.budget = k;
  return std::move(b.gi);
}

GridInstance gen_grid6_mincycle(const CnfFormula& f, int k) {
  require_monotone(f);
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  const int W = 1 + 6 * n + 7 * m + 1, H = 6;
  GridBuilder b(W, H);
  auto xo = [](int i) { return 1 + 6 * (i - 1); };
  auto co = [&](int j) { return 1 + 6 * n + 7 * (j - 1); };
  b.gadget("S", 1, 1);
  for (int i = 1; i <= n; ++i) b.gadget("X" + std::to_string(i), xo(i) + 1, 6);
  for (int j = 1; j <= m; ++j) b.gadget("C" + std::to_string(j), co(j) + 1, 7);
  b.gadget("T", W, 1);
  const int s = b.v(6, 1), t = b.v(6, W);
  b.first(s);
  // rows 2..6 follow the height-5 constraints shifted down by one; row 1 copies row 2
  for (int i = 1; i <= n; ++i) {
    for (int r = 1; r <= 3; ++r)
      for (int c = 1; c <= 6; ++c) b.before(t, b.v(r, xo(i) + c));
    b.before(t, b.v(4, xo(i) + 2));
    b.before(t, b.v(5, xo(i) + 2));
    b.gi.inst.graph.set_weight(b.v(4, xo(i) + 3), b.v(5, xo(i) + 3), 1);
  }
  for (int j = 1; j <= m; ++j) {
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= 7; ++c) b.before(t, b.v(r, co(j) + c));
    b.before(b.v(5, co(j) + 4), t);
    for (int a = 1; a <= 2; ++a) {
      const int i = f.clauses[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a - 1)];
      b.before(b.v(4, xo(i) + 3), b.v(5, co(j) + 1 + 2 * a));
    }
  }
  b.finish(ProblemKind::cycle, Objective::minimize);
  b.gi.budget = k;
  return std::move(b.gi);
}

// ---------------------------------------------------------------- family

std::string to_string(ReductionId id) {
  switch (id) {
    case ReductionId::pi_path: return "pi-path";
    case ReductionId::pi_cycle: return "pi-cycle";
    case ReductionId::grid7_path: return "grid7-path";
    case ReductionId::grid9_cycle: return "grid9-cycle";
    case ReductionId::grid5_minpath: return "grid5-minpath";
    case ReductionId::grid6_mincycle: return "grid6-mincycle";
  }
  return "?";
}

const std::vector<ReductionId>& all_reductions() {
  static const std::vector<ReductionId> ids{ReductionId::pi_path,     ReductionId::pi_cycle,
                                            ReductionId::grid7_path,  ReductionId::grid9_cycle,
                                            ReductionId::grid5_minpath, ReductionId::grid6_mincycle};
  return ids;
}

std::optional<ReductionId> parse_reduction(std::string_view name) {
  for (auto id : all_reductions())
    if (to_string(id) == name) return id;
  return std::nullopt;
}

bool is_weighted(ReductionId id) { return id == ReductionId::grid5_minpath || id == ReductionId::grid6_mincycle; }

Instance generate(ReductionId id, const CnfFormula& f) {
  const int k = f.budget.value_or(f.variables);
  switch (id) {
    case ReductionId::pi_path: return gen_pi_path(f).inst;
    case ReductionId::pi_cycle: return gen_pi_cycle(f).inst;
    case ReductionId::grid7_path: return gen_grid7_path(f).inst;
    case ReductionId::grid9_cycle: return gen_grid9_cycle(f).inst;
    case ReductionId::grid5_minpath: return gen_grid5_minpath(f, k).inst;
    case ReductionId::grid6_mincycle: return gen_grid6_mincycle(f, k).inst;
  }
  throw Error("unknown reduction");
}

// ---------------------------------------------------------------- generic reductions

std::optional<Solution> cycle_via_path(const Instance& inst, const Solver& path_solver) {
  const int n = inst.size();
  if (n < 3) return std::nullopt;
  const auto& g = inst.graph;
  std::optional<Solution> best;
  for (int x = 0; x < n; ++x) {
    if (!inst.order.minimal(x)) continue;
    for (int y : g.neighbour_list(x)) {
      if (!inst.order.maximal(y)) continue;
      auto pairs = inst.order.pairs();
      for (int v = 0; v < n; ++v) {
        if (v != x) pairs.emplace_back(x, v);
        if (v != y) pairs.emplace_back(v, y);
      }
      Instance sub;
      sub.graph = g;
      sub.order = close_order(n, pairs);
      sub.kind = ProblemKind::path;
      sub.objective = inst.objective;
      auto p = path_solver(sub);
      if (!p) continue;
      Solution c{p->order, p->weight + g.weight(x, y), ProblemKind::cycle};
      if (!best || c.weight < best->weight) best = std::move(c);
      if (inst.objective == Objective::decision) return best;
    }
  }
  return best;
}

std::optional<Solution> path_via_cycle(const Instance& inst, const Solver& cycle_solver) {
  const int n = inst.size();
  if (n == 0) return std::nullopt;
  if (n == 1) return Solution{{0}, 0, ProblemKind::path};
  Instance ext;
  for (int v = 0; v < n; ++v) ext.graph.add_vertex(inst.graph.name(v));
  std::string uname = "universal";
  while (inst.graph.find(uname)) uname += "'";
  const int u = ext.graph.add_vertex(uname);
  for (auto [a, b] : inst.graph.edges()) ext.graph.add_edge(a, b, inst.graph.weight(a, b));
  for (int v = 0; v < n; ++v) ext.graph.add_edge(v, u, 0);
  auto pairs = inst.order.pairs();
  for (int v = 0; v < n; ++v) pairs.emplace_back(v, u);
  ext.order = close_order(n + 1, pairs);
  ext.kind = ProblemKind::cycle;
  ext.objective = inst.objective;
  auto c = cycle_solver(ext);
  if (!c) return std::nullopt;
  Solution p{{}, c->weight, ProblemKind::path};
  for (int v : c->order)
    if (v != u) p.order.push_back(v);
  return p;
}

}  // namespace pohp::forge
