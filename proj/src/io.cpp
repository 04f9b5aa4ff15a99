#include "pohp/io.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace pohp::io {

ParseError::ParseError(int l, const std::string& what)
    : Error(l > 0 ? "line " + std::to_string(l) + ": " + what : what), line(l) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

// Non-empty lines split on whitespace, '#' comments removed.
std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream ls{std::string(raw)};
    Line l{number, {}};
    for (std::string tok; ls >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

void expect_header(const std::vector<Line>& ls, const char* magic) {
  if (ls.empty() || ls[0].tokens.size() != 2 || ls[0].tokens[0] != magic)
    throw ParseError(ls.empty() ? 0 : ls[0].number, std::string("expected header '") + magic + " 1'");
  if (ls[0].tokens[1] != "1") throw ParseError(ls[0].number, "unsupported format version " + ls[0].tokens[1]);
}

void arity(const Line& l, std::size_t lo, std::size_t hi) {
  if (l.tokens.size() < lo || l.tokens.size() > hi)
    throw ParseError(l.number, "wrong number of fields for '" + l.tokens[0] + "'");
}

Weight integer(const Line& l, const std::string& tok) {
  Weight w = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, w);
  if (ec != std::errc{} || p != last) throw ParseError(l.number, "not an integer: " + tok);
  return w;
}

int vertex(const Line& l, const Graph& g, const std::string& name) {
  if (auto v = g.find(name)) return *v;
  throw ParseError(l.number, "unknown vertex " + name);
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::feasible: return "feasible";
    case Status::infeasible: return "infeasible";
    case Status::unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------- instances

Instance parse_instance(std::string_view text) {
  const auto ls = lines_of(text);
  expect_header(ls, "pohi");
  Instance inst;
  inst.objective = Objective::minimize;
  bool have_kind = false;
  std::vector<std::pair<int, int>> prec;
  int last_p = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    const auto& op = l.tokens[0];
    if (op == "problem") {
      arity(l, 2, 2);
      if (have_kind) throw ParseError(l.number, "duplicate 'problem' line");
      if (l.tokens[1] == "path") {
        inst.kind = ProblemKind::path;
      } else if (l.tokens[1] == "cycle") {
        inst.kind = ProblemKind::cycle;
      } else {
        throw ParseError(l.number, "problem must be 'path' or 'cycle'");
      }
      have_kind = true;
    } else if (op == "v") {
      arity(l, 2, 2);
      if (inst.graph.find(l.tokens[1])) throw ParseError(l.number, "duplicate vertex " + l.tokens[1]);
      inst.graph.add_vertex(l.tokens[1]);
    } else if (op == "e") {
      arity(l, 3, 4);
      const int u = vertex(l, inst.graph, l.tokens[1]), v = vertex(l, inst.graph, l.tokens[2]);
      if (u == v) throw ParseError(l.number, "self-loop at " + l.tokens[1]);
      if (inst.graph.adjacent(u, v)) throw ParseError(l.number, "duplicate edge " + l.tokens[1] + " " + l.tokens[2]);
      inst.graph.add_edge(u, v, l.tokens.size() == 4 ? integer(l, l.tokens[3]) : 0);
    } else if (op == "p") {
      arity(l, 3, 3);
      const int u = vertex(l, inst.graph, l.tokens[1]), v = vertex(l, inst.graph, l.tokens[2]);
      if (u == v) throw ParseError(l.number, "vertex cannot precede itself: " + l.tokens[1]);
      prec.emplace_back(u, v);
      last_p = l.number;
    } else {
      throw ParseError(l.number, "unknown record '" + op + "'");
    }
  }
  if (!have_kind) throw ParseError(0, "missing 'problem path|cycle' line");
  try {
    inst.order = close_order(inst.size(), prec);
  } catch (const CyclicOrder& e) {
    throw ParseError(last_p, std::string("precedence constraints are cyclic: ") + e.what());
  }
  return inst;
}

std::string emit_instance(const Instance& inst) {
  const auto& g = inst.graph;
  std::ostringstream out;
  out << "pohi 1\nproblem " << (inst.kind == ProblemKind::cycle ? "cycle" : "path") << '\n';
  for (int v = 0; v < g.size(); ++v) out << "v " << g.name(v) << '\n';
  for (auto [a, b] : g.edges()) {
    out << "e " << g.name(a) << ' ' << g.name(b);
    if (const Weight w = g.weight(a, b)) out << ' ' << w;
    out << '\n';
  }
  // covering pairs only; the closure is recomputed on parse
  for (auto [u, v] : inst.order.pairs())
    if (!inst.order.succ(u).intersects(inst.order.pred(v))) out << "p " << g.name(u) << ' ' << g.name(v) << '\n';
  return out.str();
}

// ---------------------------------------------------------------- decompositions

Decomposition parse_decomposition(std::string_view text, const Graph& g) {
  const auto ls = lines_of(text);
  expect_header(ls, "pohd");
  std::optional<bool> tree;
  std::map<std::string, int> ids;
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;
  std::optional<int> root;
  int root_line = 0;
  auto bag_id = [&](const Line& l, const std::string& id) {
    auto it = ids.find(id);
    if (it == ids.end()) throw ParseError(l.number, "unknown bag " + id);
    return it->second;
  };
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    const auto& op = l.tokens[0];
    if (op == "kind") {
      arity(l, 2, 2);
      if (tree) throw ParseError(l.number, "duplicate 'kind' line");
      if (l.tokens[1] != "path" && l.tokens[1] != "tree") throw ParseError(l.number, "kind must be 'path' or 'tree'");
      tree = l.tokens[1] == "tree";
      continue;
    }
    if (!tree) throw ParseError(l.number, "'kind' must come before the bags");
    if (op == "bag") {
      arity(l, 2, l.tokens.size());
      if (!ids.emplace(l.tokens[1], static_cast<int>(bags.size())).second)
        throw ParseError(l.number, "duplicate bag " + l.tokens[1]);
      VertexSet b = g.empty_set();
      for (std::size_t k = 2; k < l.tokens.size(); ++k) b.set(vertex(l, g, l.tokens[k]));
      bags.push_back(std::move(b));
    } else if (op == "edge" && *tree) {
      arity(l, 3, 3);
      edges.emplace_back(bag_id(l, l.tokens[1]), bag_id(l, l.tokens[2]));
    } else if (op == "root" && *tree) {
      arity(l, 2, 2);
      if (root) throw ParseError(l.number, "duplicate 'root' line");
      root = bag_id(l, l.tokens[1]);
      root_line = l.number;
    } else {
      throw ParseError(l.number, "unknown record '" + op + "'");
    }
  }
  if (!tree) throw ParseError(0, "missing 'kind path|tree' line");
  if (bags.empty()) throw ParseError(0, "decomposition has no bags");
  if (!*tree) return decomp::PathDecomposition{std::move(bags)};

  decomp::TreeDecomposition d;
  d.parent.assign(bags.size(), -1);
  for (auto [p, c] : edges) {
    if (d.parent[static_cast<std::size_t>(c)] >= 0 || p == c)
      throw ParseError(0, "bag tree edges do not form a rooted tree");
    d.parent[static_cast<std::size_t>(c)] = p;
  }
  if (!root && bags.size() > 1) throw ParseError(0, "tree decomposition needs a 'root' line");
  d.root = root.value_or(0);
  if (d.parent[static_cast<std::size_t>(d.root)] >= 0)
    throw ParseError(root_line, "root bag has a parent");
  if (edges.size() + 1 != bags.size()) throw ParseError(0, "bag tree edges do not form a rooted tree");
  // every bag must reach the root
  for (std::size_t b = 0; b < bags.size(); ++b) {
    int at = static_cast<int>(b);
    for (std::size_t steps = 0; at != d.root; ++steps) {
      at = d.parent[static_cast<std::size_t>(at)];
      if (at < 0 || steps > bags.size()) throw ParseError(0, "bag tree edges do not form a rooted tree");
    }
  }
  d.bags = std::move(bags);
  return d;
}

std::string emit_decomposition(const Decomposition& d, const Graph& g) {
  std::ostringstream out;
  out << "pohd 1\n";
  auto bag = [&](std::size_t i, const VertexSet& b) {
    out << "bag b" << i + 1;
    b.for_each([&](int v) { out << ' ' << g.name(v); });
    out << '\n';
  };
  if (const auto* p = std::get_if<decomp::PathDecomposition>(&d)) {
    out << "kind path\n";
    for (std::size_t i = 0; i < p->bags.size(); ++i) bag(i, p->bags[i]);
  } else {
    const auto& t = std::get<decomp::TreeDecomposition>(d);
    out << "kind tree\n";
    for (std::size_t i = 0; i < t.bags.size(); ++i) bag(i, t.bags[i]);
    for (std::size_t i = 0; i < t.parent.size(); ++i)
      if (t.parent[i] >= 0) out << "edge b" << t.parent[i] + 1 << " b" << i + 1 << '\n';
    out << "root b" << t.root + 1 << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- solutions

SolutionFile parse_solution(std::string_view text, const Graph& g) {
  const auto ls = lines_of(text);
  SolutionFile s;
  bool have_status = false, have_order = false;
  for (const auto& l : ls) {
    const auto& op = l.tokens[0];
    if (op == "status") {
      arity(l, 2, 2);
      if (have_status) throw ParseError(l.number, "duplicate 'status' line");
      const auto& v = l.tokens[1];
      if (v == "feasible") {
        s.status = Status::feasible;
      } else if (v == "infeasible") {
        s.status = Status::infeasible;
      } else if (v == "unknown") {
        s.status = Status::unknown;
      } else {
        throw ParseError(l.number, "status must be feasible, infeasible or unknown");
      }
      have_status = true;
    } else if (op == "weight") {
      arity(l, 2, 2);
      if (s.weight) throw ParseError(l.number, "duplicate 'weight' line");
      s.weight = integer(l, l.tokens[1]);
    } else if (op == "order") {
      if (have_order) throw ParseError(l.number, "duplicate 'order' line");
      for (std::size_t k = 1; k < l.tokens.size(); ++k) s.order.push_back(vertex(l, g, l.tokens[k]));
      have_order = true;
    } else {
      throw ParseError(l.number, "unknown record '" + op + "'");
    }
  }
  if (!have_status) throw ParseError(0, "missing 'status' line");
  if (s.status == Status::feasible && !have_order) throw ParseError(0, "feasible solution without an 'order' line");
  return s;
}

std::string emit_solution(const SolutionFile& s, const Graph& g) {
  std::ostringstream out;
  out << "status " << to_string(s.status) << '\n';
  if (s.weight) out << "weight " << *s.weight << '\n';
  if (s.status == Status::feasible) {
    out << "order";
    for (int v : s.order) out << ' ' << g.name(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace pohp::io
