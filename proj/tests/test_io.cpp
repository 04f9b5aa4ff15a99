#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pohp/forge.hpp"
#include "pohp/harness.hpp"
#include "pohp/io.hpp"
#include "random_instances.hpp"

using namespace pohp;
using testing_helpers::make;

namespace {

bool same_instance(const Instance& a, const Instance& b) {
  if (a.size() != b.size() || a.kind != b.kind) return false;
  for (int v = 0; v < a.size(); ++v)
    if (a.graph.name(v) != b.graph.name(v)) return false;
  if (a.graph.edges() != b.graph.edges()) return false;
  for (auto [u, v] : a.graph.edges())
    if (a.graph.weight(u, v) != b.graph.weight(u, v)) return false;
  return a.order.pairs() == b.order.pairs();
}

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  std::mt19937 rng(77);
  for (int i = 0; i < 24; ++i) {
    const auto kind = i % 2 ? ProblemKind::cycle : ProblemKind::path;
    out.push_back(testing_helpers::random_window_instance(rng, 9 + static_cast<int>(rng() % 4), kind == ProblemKind::cycle ? 5 : 4, kind).inst);
    out.push_back(testing_helpers::random_ktree_instance(rng, 9 + static_cast<int>(rng() % 4), kind == ProblemKind::cycle ? 3 : 2, kind, 85));
  }
  const forge::CnfFormula f3{2, {{1, -2, 2}}, {}}, f2{2, {{1, 2}}, {}};
  for (auto id : forge::all_reductions()) out.push_back(forge::generate(id, forge::is_weighted(id) ? f2 : f3));
  return out;
}

}  // namespace

TEST_CASE("instance format") {
  const std::string text =
      "pohi 1\n# a comment\nproblem cycle\nv a\nv b\nv c  # trailing\nv d\n"
      "e a b 3\ne b c\ne c d\ne d a -2\np a c\np b d\n";
  auto inst = io::parse_instance(text);
  CHECK(inst.size() == 4);
  CHECK(inst.kind == ProblemKind::cycle);
  CHECK(inst.graph.weight(0, 1) == 3);
  CHECK(inst.graph.weight(3, 0) == -2);
  CHECK(inst.order.less(0, 2));
  CHECK(io::emit_instance(io::parse_instance(io::emit_instance(inst))) == io::emit_instance(inst));

  auto line_of = [](const std::string& t) {
    try {
      io::parse_instance(t);
    } catch (const io::ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("pohi 2\nproblem path\n") == 1);
  CHECK(line_of("pohx 1\n") == 1);
  CHECK(line_of("pohi 1\nproblem path\nv a\nv a\n") == 4);
  CHECK(line_of("pohi 1\nproblem path\nv a\n\ne a b\n") == 5);
  CHECK(line_of("pohi 1\nproblem path\nv a\nv b\ne a b x\n") == 5);
  CHECK(line_of("pohi 1\nproblem path\nv a\nv b\ne a b\ne b a\n") == 6);
  CHECK(line_of("pohi 1\nproblem path\nv a\ne a a\n") == 4);
  CHECK(line_of("pohi 1\nproblem tour\n") == 2);
  CHECK(line_of("pohi 1\nproblem path\nq a\n") == 3);
  CHECK(line_of("pohi 1\nproblem path\nv a\nv b\np a b\np b a\n") == 6);
  CHECK(line_of("pohi 1\nv a\n") == 0);
}

TEST_CASE("decomposition and solution formats") {
  auto inst = make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, {}, ProblemKind::cycle);
  auto p = io::parse_decomposition("pohd 1\nkind path\nbag x a b d\nbag y b c d\n", inst.graph);
  REQUIRE(std::holds_alternative<decomp::PathDecomposition>(p));
  CHECK(std::get<decomp::PathDecomposition>(p).bags.size() == 2);
  CHECK(decomp::validate(std::get<decomp::PathDecomposition>(p), inst.graph).width == 2);

  auto t = io::parse_decomposition("pohd 1\nkind tree\nbag r a b d\nbag k b c d\nedge r k\nroot r\n", inst.graph);
  REQUIRE(std::holds_alternative<decomp::TreeDecomposition>(t));
  const auto& td = std::get<decomp::TreeDecomposition>(t);
  CHECK(td.root == 0);
  CHECK(td.parent == std::vector<int>{-1, 0});
  for (const auto& d : {p, t}) {
    const auto once = io::emit_decomposition(d, inst.graph);
    CHECK(io::emit_decomposition(io::parse_decomposition(once, inst.graph), inst.graph) == once);
  }

  CHECK_THROWS_AS(io::parse_decomposition("pohd 1\nbag x a\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_decomposition("pohd 1\nkind path\nbag x a z\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_decomposition("pohd 1\nkind path\nedge x y\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_decomposition("pohd 1\nkind tree\nbag x a\nbag y b\nedge x y\nedge y x\nroot x\n", inst.graph),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_decomposition("pohd 1\nkind tree\nbag x a\nbag y b\n", inst.graph), io::ParseError);

  auto s = io::parse_solution("status feasible\nweight 4\norder a b c d\n", inst.graph);
  CHECK(s.status == io::Status::feasible);
  CHECK(s.weight == 4);
  CHECK(s.order == std::vector<int>{0, 1, 2, 3});
  CHECK(io::emit_solution(s, inst.graph) == "status feasible\nweight 4\norder a b c d\n");
  CHECK(io::emit_solution(io::parse_solution("status infeasible\n", inst.graph), inst.graph) == "status infeasible\n");
  CHECK_THROWS_AS(io::parse_solution("weight 3\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_solution("status maybe\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_solution("status feasible\n", inst.graph), io::ParseError);
  CHECK_THROWS_AS(io::parse_solution("status feasible\norder a q\n", inst.graph), io::ParseError);
}

TEST_CASE("round trip over a corpus of at least 50 files per format") {
  const auto all = corpus();
  REQUIRE(all.size() >= 50);
  int decomps = 0, sols = 0;
  for (const auto& inst : all) {
    const auto text = io::emit_instance(inst);
    const auto back = io::parse_instance(text);
    CHECK(same_instance(inst, back));
    CHECK(io::emit_instance(back) == text);

    const bool tree = (decomps % 2) == 1;
    if (auto d = harness::decompose(inst.graph, inst.size() > 60 ? 9 : 4, tree)) {
      const auto dt = io::emit_decomposition(*d, inst.graph);
      CHECK(io::emit_decomposition(io::parse_decomposition(dt, inst.graph), inst.graph) == dt);
      ++decomps;
    }
    io::SolutionFile sf;
    sf.status = io::Status::feasible;
    sf.weight = 0;
    for (int v = inst.size() - 1; v >= 0; --v) sf.order.push_back(v);
    const auto st = io::emit_solution(sf, inst.graph);
    CHECK(io::emit_solution(io::parse_solution(st, inst.graph), inst.graph) == st);
    ++sols;
  }
  CHECK(decomps >= 50);
  CHECK(sols >= 50);
}

TEST_CASE("solve dispatch agrees with the oracle and is deterministic") {
  std::mt19937 rng(88);
  int agreed = 0;
  for (int i = 0; i < 60; ++i) {
    const auto kind = i % 2 ? ProblemKind::cycle : ProblemKind::path;
    const int n = 6 + static_cast<int>(rng() % 5);
    const auto inst = i % 4 < 2 ? testing_helpers::random_window_instance(rng, n, kind == ProblemKind::cycle ? 5 : 4, kind).inst
                                : testing_helpers::random_ktree_instance(rng, n, kind == ProblemKind::cycle ? 3 : 2, kind, 85);
    harness::SolveOptions o;
    o.method = harness::Method::oracle;
    const auto ref = harness::solve(inst, o);
    REQUIRE(ref.file.status != io::Status::unknown);
    for (auto m : {harness::Method::pw, harness::Method::tw, harness::Method::automatic}) {
      o.method = m;
      const auto got = harness::solve(inst, o);
      if (got.file.status == io::Status::unknown) continue;  // width outside the solver's range
      CHECK(got.file.status == ref.file.status);
      CHECK(got.file.weight == ref.file.weight);
      CHECK(io::emit_solution(got.file, inst.graph) == io::emit_solution(harness::solve(inst, o).file, inst.graph));
      ++agreed;
    }
  }
  CHECK(agreed > 100);
}

TEST_CASE("solve reports unsupported widths as unknown") {
  // K10: both widths are 9
  Instance k10;
  for (int v = 0; v < 10; ++v) k10.graph.add_vertex("v" + std::to_string(v));
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) k10.graph.add_edge(u, v);
  k10.order = close_order(10, std::vector<std::pair<int, int>>{});
  k10.kind = ProblemKind::cycle;
  harness::SolveOptions o;
  o.method = harness::Method::automatic;
  const auto r = harness::solve(k10, o);
  CHECK(r.file.status == io::Status::unknown);
  CHECK_FALSE(r.note.empty());

  // a supplied decomposition that is too wide
  auto c4 = make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, {}, ProblemKind::path);
  o.decomposition = io::parse_decomposition("pohd 1\nkind tree\nbag x a b c d\n", c4.graph);
  CHECK(harness::solve(c4, o).file.status == io::Status::unknown);
  // and one that misses an edge
  o.decomposition = io::parse_decomposition("pohd 1\nkind path\nbag x a b\nbag y c d\n", c4.graph);
  CHECK_THROWS_AS(harness::solve(c4, o), decomp::DecompositionInvalid);
}
