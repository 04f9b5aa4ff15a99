#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pohp/oracle.hpp"

using namespace pohp;
using namespace pohp::oracle;
using testing_helpers::make;
using testing_helpers::seq;

TEST_CASE("oracle examples") {
  auto p3 = make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {{"b", "a"}, {"b", "c"}});
  CHECK(oracle_solve(p3).status == Status::infeasible);

  auto c4 = make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, {{"a", "c"}, {"b", "d"}},
                 ProblemKind::cycle);
  auto r = oracle_solve(c4);
  REQUIRE(r.status == Status::feasible);
  CHECK(validate_solution(c4, *r.solution).valid());

  auto k3 = make({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 2}, {"c", "a", 3}}, {{"a", "b"}});
  r = oracle_solve(k3);
  REQUIRE(r.status == Status::feasible);
  CHECK(r.solution->order == seq(k3, {"a", "b", "c"}));
  CHECK(r.solution->weight == 3);
}

TEST_CASE("oracle degenerate sizes") {
  CHECK(oracle_solve(make({}, {}, {})).status == Status::infeasible);
  CHECK(oracle_solve(make({"x"}, {}, {})).status == Status::feasible);
  CHECK(oracle_solve(make({"x"}, {}, {}, ProblemKind::cycle)).status == Status::infeasible);
  CHECK(oracle_solve(make({"x", "y"}, {{"x", "y"}}, {}, ProblemKind::cycle)).status == Status::infeasible);
}

TEST_CASE("oracle reports unknown when capped") {
  Instance inst;
  for (int i = 0; i < 11; ++i) inst.graph.add_vertex(std::to_string(i));
  for (int u = 0; u < 11; ++u)
    for (int v = u + 1; v < 11; ++v) inst.graph.add_edge(u, v, (u * v) % 5);
  inst.order = close_order(11, {});
  inst.kind = ProblemKind::cycle;
  auto r = oracle_solve(inst, Limits{1000, 60.0});
  CHECK(r.status == Status::unknown);
}

namespace {

Instance random_instance(std::mt19937& rng, int n, ProblemKind kind) {
  Instance inst;
  for (int i = 0; i < n; ++i) inst.graph.add_vertex("v" + std::to_string(i));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() % 100 < 55) inst.graph.add_edge(u, v, static_cast<Weight>(rng() % 10));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> prec;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 100 < 15) prec.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  inst.order = close_order(n, prec);
  inst.kind = kind;
  return inst;
}

}  // namespace

TEST_CASE("oracle enumeration equals the all-permutations filter") {
  std::mt19937 rng(5);
  for (int t = 0; t < 120; ++t) {
    int n = 3 + static_cast<int>(rng() % 6);
    auto inst = random_instance(rng, n, t % 2 ? ProblemKind::cycle : ProblemKind::path);
    inst.objective = Objective::decision;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    std::uint64_t naive = 0;
    Weight best = std::numeric_limits<Weight>::max();
    do {
      Solution s{p, 0, inst.kind};
      auto rep = validate_solution(inst, s);
      if (rep.valid()) {
        ++naive;
        best = std::min(best, rep.weight);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    std::uint64_t seen = 0;
    auto count = enumerate_solutions(inst, [&](const std::vector<int>& s) {
      ++seen;
      CHECK(validate_solution(inst, Solution{s, 0, inst.kind}).valid());
    });
    CHECK(count == naive);
    CHECK(seen == naive);

    inst.objective = Objective::minimize;
    auto r = oracle_solve(inst);
    if (naive == 0) {
      CHECK(r.status == Status::infeasible);
    } else {
      REQUIRE(r.status == Status::feasible);
      CHECK(r.solution->weight == best);
      CHECK(validate_solution(inst, *r.solution).valid());
    }
  }
}

TEST_CASE("adding constraints never creates feasibility") {
  std::mt19937 rng(9);
  for (int t = 0; t < 60; ++t) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto inst = random_instance(rng, n, t % 2 ? ProblemKind::cycle : ProblemKind::path);
    auto base = oracle_solve(inst).status;
    auto pairs = inst.order.pairs();
    int u = static_cast<int>(rng() % static_cast<unsigned>(n)), v = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (u == v || inst.order.less(v, u)) continue;
    pairs.emplace_back(u, v);
    inst.order = close_order(n, pairs);
    auto more = oracle_solve(inst).status;
    if (base == Status::infeasible) CHECK(more == Status::infeasible);
  }
}
