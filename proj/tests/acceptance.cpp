// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.
// Optional arguments select criteria by number (all by default).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "pohp/decomp.hpp"
#include "pohp/forge.hpp"
#include "pohp/oracle.hpp"
#include "pohp/pw.hpp"
#include "pohp/tw.hpp"
#include "random_instances.hpp"
#include "segment_walk.hpp"

using namespace pohp;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  int failures = 0;
  void line(int id, bool pass, const std::string& detail) {
    std::printf("criterion %d %s: %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += !pass;
  }
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

// table-size and uniqueness tallies shared by criteria 1, 2, 7, 8, 9
struct Tally {
  double worst_pw_ratio = 0;  // distinct mappings / n^2
  double worst_tw_ratio = 0;  // distinct mappings / n
  double raw_pw_ratio = 0, raw_tw_ratio = 0;  // over every non-empty entry, reachable from the end or not
  std::uint64_t pw_instances = 0, tw_instances = 0;
  std::uint64_t conflicts = 0, runs = 0;
};

oracle::Result reference(const Instance& inst) { return oracle::oracle_solve(inst, {~0ull, 60.0}); }

struct Agreement {
  int total = 0, agree = 0, feasible = 0, unknown = 0;
  std::string first_mismatch;
  void record(const oracle::Result& expect, const std::optional<Solution>& got, const Instance& inst, int trial) {
    ++total;
    if (expect.status == oracle::Status::unknown) {
      ++unknown;
      return;
    }
    const bool ef = expect.status == oracle::Status::feasible;
    bool ok = ef == got.has_value();
    if (ok && ef) {
      ok = got->weight == expect.solution->weight && validate_solution(inst, *got).valid();
      ++feasible;
    }
    agree += ok;
    if (!ok && first_mismatch.empty())
      first_mismatch = fmt("; first mismatch at trial %d (n=%d, %s)", trial, inst.size(),
                           inst.kind == ProblemKind::cycle ? "cycle" : "path");
  }
};

// ---------------------------------------------------------------- criterion 1

void criterion1(Report& rep, Tally& tally) {
  const auto t0 = Clock::now();
  std::mt19937 rng(1001);
  Agreement a;
  for (int trial = 0; trial < 500; ++trial) {
    const bool cyc = trial % 2 == 0;
    const int n = 6 + static_cast<int>(rng() % 7);
    auto wi = testing_helpers::random_window_instance(rng, n, cyc ? 5 : 4, cyc ? ProblemKind::cycle : ProblemKind::path);
    const auto expect = reference(wi.inst);
    const auto got = cyc ? pw::solve_cycle_pw4(wi.inst, wi.decomposition, {true})
                         : pw::solve_path_pw3(wi.inst, decomp::PathDecomposition{wi.decomposition.bags}, {true});
    a.record(expect, got.solution, wi.inst, trial);
    tally.worst_pw_ratio = std::max(tally.worst_pw_ratio, static_cast<double>(got.stats.distinct_mappings) / (n * n));
    tally.raw_pw_ratio = std::max(tally.raw_pw_ratio, static_cast<double>(got.stats.distinct_mappings_raw) / (n * n));
    ++tally.pw_instances;
    tally.conflicts += got.stats.mapping_conflicts;
    ++tally.runs;
  }
  const double secs = since(t0);
  rep.line(1, a.agree == a.total && secs < 300,
           fmt("%d/%d instances agree with the oracle (%d feasible, %d oracle timeouts), %.1f s of 300 s%s", a.agree,
               a.total, a.feasible, a.unknown, secs, a.first_mismatch.c_str()));
}

// ---------------------------------------------------------------- criterion 2

void criterion2(Report& rep, Tally& tally) {
  const auto t0 = Clock::now();
  std::mt19937 rng(2002);
  Agreement a;
  int joins = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const bool cyc = trial % 2 == 0;
    const int n = 6 + static_cast<int>(rng() % 7);
    const auto inst =
        testing_helpers::random_ktree_instance(rng, n, cyc ? 3 : 2, cyc ? ProblemKind::cycle : ProblemKind::path, 85);
    const auto expect = reference(inst);
    const auto d = decomp::find_tree_decomposition(inst.graph, cyc ? 3 : 2);
    if (!d) {
      ++a.total;
      if (a.first_mismatch.empty()) a.first_mismatch = fmt("; no decomposition found at trial %d", trial);
      continue;
    }
    tw::Result got;
    if (cyc) {
      const auto nd = decomp::normalize_tree(*d, inst.graph);
      for (const auto& node : nd.nodes) joins += node.kind == decomp::NodeKind::join;
      got = tw::solve_cycle_tw3(inst, nd, {true});
    } else {
      got = tw::solve_path_tw2(inst, *d, {true});
    }
    a.record(expect, got.solution, inst, trial);
    tally.worst_tw_ratio = std::max(tally.worst_tw_ratio, static_cast<double>(got.stats.distinct_mappings) / n);
    tally.raw_tw_ratio = std::max(tally.raw_tw_ratio, static_cast<double>(got.stats.distinct_mappings_raw) / n);
    ++tally.tw_instances;
    tally.conflicts += got.stats.mapping_conflicts;
    ++tally.runs;
  }
  rep.line(2, a.agree == a.total,
           fmt("%d/%d instances agree with the oracle (%d feasible, %d oracle timeouts, %d join nodes), %.1f s%s", a.agree,
               a.total, a.feasible, a.unknown, joins, since(t0), a.first_mismatch.c_str()));
}

// ---------------------------------------------------------------- criterion 3

void criterion3(Report& rep) {
  const auto t0 = Clock::now();
  std::mt19937 rng(3003);
  segment_walk::WalkStats st;
  int trials = 0;
  for (; trials < 200; ++trials) {
    const int n = 4 + static_cast<int>(rng() % 7);
    Instance inst;
    for (int v = 0; v < n; ++v) inst.graph.add_vertex("v" + std::to_string(v));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) inst.graph.add_edge(u, v, static_cast<Weight>(rng() % 10));
    inst.order = testing_helpers::random_order(rng, n, 0.4);
    segment_walk::walk(inst, rng, st);
  }
  rep.line(3, st.discrepancies == 0 && trials >= 200,
           fmt("%d walks, %ld moves checked against order_feasible, %ld accepted, %ld discrepancies, %.1f s", trials,
               st.checked, st.accepted, st.discrepancies, since(t0)));
}

// ---------------------------------------------------------------- criterion 4

std::vector<forge::CnfFormula> small_formulas() {
  std::vector<forge::CnfFormula> out;
  for (int n = 1; n <= 2; ++n) {
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) lits.insert(lits.end(), {v, -v});
    std::sort(lits.begin(), lits.end());
    // clauses as sorted literal multisets
    std::vector<std::vector<int>> clauses;
    const int L = static_cast<int>(lits.size());
    for (int a = 0; a < L; ++a)
      for (int b = a; b < L; ++b)
        for (int c = b; c < L; ++c)
          clauses.push_back({lits[static_cast<std::size_t>(a)], lits[static_cast<std::size_t>(b)], lits[static_cast<std::size_t>(c)]});
    const int C = static_cast<int>(clauses.size());
    for (int i = 0; i < C; ++i) out.push_back({n, {clauses[static_cast<std::size_t>(i)]}, {}});
    for (int i = 0; i < C; ++i)
      for (int j = i; j < C; ++j)
        out.push_back({n, {clauses[static_cast<std::size_t>(i)], clauses[static_cast<std::size_t>(j)]}, {}});
  }
  return out;
}

bool brute_sat(const forge::CnfFormula& f) {
  for (int mask = 0; mask < (1 << f.variables); ++mask) {
    std::vector<bool> a(static_cast<std::size_t>(f.variables));
    for (int i = 0; i < f.variables; ++i) a[static_cast<std::size_t>(i)] = mask >> i & 1;
    if (forge::satisfies(f, a)) return true;
  }
  return false;
}

void criterion4(Report& rep) {
  const auto t0 = Clock::now();
  const auto formulas = small_formulas();
  int done = 0, mismatch = 0, sat = 0, max_vertices = 0;
  double slowest = 0;
  for (const auto& f : formulas) {
    const auto inst = forge::gen_pi_path(f).inst;
    max_vertices = std::max(max_vertices, inst.size());
    const auto t1 = Clock::now();
    const auto r = oracle::oracle_solve(inst, {~0ull, 60.0});
    slowest = std::max(slowest, since(t1));
    if (r.status == oracle::Status::unknown) continue;
    ++done;
    const bool s = brute_sat(f);
    sat += s;
    mismatch += s != (r.status == oracle::Status::feasible);
  }
  const int total = static_cast<int>(formulas.size());
  rep.line(4, mismatch == 0 && done * 10 >= total * 9,
           fmt("%d/%d formulas completed (%d satisfiable), %d mismatches, up to %d vertices, slowest %.2f s, %.1f s", done,
               total, sat, mismatch, max_vertices, slowest, since(t0)));
}

// ---------------------------------------------------------------- criteria 5 and 6

struct Structure {
  int checked = 0, bad = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && bad++ == 0) first = what;
  }
};

void check_structure(forge::ReductionId id, const forge::CnfFormula& f, Structure& s) {
  using forge::ReductionId;
  const int n = f.variables, m = static_cast<int>(f.clauses.size());
  auto grid = [&](const forge::GridInstance& gi, int w, int h) {
    bool ok = gi.width == w && gi.height == h && gi.inst.size() == w * h &&
              gi.inst.graph.edge_count() == static_cast<std::size_t>((w - 1) * h + w * (h - 1));
    s.expect(ok, fmt("%s: %dx%d grid, expected %dx%d", forge::to_string(id).c_str(), gi.width, gi.height, w, h));
  };
  switch (id) {
    case ReductionId::pi_path:
    case ReductionId::pi_cycle: {
      const bool cyc = id == ReductionId::pi_cycle;
      const auto pi = cyc ? forge::gen_pi_cycle(f) : forge::gen_pi_path(f);
      const auto chk = forge::check_proper_interval_ordering(pi.inst.graph, pi.sigma);
      s.expect(chk.ok && chk.bandwidth == (cyc ? 5 : 4),
               fmt("%s: ordering %s, bandwidth %d", forge::to_string(id).c_str(), chk.ok ? "ok" : chk.violation.c_str(),
                   chk.bandwidth));
      break;
    }
    case ReductionId::grid7_path: grid(forge::gen_grid7_path(f), 6 * n + 4 * m + 2, 7); break;
    case ReductionId::grid9_cycle: grid(forge::gen_grid9_cycle(f), 2 + 8 * n + 6 * m + 2, 9); break;
    case ReductionId::grid5_minpath: grid(forge::gen_grid5_minpath(f, n), 6 * n + 7 * m + 1, 5); break;
    case ReductionId::grid6_mincycle: grid(forge::gen_grid6_mincycle(f, n), 1 + 6 * n + 7 * m + 1, 6); break;
  }
}

void criteria5and6(Report& rep, bool run5, bool run6) {
  const auto t0 = Clock::now();
  std::mt19937 rng(5005);
  Structure structure;
  std::string summary, first_failure;
  int total_bad = 0;
  for (auto id : forge::all_reductions()) {
    const bool mono = forge::is_weighted(id);
    const auto t1 = Clock::now();
    int done = 0, bad = 0, weight_bad = 0;
    while (done < 100) {
      forge::CnfFormula f;
      f.variables = 1 + static_cast<int>(rng() % 6);
      const int m = 1 + static_cast<int>(rng() % 8);
      for (int j = 0; j < m; ++j) {
        std::vector<int> c;
        for (int k = 0; k < (mono ? 2 : 3); ++k) {
          const int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(f.variables));
          c.push_back(mono || rng() % 2 ? v : -v);
        }
        f.clauses.push_back(c);
      }
      std::vector<std::vector<bool>> models;
      for (int mask = 0; mask < (1 << f.variables); ++mask) {
        std::vector<bool> a(static_cast<std::size_t>(f.variables));
        for (int i = 0; i < f.variables; ++i) a[static_cast<std::size_t>(i)] = mask >> i & 1;
        if (forge::satisfies(f, a)) models.push_back(a);
      }
      if (models.empty()) continue;
      ++done;
      if (run6) check_structure(id, f, structure);
      if (!run5) continue;
      const auto& a = models[rng() % models.size()];
      const int trues = static_cast<int>(std::count(a.begin(), a.end(), true));
      if (mono) f.budget = trues;
      try {
        const auto inst = forge::generate(id, f);
        const auto sol = forge::build_witness(id, f, a);
        const auto v = validate_solution(inst, sol);
        if (!v.valid()) {
          ++bad;
          if (first_failure.empty()) first_failure = forge::to_string(id) + ": " + v.message;
        } else if (mono && sol.weight != trues) {
          ++weight_bad;
          if (first_failure.empty())
            first_failure = fmt("%s: weight %lld for %d true variables", forge::to_string(id).c_str(),
                                static_cast<long long>(sol.weight), trues);
        }
      } catch (const std::exception& e) {
        ++bad;
        if (first_failure.empty()) first_failure = forge::to_string(id) + ": " + e.what();
      }
    }
    total_bad += bad + weight_bad;
    if (!summary.empty()) summary += ", ";
    summary += fmt("%s %d/100 (%.0f s)", forge::to_string(id).c_str(), 100 - bad - weight_bad, since(t1));
  }
  if (run5)
    rep.line(5, total_bad == 0,
             "valid witnesses: " + summary + fmt(", %.1f s", since(t0)) +
                 (first_failure.empty() ? "" : "; first failure " + first_failure));
  if (run6)
    rep.line(6, structure.bad == 0,
             fmt("%d generated instances checked (interval bandwidths 4/5, grid dimensions and grid edges), %d wrong",
                 structure.checked, structure.bad) +
                 (structure.first.empty() ? "" : "; first " + structure.first));
}

// ---------------------------------------------------------------- criterion 7

Instance chain_instance(int n, std::mt19937& rng, decomp::NormalPathDecomposition& d) {
  Instance inst;
  for (int i = 0; i < n; ++i) inst.graph.add_vertex("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= 4 && i + k < n; ++k) inst.graph.add_edge(i, i + k, static_cast<Weight>(rng() % 10));
  std::vector<std::pair<int, int>> prec;
  for (int i = 0; i + 6 < n; ++i)
    if (rng() % 4 == 0) prec.emplace_back(i, i + 3 + static_cast<int>(rng() % 4));
  inst.order = close_order(n, prec);
  inst.kind = ProblemKind::cycle;
  VertexSet bag(static_cast<std::size_t>(n));
  for (int i = 0; i < 5; ++i) bag.set(i);
  d.bags = {bag};
  d.forgotten = {-1};
  d.introduced = {-1};
  for (int i = 5; i < n; ++i) {
    bag.reset(i - 5);
    bag.set(i);
    d.bags.push_back(bag);
    d.forgotten.push_back(i - 5);
    d.introduced.push_back(i);
  }
  return inst;
}

void criterion7(Report& rep, Tally& tally) {
  std::mt19937 rng(7007);
  std::vector<double> secs;
  bool all_feasible = true;
  for (int n : {100, 200, 400}) {
    decomp::NormalPathDecomposition d;
    const auto inst = chain_instance(n, rng, d);
    const auto t0 = Clock::now();
    const auto r = pw::solve_cycle_pw4(inst, d);
    secs.push_back(since(t0));
    all_feasible = all_feasible && r.solution && validate_solution(inst, *r.solution).valid();
    tally.conflicts += r.stats.mapping_conflicts;
    ++tally.runs;
  }
  // ratios of tiny times are noise; floor the denominator at 10 ms
  const double r1 = secs[1] / std::max(secs[0], 0.01), r2 = secs[2] / std::max(secs[1], 0.01);
  rep.line(7, all_feasible && secs[2] < 60 && r1 <= 24 && r2 <= 24,
           fmt("n=100 %.2f s, n=200 %.2f s, n=400 %.2f s; doubling ratios %.2f and %.2f (limit 24); cycles %s", secs[0],
               secs[1], secs[2], r1, r2, all_feasible ? "valid" : "missing or invalid"));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int c) { return only.empty() || only.count(c) > 0; };

  Report rep;
  Tally tally;
  const auto t0 = Clock::now();
  if (want(1) || want(8) || want(9)) criterion1(rep, tally);
  if (want(2) || want(8) || want(9)) criterion2(rep, tally);
  if (want(3)) criterion3(rep);
  if (want(4)) criterion4(rep);
  if (want(5) || want(6)) criteria5and6(rep, want(5), want(6));
  if (want(7) || want(9)) criterion7(rep, tally);
  if (want(8))
    rep.line(8, tally.raw_pw_ratio <= 5 && tally.raw_tw_ratio <= 5,
             fmt("distinct path mappings over all table entries: max %.3f n^2 over %llu pathwidth runs, %.3f n over "
                 "%llu treewidth runs (limit 5); entries that extend to a full solution: %.3f n^2, %.3f n",
                 tally.raw_pw_ratio, static_cast<unsigned long long>(tally.pw_instances), tally.raw_tw_ratio,
                 static_cast<unsigned long long>(tally.tw_instances), tally.worst_pw_ratio, tally.worst_tw_ratio));
  if (want(9))
    rep.line(9, tally.conflicts == 0,
             fmt("%llu (bag, signature) entries reached with two vertex-to-path assignments over %llu solver runs",
                 static_cast<unsigned long long>(tally.conflicts), static_cast<unsigned long long>(tally.runs)));
  std::printf("acceptance: %d failing criteria, %.1f s total\n", rep.failures, since(t0));
  return rep.failures ? 1 : 0;
}
