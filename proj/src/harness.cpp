#include "pohp/harness.hpp"

#include "pohp/pw.hpp"
#include "pohp/tw.hpp"

namespace pohp::harness {

namespace {

io::SolutionFile from_solution(const std::optional<Solution>& sol) {
  io::SolutionFile f;
  if (!sol) {
    f.status = io::Status::infeasible;
    return f;
  }
  f.status = io::Status::feasible;
  f.weight = sol->weight;
  f.order = sol->order;
  return f;
}

int admissible_width(const Instance& inst, bool tree) {
  const bool cycle = inst.kind == ProblemKind::cycle;
  return tree ? (cycle ? 3 : 2) : (cycle ? 4 : 3);
}

std::optional<Solution> run_pw(const Instance& inst, const decomp::PathDecomposition& d) {
  if (inst.kind == ProblemKind::path) return pw::solve_path_pw3(inst, d).solution;
  const int n = inst.size();
  const auto nd = n <= 5 ? decomp::single_bag(n) : decomp::normalize_path(d, inst.graph);
  return pw::solve_cycle_pw4(inst, nd).solution;
}

std::optional<Solution> run_tw(const Instance& inst, const decomp::TreeDecomposition& d) {
  if (inst.kind == ProblemKind::path) return tw::solve_path_tw2(inst, d).solution;
  const int n = inst.size();
  const auto nd = n <= 4 ? decomp::single_leaf(n) : decomp::normalize_tree(d, inst.graph);
  return tw::solve_cycle_tw3(inst, nd).solution;
}

// Supplied decomposition: must cover the graph; too wide means unsupported.
template <class D>
const D& checked(const Instance& inst, const io::Decomposition& any, bool tree) {
  const auto* d = std::get_if<D>(&any);
  if (!d) throw Unsupported(std::string("the solver needs a ") + (tree ? "tree" : "path") + " decomposition");
  const auto chk = decomp::validate(*d, inst.graph);
  if (!chk.ok) throw decomp::DecompositionInvalid(chk.violation);
  const int k = admissible_width(inst, tree);
  if (chk.width > k)
    throw Unsupported("decomposition width " + std::to_string(chk.width) + " exceeds the admissible " + std::to_string(k));
  return *d;
}

}  // namespace

std::optional<Method> parse_method(std::string_view name) {
  if (name == "auto") return Method::automatic;
  if (name == "pw") return Method::pw;
  if (name == "tw") return Method::tw;
  if (name == "oracle") return Method::oracle;
  return std::nullopt;
}

std::optional<io::Decomposition> decompose(const Graph& g, int k, bool tree, decomp::SearchBudget budget) {
  if (tree) {
    if (auto d = decomp::find_tree_decomposition(g, k, budget)) return io::Decomposition{std::move(*d)};
  } else if (auto d = decomp::find_path_decomposition(g, k, budget)) {
    return io::Decomposition{std::move(*d)};
  }
  return std::nullopt;
}

SolveOutcome solve(const Instance& inst, const SolveOptions& opt) {
  SolveOutcome out;
  Method m = opt.method;
  if (m == Method::automatic) {
    if (opt.decomposition) {
      m = std::holds_alternative<decomp::TreeDecomposition>(*opt.decomposition) ? Method::tw : Method::pw;
    } else if (inst.size() <= 8) {
      m = Method::oracle;
    }
  }
  out.used = m;

  if (m == Method::oracle) {
    const auto r = oracle::oracle_solve(inst, opt.limits);
    if (r.status == oracle::Status::unknown) {
      out.file.status = io::Status::unknown;
      out.note = "oracle cap reached";
    } else {
      out.file = from_solution(r.solution);
    }
    return out;
  }

  try {
    if (opt.decomposition) {
      if (m == Method::pw) {
        out.file = from_solution(run_pw(inst, checked<decomp::PathDecomposition>(inst, *opt.decomposition, false)));
      } else {
        out.file = from_solution(run_tw(inst, checked<decomp::TreeDecomposition>(inst, *opt.decomposition, true)));
      }
      return out;
    }
    // search for a decomposition at the widest admissible width
    for (bool tree : {false, true}) {
      if ((m == Method::pw && tree) || (m == Method::tw && !tree)) continue;
      const auto d = decompose(inst.graph, admissible_width(inst, tree), tree, opt.search);
      if (!d) continue;
      out.used = tree ? Method::tw : Method::pw;
      out.file = tree ? from_solution(run_tw(inst, std::get<decomp::TreeDecomposition>(*d)))
                      : from_solution(run_pw(inst, std::get<decomp::PathDecomposition>(*d)));
      return out;
    }
    out.file.status = io::Status::unknown;
    out.note = "no decomposition of admissible width";
  } catch (const decomp::BudgetExceeded& e) {
    out.file = {};
    out.note = e.what();
  } catch (const Unsupported& e) {
    out.file = {};
    out.note = e.what();
  }
  return out;
}

}  // namespace pohp::harness
