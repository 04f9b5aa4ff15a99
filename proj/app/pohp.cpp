#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pohp/forge.hpp"
#include "pohp/harness.hpp"

using namespace pohp;

namespace {

constexpr int kFeasible = 0, kInfeasible = 1, kUnknown = 2, kInputError = 3;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path);
}

// file name prefix on parse errors
template <class F>
auto parsing(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const io::ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const forge::MalformedHeader& e) {
    throw InputError(path + ": " + e.what());
  } catch (const forge::LiteralOutOfRange& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<bool> parse_assignment(const std::string& path, int variables) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::vector<bool> a;
  for (std::string tok; in >> tok;) {
    if (tok != "0" && tok != "1") throw InputError(path + ": assignment values must be 0 or 1, got " + tok);
    a.push_back(tok == "1");
  }
  if (static_cast<int>(a.size()) != variables)
    throw InputError(path + ": expected " + std::to_string(variables) + " values, found " + std::to_string(a.size()));
  return a;
}

int status_code(io::Status s) {
  switch (s) {
    case io::Status::feasible: return kFeasible;
    case io::Status::infeasible: return kInfeasible;
    case io::Status::unknown: return kUnknown;
  }
  return kUnknown;
}

io::SolutionFile to_file(const Solution& s) { return {io::Status::feasible, s.weight, s.order}; }

forge::CnfFormula load_cnf(const std::string& path, std::optional<int> budget) {
  auto f = parsing(path, [](const std::string& t) { return forge::parse_dimacs(t); });
  if (budget) f.budget = *budget;
  return f;
}

std::string instance_text(forge::ReductionId id, const forge::CnfFormula& f) {
  std::string text = io::emit_instance(forge::generate(id, f));
  if (forge::is_weighted(id)) text += "# budget " + std::to_string(f.budget.value_or(f.variables)) + "\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partially ordered Hamiltonian path and cycle solvers"};
  app.require_subcommand(1);

  std::string input, decomposition, solution, method = "auto", out, cnf, reduction, assignment, witness, kind = "path";
  int width = 0;
  std::optional<int> budget;
  double time_cap = 60.0;
  std::uint64_t node_cap = 100'000'000;

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--input", input, "instance file")->required();
  solve->add_option("--decomposition", decomposition, "decomposition file");
  solve->add_option("--method", method, "auto|pw|tw|oracle")->check(CLI::IsMember({"auto", "pw", "tw", "oracle"}));
  solve->add_option("--out", out, "solution file (default stdout)");
  solve->add_option("--time-cap", time_cap, "oracle time cap in seconds");
  solve->add_option("--node-cap", node_cap, "oracle node cap");

  auto* decompose = app.add_subcommand("decompose", "find a path or tree decomposition");
  decompose->add_option("--input", input, "instance file")->required();
  decompose->add_option("--target-width", width, "width bound")->required()->check(CLI::NonNegativeNumber);
  decompose->add_option("--kind", kind, "path|tree")->check(CLI::IsMember({"path", "tree"}));
  decompose->add_option("--out", out, "decomposition file (default stdout)");

  auto* generate = app.add_subcommand("generate", "build a reduction instance from a CNF formula");
  generate->add_option("--reduction", reduction, "reduction id")->required();
  generate->add_option("--cnf", cnf, "DIMACS CNF file")->required();
  generate->add_option("--budget", budget, "weight budget for the weighted reductions");
  generate->add_option("--out", out, "instance file")->required();
  auto* gen_assign = generate->add_option("--assignment", assignment, "satisfying assignment (0/1 per variable)");
  auto* gen_witness = generate->add_option("--witness", witness, "witness solution file");
  gen_assign->needs(gen_witness);
  gen_witness->needs(gen_assign);

  auto* wit = app.add_subcommand("witness", "build the witness solution for a satisfying assignment");
  wit->add_option("--reduction", reduction, "reduction id")->required();
  wit->add_option("--cnf", cnf, "DIMACS CNF file")->required();
  wit->add_option("--budget", budget, "weight budget for the weighted reductions");
  wit->add_option("--assignment", assignment, "assignment file")->required();
  wit->add_option("--out", out, "solution file (default stdout)");

  auto* verify = app.add_subcommand("verify", "validate a solution against an instance");
  verify->add_option("--input", input, "instance file")->required();
  verify->add_option("--solution", solution, "solution file")->required();

  auto* orc = app.add_subcommand("oracle", "brute-force search");
  orc->add_option("--input", input, "instance file")->required();
  orc->add_option("--time-cap", time_cap, "time cap in seconds");
  orc->add_option("--node-cap", node_cap, "node cap");
  orc->add_option("--out", out, "solution file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    auto load_instance = [&] { return parsing(input, [](const std::string& t) { return io::parse_instance(t); }); };
    auto reduction_id = [&] {
      auto id = forge::parse_reduction(reduction);
      if (!id) throw InputError("unknown reduction " + reduction);
      return *id;
    };

    if (solve->parsed() || orc->parsed()) {
      const Instance inst = load_instance();
      harness::SolveOptions opt;
      opt.method = orc->parsed() ? harness::Method::oracle : *harness::parse_method(method);
      opt.limits = {node_cap, time_cap};
      if (!decomposition.empty())
        opt.decomposition =
            parsing(decomposition, [&](const std::string& t) { return io::parse_decomposition(t, inst.graph); });
      harness::SolveOutcome r;
      try {
        r = harness::solve(inst, opt);
      } catch (const decomp::DecompositionInvalid& e) {
        throw InputError(decomposition + ": " + e.what());
      }
      if (!r.note.empty()) std::cerr << "unknown: " << r.note << '\n';
      write_output(out, io::emit_solution(r.file, inst.graph));
      return status_code(r.file.status);
    }

    if (decompose->parsed()) {
      const Instance inst = load_instance();
      try {
        const auto d = harness::decompose(inst.graph, width, kind == "tree");
        if (!d) {
          std::cerr << "no " << kind << " decomposition of width " << width << " exists\n";
          return kInfeasible;
        }
        write_output(out, io::emit_decomposition(*d, inst.graph));
        return kFeasible;
      } catch (const decomp::BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return kUnknown;
      }
    }

    if (generate->parsed()) {
      const auto id = reduction_id();
      const auto f = load_cnf(cnf, budget);
      write_output(out, instance_text(id, f));
      if (!assignment.empty()) {
        const auto a = parse_assignment(assignment, f.variables);
        const auto inst = forge::generate(id, f);
        write_output(witness, io::emit_solution(to_file(forge::build_witness(id, f, a)), inst.graph));
      }
      return 0;
    }

    if (wit->parsed()) {
      const auto id = reduction_id();
      const auto f = load_cnf(cnf, budget);
      const auto a = parse_assignment(assignment, f.variables);
      const auto inst = forge::generate(id, f);
      write_output(out, io::emit_solution(to_file(forge::build_witness(id, f, a)), inst.graph));
      return 0;
    }

    if (verify->parsed()) {
      Instance inst = load_instance();
      const auto s = parsing(solution, [&](const std::string& t) { return io::parse_solution(t, inst.graph); });
      if (s.status != io::Status::feasible) {
        std::cout << "invalid: solution status is " << io::to_string(s.status) << ", nothing to verify\n";
        return 1;
      }
      if (!s.weight) inst.objective = Objective::decision;  // nothing stated, nothing to compare
      const auto rep = validate_solution(inst, Solution{s.order, s.weight.value_or(0), inst.kind});
      if (!rep.valid()) {
        std::cout << "invalid: " << rep.message << '\n';
        return 1;
      }
      std::cout << "valid: " << (inst.kind == ProblemKind::cycle ? "cycle" : "path") << " of weight " << rep.weight
                << " over " << inst.size() << " vertices\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const forge::UnsatisfiedAssignment& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const forge::ClauseArity& e) {
    std::cerr << "error: " << cnf << ": " << e.what() << '\n';
    return kInputError;
  } catch (const forge::NotMonotone& e) {
    std::cerr << "error: " << cnf << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
