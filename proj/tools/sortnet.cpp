#include <chrono>
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sortnet/dispatch.hpp"
#include "sortnet/errors.hpp"
#include "sortnet/io.hpp"
#include "sortnet/random_instances.hpp"
#include "sortnet/reductions.hpp"

namespace {

using namespace sortnet;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
  std::string algo = "auto";
  std::string coloring_mode = "exhaustive";
  uint32_t seed = 1;
  int64_t trials = -1;
  int64_t max_witnesses = 20000;
  int64_t max_product = 4000000;
  int64_t max_states = 2000000;
  int64_t max_colorings = 2000000;
  int64_t max_templates = 2000000;
  std::string decomposition_path;
  int tw_cap = 13;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--algo", flags.algo,
                  "solver: auto, oracle, t1, spp-kernel, spp-ramsey, rspp-colorcode, twdp")
      ->default_val("auto");
  cmd->add_option("--coloring-mode", flags.coloring_mode, "exhaustive or random")
      ->default_val("exhaustive");
  cmd->add_option("--seed", flags.seed, "random coloring seed");
  cmd->add_option("--trials", flags.trials, "random coloring trials (-1: derived)");
  cmd->add_option("--max-witnesses", flags.max_witnesses, "witness budget per commodity")
      ->envname("SORTNET_MAX_WITNESSES");
  cmd->add_option("--max-product", flags.max_product, "witness product / subset budget")
      ->envname("SORTNET_MAX_PRODUCT");
  cmd->add_option("--max-states", flags.max_states, "dynamic-programming state budget")
      ->envname("SORTNET_MAX_STATES");
  cmd->add_option("--max-colorings", flags.max_colorings, "coloring family cap");
  cmd->add_option("--max-templates", flags.max_templates, "template enumeration cap");
  cmd->add_option("--decomposition", flags.decomposition_path,
                  "external tree decomposition file (twdp)");
  cmd->add_option("--tw-cap", flags.tw_cap, "exact treewidth vertex cap");
}

SolveOptions to_options(const CommonFlags& flags, const Instance* instance_for_td) {
  SolveOptions options;
  auto algo = algorithm_from_string(flags.algo);
  if (!algo) throw std::invalid_argument("unknown algorithm '" + flags.algo + "'");
  options.algorithm = *algo;
  options.oracle.max_witnesses_per_commodity = flags.max_witnesses;
  options.oracle.max_product = flags.max_product;
  if (flags.coloring_mode == "exhaustive")
    options.coloring.mode = ColoringMode::Exhaustive;
  else if (flags.coloring_mode == "random")
    options.coloring.mode = ColoringMode::Random;
  else
    throw std::invalid_argument("coloring mode must be exhaustive or random");
  options.coloring.seed = flags.seed;
  options.coloring.trials = flags.trials;
  options.coloring.max_colorings = flags.max_colorings;
  options.coloring.max_templates = flags.max_templates;
  options.twdp.max_states = flags.max_states;
  options.treewidth_exact_cap = flags.tw_cap;
  if (!flags.decomposition_path.empty()) {
    if (!instance_for_td) throw std::invalid_argument("--decomposition needs an instance");
    options.decomposition =
        parse_tree_decomposition(read_file(flags.decomposition_path), instance_for_td->graph);
  }
  return options;
}

std::vector<std::string> provenance(const SolveOutcome& outcome, const CommonFlags& flags) {
  std::vector<std::string> lines;
  lines.push_back("algorithm: " + to_string(outcome.used));
  if (outcome.used == Algorithm::RsppColorcode) {
    lines.push_back("coloring-mode: " + flags.coloring_mode);
    if (flags.coloring_mode == "random") {
      lines.push_back("seed: " + std::to_string(flags.seed));
      lines.push_back("trials: " + std::to_string(flags.trials));
    }
  }
  lines.push_back("budgets: witnesses=" + std::to_string(flags.max_witnesses) +
                  " product=" + std::to_string(flags.max_product) +
                  " states=" + std::to_string(flags.max_states));
  return lines;
}

int run_solve(const std::string& input, const std::string& output, const CommonFlags& flags) {
  Instance instance = parse_instance(read_file(input));
  SolveOptions options = to_options(flags, &instance);
  SolveOutcome outcome = solve_with(instance, options);
  if (!outcome.yes) {
    std::cout << "NO" << (outcome.exact ? "" : " (probabilistic)") << "\n";
    return kExitNo;
  }
  std::cout << "YES\n";
  if (outcome.solution) {
    if (!validate_solution(instance, *outcome.solution).valid) {
      std::cerr << "internal error: solver emitted an invalid solution\n";
      return kExitUsage;
    }
    if (!output.empty())
      write_file(output, serialize_solution(*outcome.solution, provenance(outcome, flags)));
  } else if (!output.empty()) {
    std::cerr << "decision is YES but no solution graph was materialized\n";
  }
  return kExitYes;
}

int run_validate(const std::string& instance_path, const std::string& solution_path) {
  Instance instance = parse_instance(read_file(instance_path));
  Digraph solution = parse_solution(read_file(solution_path), instance);
  auto report = validate_solution(instance, solution);
  if (report.valid) {
    std::cout << "valid (max outdegree " << report.max_outdegree << ")\n";
    return kExitYes;
  }
  std::cout << "invalid:";
  if (!report.is_subgraph_of_closure) std::cout << " not-a-closure-subgraph";
  if (!report.offending_vertices.empty()) {
    std::cout << " outdegree-offenders:";
    for (int v : report.offending_vertices) std::cout << ' ' << instance.graph.label(v);
  }
  if (!report.unsatisfied_commodities.empty()) {
    std::cout << " unsatisfied-commodities:";
    for (int i : report.unsatisfied_commodities) std::cout << ' ' << i;
  }
  std::cout << "\n";
  return kExitNo;
}

int run_min_target(const std::string& input, const CommonFlags& flags) {
  Instance instance = parse_instance(read_file(input));
  OracleConfig cfg;
  cfg.max_witnesses_per_commodity = flags.max_witnesses;
  cfg.max_product = flags.max_product;
  int t = min_target_exact(instance.graph, instance.commodities, instance.variant,
                           instance.path_length, cfg);
  std::cout << t << "\n";
  return kExitYes;
}

struct GenerateFlags {
  std::string kind;
  std::string source_path;
  std::string output_path;
  std::string witness_path;
  bool routed = false;
  // random-instance knobs
  int vertices = 6;
  int edges = 8;
  int commodities = 2;
  std::string variant = "RSPP";
  int target = 1;
  int path_length = 3;
  uint32_t seed = 1;
};

int run_generate(const GenerateFlags& flags) {
  Instance instance;
  std::optional<Digraph> witness;
  std::vector<std::string> header;

  if (flags.kind == "3partition") {
    if (flags.source_path.empty()) throw std::invalid_argument("3partition needs --source");
    auto input = parse_three_partition_input(read_file(flags.source_path));
    instance = gen_3partition(input, flags.routed);
    header.push_back("generator: 3partition m=" + std::to_string(input.m) +
                     " B=" + std::to_string(input.B) + (flags.routed ? " routed" : ""));
    if (!flags.witness_path.empty()) {
      auto triples = solve_3partition(input);
      if (!triples) throw ValidationError("source instance is a NO; no witness exists");
      witness = three_partition_witness(instance, input, *triples);
    }
  } else if (flags.kind == "3sat22-pl" || flags.kind == "3sat22-spp") {
    if (flags.source_path.empty()) throw std::invalid_argument(flags.kind + " needs --source");
    auto formula = parse_sat22_formula(read_file(flags.source_path));
    const bool pl = flags.kind == "3sat22-pl";
    instance = pl ? gen_3sat22_rspp_pl(formula) : gen_3sat22_spp(formula);
    header.push_back("generator: " + flags.kind + " vars=" + std::to_string(formula.variables) +
                     " clauses=" + std::to_string(formula.clauses.size()));
    auto report = pl ? check_sat22_rspp_pl_reduction(instance, formula)
                     : check_sat22_spp_reduction(instance, formula);
    if (!report.pass) throw ValidationError("gadget checker rejected the construction");
    if (!flags.witness_path.empty()) {
      auto assignment = solve_sat22(formula);
      if (!assignment) throw ValidationError("formula is unsatisfiable; no witness exists");
      witness = pl ? sat22_rspp_pl_witness(instance, formula, *assignment)
                   : sat22_spp_witness(instance, formula, *assignment);
    }
  } else if (flags.kind == "random") {
    auto variant = variant_from_string(flags.variant);
    if (!variant) throw std::invalid_argument("variant must be SPP, RSPP, or RSPP_PL");
    std::mt19937 rng(flags.seed);
    RandomInstanceSpec spec;
    spec.vertices = flags.vertices;
    spec.edges = flags.edges;
    spec.commodities = flags.commodities;
    spec.variant = *variant;
    spec.target = flags.target;
    spec.path_length = flags.path_length;
    instance = random_instance(rng, spec);
    header.push_back("generator: random seed=" + std::to_string(flags.seed));
  } else {
    throw std::invalid_argument("kind must be 3partition, 3sat22-pl, 3sat22-spp, or random");
  }

  std::string doc = serialize_instance(instance, header);
  if (flags.output_path.empty())
    std::cout << doc;
  else
    write_file(flags.output_path, doc);
  if (witness) {
    if (!validate_solution(instance, *witness).valid)
      throw ValidationError("internal error: witness failed validation");
    write_file(flags.witness_path,
               serialize_solution(*witness, {"witness from source solution"}));
  }
  return kExitYes;
}

int run_bench(const std::vector<std::string>& inputs, const CommonFlags& flags, int jobs) {
  struct Row {
    std::string instance;
    std::string decision;
    int target = 0;
    double wall_ms = 0;
  };
  std::vector<Row> rows(inputs.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= inputs.size()) return;
      Row& row = rows[i];
      row.instance = inputs[i];
      auto start = std::chrono::steady_clock::now();
      try {
        Instance instance = parse_instance(read_file(inputs[i]));
        row.target = instance.target;
        SolveOptions options = to_options(flags, &instance);
        SolveOutcome outcome = solve_with(instance, options);
        row.decision = outcome.yes ? "YES" : "NO";
      } catch (const BudgetExceeded&) {
        row.decision = "BUDGET";
      } catch (const InfeasibleExhaustive&) {
        row.decision = "BUDGET";
      } catch (const StateSpaceExceeded&) {
        row.decision = "BUDGET";
      } catch (const Error& e) {
        row.decision = std::string("ERROR:") + e.what();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::cout << "instance\talgo\tdecision\ttarget\twall_ms\n";
  for (const Row& row : rows) {
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << row.wall_ms;
    std::cout << row.instance << '\t' << flags.algo << '\t' << row.decision << '\t' << row.target
              << '\t' << ms.str() << "\n";
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for minimum-outdegree sortation network design"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  std::string solve_input, solve_output;
  CLI::App* solve_cmd = app.add_subcommand("solve", "decide an instance file");
  solve_cmd->add_option("input", solve_input, "instance file")->required();
  solve_cmd->add_option("--output", solve_output, "write the solution graph here on YES");
  add_common_flags(solve_cmd, solve_flags);

  std::string validate_instance, validate_solution_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a solution file");
  validate_cmd->add_option("instance", validate_instance, "instance file")->required();
  validate_cmd->add_option("solution", validate_solution_path, "solution file")->required();

  CommonFlags min_target_flags;
  std::string min_target_input;
  CLI::App* min_target_cmd =
      app.add_subcommand("min-target", "smallest feasible target via the exact oracle");
  min_target_cmd->add_option("input", min_target_input, "instance file")->required();
  add_common_flags(min_target_cmd, min_target_flags);

  GenerateFlags generate_flags;
  CLI::App* generate_cmd = app.add_subcommand("generate", "write instance files");
  generate_cmd
      ->add_option("--kind", generate_flags.kind, "3partition, 3sat22-pl, 3sat22-spp, random")
      ->required();
  generate_cmd->add_option("--source", generate_flags.source_path, "source problem document");
  generate_cmd->add_option("--output", generate_flags.output_path, "instance file to write");
  generate_cmd->add_option("--witness", generate_flags.witness_path,
                           "also write a solution from the source answer");
  generate_cmd->add_flag("--routed", generate_flags.routed, "emit SPP with tree routes");
  generate_cmd->add_option("--vertices", generate_flags.vertices, "random: vertex count");
  generate_cmd->add_option("--edges", generate_flags.edges, "random: edge count");
  generate_cmd->add_option("--commodities", generate_flags.commodities, "random: commodities");
  generate_cmd->add_option("--variant", generate_flags.variant, "random: SPP, RSPP, RSPP_PL");
  generate_cmd->add_option("--target", generate_flags.target, "random: target");
  generate_cmd->add_option("--path-length", generate_flags.path_length, "random: path length");
  generate_cmd->add_option("--seed", generate_flags.seed, "random: seed");

  CommonFlags bench_flags;
  std::vector<std::string> bench_inputs;
  int bench_jobs = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a corpus, print a timing table");
  bench_cmd->add_option("inputs", bench_inputs, "instance files")->required();
  bench_cmd->add_option("--jobs", bench_jobs, "parallel workers");
  add_common_flags(bench_cmd, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_input, solve_output, solve_flags);
    if (*validate_cmd) return run_validate(validate_instance, validate_solution_path);
    if (*min_target_cmd) return run_min_target(min_target_input, min_target_flags);
    if (*generate_cmd) return run_generate(generate_flags);
    if (*bench_cmd) return run_bench(bench_inputs, bench_flags, bench_jobs);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InfeasibleExhaustive& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const StateSpaceExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ExactCapExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
