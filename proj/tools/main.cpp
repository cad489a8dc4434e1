// miqubo: compile a Gaussian sensor-placement covariance into a spin
// polynomial, reduce it to QUBO, and solve or export it. Each pipeline stage
// has its own subcommand so intermediate artifacts stay inspectable.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "miqubo/expansion.hpp"
#include "miqubo/io.hpp"
#include "miqubo/oracle.hpp"
#include "miqubo/report.hpp"
#include "miqubo/solve.hpp"

namespace {

using namespace miqubo;

struct InputOptions {
  std::string path;
  std::string format = "auto";  // auto | csv | json
  bool samples = false;
};

struct SolveOptions {
  std::string method = "exhaustive";  // exhaustive | anneal
  std::uint64_t seed = 0;
  int restarts = 100;
  int sweeps = 1000;
};

struct ConstraintOptions {
  int select_k = -1;  // <0 means unconstrained
  double penalty_weight = 0.0;
  int limit = kDefaultExpansionLimit;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "covariance file (CSV grid or JSON)")->required();
  cmd->add_option("--format", in.format, "input format: auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  cmd->add_flag("--samples", in.samples,
                "treat the input as an observation table and estimate the covariance");
}

void add_solver_options(CLI::App* cmd, SolveOptions& opts) {
  cmd->add_option("--method", opts.method, "solver: exhaustive or anneal")
      ->check(CLI::IsMember({"exhaustive", "anneal"}));
  cmd->add_option("--seed", opts.seed, "master seed for annealing");
  cmd->add_option("--restarts", opts.restarts, "annealing restarts");
  cmd->add_option("--sweeps", opts.sweeps, "annealing sweeps per restart");
}

void add_constraint_options(CLI::App* cmd, ConstraintOptions& opts) {
  cmd->add_option("--select-k", opts.select_k, "constrain the number of selected sensors");
  cmd->add_option("--penalty-weight", opts.penalty_weight,
                  "cardinality penalty weight (default: derived from the objective)");
  cmd->add_option("--limit", opts.limit, "expansion size limit");
}

CovarianceMatrix load_input(const InputOptions& in) {
  if (in.samples) return estimate_covariance(load_samples_csv(in.path));
  CovarianceFormat format = CovarianceFormat::Csv;
  if (in.format == "json" ||
      (in.format == "auto" && std::filesystem::path(in.path).extension() == ".json")) {
    format = CovarianceFormat::Json;
  }
  return load_covariance(in.path, format);
}

PipelineOptions pipeline_options(const ConstraintOptions& opts) {
  PipelineOptions pipeline;
  if (opts.select_k >= 0) pipeline.select_k = opts.select_k;
  if (opts.penalty_weight > 0.0) pipeline.penalty_weight = opts.penalty_weight;
  pipeline.expansion_limit = opts.limit;
  return pipeline;
}

SolveResult run_solver(const QuboModel& q, const SolveOptions& opts) {
  if (opts.method == "anneal") {
    AnnealSchedule schedule;
    schedule.sweeps = opts.sweeps;
    return solve_annealing(q, schedule, opts.seed, opts.restarts);
  }
  return solve_exhaustive(q);
}

std::string format_number(double v, int precision = 12) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

void print_solve_result(const SolveResult& result, const QuboModel& q, bool as_json) {
  if (as_json) {
    nlohmann::json doc;
    doc["solver"] = result.solver;
    doc["seed"] = result.seed ? nlohmann::json(*result.seed) : nlohmann::json(nullptr);
    doc["entries"] = nlohmann::json::array();
    for (const SolveEntry& e : result.entries) {
      nlohmann::json entry;
      entry["assignment"] = e.assignment;
      entry["pattern"] =
          spins_from_selection(project_solution(e.assignment, q).selection).spins();
      entry["energy"] = e.energy;
      entry["count"] = e.multiplicity;
      doc["entries"].push_back(entry);
    }
    std::cout << doc.dump(2) << "\n";
    return;
  }

  std::cout << "solver: " << result.solver << "\n";
  if (result.seed) std::cout << "seed: " << *result.seed << "\n";
  std::cout << "variables: " << q.num_variables() << " (sensors: " << q.num_sensors() << ")\n";
  for (const SolveEntry& e : result.entries) {
    const ProjectedSolution projected = project_solution(e.assignment, q);
    std::cout << spins_from_selection(projected.selection).to_string()
              << "  energy=" << format_number(e.energy) << "  count=" << e.multiplicity;
    if (q.num_variables() > q.num_sensors()) {
      std::cout << "  aux=[";
      for (int id = q.num_sensors() + 1; id <= q.num_variables(); ++id) {
        if (id > q.num_sensors() + 1) std::cout << ",";
        std::cout << e.assignment[static_cast<std::size_t>(id - 1)];
      }
      std::cout << "]";
      if (!projected.consistent()) std::cout << "  (inconsistent auxiliary)";
    }
    std::cout << "\n";
  }
}

std::vector<int> parse_selection_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      out.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw ParseError("'" + token + "' is not a sensor index");
    }
  }
  return out;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"sensor placement by mutual information via QUBO"};
  app.require_subcommand(1);

  InputOptions in;
  ConstraintOptions constraint;
  SolveOptions solver;
  bool as_json = false;
  std::string output;
  std::string select_list;
  bool input_is_qubo = false;

  auto* validate_cmd = app.add_subcommand("validate", "validate a covariance file");
  add_input_options(validate_cmd, in);
  validate_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    std::cout << "ok: " << cov.size() << " sensors\n";
  });

  auto* expand_cmd = app.add_subcommand("expand", "print the spin polynomial objective");
  add_input_options(expand_cmd, in);
  expand_cmd->add_option("--limit", constraint.limit, "expansion size limit");
  expand_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    const SpinPolynomial f = expand_objective(cov, constraint.limit);
    std::cout << "f = " << f.to_string() << "\n";
    std::cout << "degree: " << f.max_degree() << ", terms: " << f.terms().size() << "\n";
  });

  auto* qubo_cmd = app.add_subcommand("qubo", "compile to QUBO and export as JSON");
  add_input_options(qubo_cmd, in);
  add_constraint_options(qubo_cmd, constraint);
  qubo_cmd->add_option("-o,--output", output, "output path")->required();
  qubo_cmd->callback([&] {
    const QuboModel q = build_qubo(load_input(in), pipeline_options(constraint));
    export_qubo(q, output);
    std::cout << "wrote " << output << " (" << q.num_variables() << " variables, "
              << q.substitutions().size() << " auxiliaries)\n";
  });

  auto* solve_cmd = app.add_subcommand("solve", "solve and list assignments with energies");
  add_input_options(solve_cmd, in);
  add_constraint_options(solve_cmd, constraint);
  add_solver_options(solve_cmd, solver);
  solve_cmd->add_flag("--qubo", input_is_qubo, "input is an exported QUBO JSON file");
  solve_cmd->add_flag("--json", as_json, "emit JSON");
  solve_cmd->callback([&] {
    const QuboModel q =
        input_is_qubo ? import_qubo(in.path) : build_qubo(load_input(in), pipeline_options(constraint));
    print_solve_result(run_solver(q, solver), q, as_json);
  });

  auto* mi_cmd = app.add_subcommand("mi", "mutual information of a given selection");
  add_input_options(mi_cmd, in);
  mi_cmd->add_option("--select", select_list, "comma-separated sensor indices, e.g. 1,3");
  mi_cmd->add_flag("--json", as_json, "emit JSON");
  mi_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    const SensorSelection sel(cov.size(), parse_selection_list(select_list));
    const double mi = mutual_information(cov, sel);
    if (as_json) {
      nlohmann::json doc{{"selected", sel.selected()}, {"mi_nats", mi}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "MI(" << sel.to_string() << " | " << sel.complemented().to_string()
                << ") = " << format_number(mi, 6) << " nats\n";
    }
  });

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force optimal partitions");
  add_input_options(oracle_cmd, in);
  int oracle_k = -1;
  oracle_cmd->add_option("--select-k", oracle_k, "restrict to selections of this size");
  oracle_cmd->add_flag("--json", as_json, "emit JSON");
  oracle_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    const BruteForceResult result =
        brute_force_optimum(cov, oracle_k >= 0 ? std::optional<int>(oracle_k) : std::nullopt);
    if (as_json) {
      nlohmann::json doc;
      doc["value"] = result.value;
      doc["maximizers"] = nlohmann::json::array();
      for (const SensorSelection& sel : result.maximizers) {
        doc["maximizers"].push_back({{"selected", sel.selected()},
                                     {"mi_nats", mutual_information(cov, sel)}});
      }
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "best objective: " << format_number(result.value) << "\n";
      for (const SensorSelection& sel : result.maximizers) {
        std::cout << sel.to_string() << " | " << sel.complemented().to_string()
                  << "  MI=" << format_number(mutual_information(cov, sel), 6) << " nats\n";
      }
    }
  });

  auto* sweep_cmd = app.add_subcommand("sweep", "best MI for every selection size k");
  add_input_options(sweep_cmd, in);
  add_solver_options(sweep_cmd, solver);
  sweep_cmd->add_flag("--json", as_json, "emit JSON");
  sweep_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    AnnealSchedule schedule;
    schedule.sweeps = solver.sweeps;
    const auto frontier = sweep_cardinality(
        cov, solver.method == "anneal" ? SolverMethod::Annealing : SolverMethod::Exhaustive,
        schedule, solver.seed, solver.restarts);
    if (as_json) {
      nlohmann::json doc = nlohmann::json::array();
      for (const SweepPoint& point : frontier) {
        doc.push_back({{"k", point.k},
                       {"mi_nats", point.mi},
                       {"selected", point.best.selected()}});
      }
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "k  best_mi_nats  selection\n";
      for (const SweepPoint& point : frontier) {
        std::cout << point.k << "  " << format_number(point.mi, 6) << "  "
                  << point.best.to_string() << "\n";
      }
    }
  });

  auto* report_cmd = app.add_subcommand("report", "solve and group results by partition");
  add_input_options(report_cmd, in);
  add_constraint_options(report_cmd, constraint);
  add_solver_options(report_cmd, solver);
  report_cmd->add_flag("--json", as_json, "emit JSON");
  report_cmd->callback([&] {
    const CovarianceMatrix cov = load_input(in);
    const QuboModel q = build_qubo(cov, pipeline_options(constraint));
    const PlacementReport rep = report(run_solver(q, solver), cov, q);
    std::cout << (as_json ? render_json(rep) : render_text(rep));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ProblemTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
