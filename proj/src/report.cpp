#include "miqubo/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "miqubo/oracle.hpp"

namespace miqubo {

namespace {

constexpr double kRowEnergyTolerance = 1e-9;

bool same_energy(double a, double b) {
  return std::abs(a - b) <= kRowEnergyTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string format_number(double v, int precision = 12) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string partition_label(const SensorSelection& sel) {
  SensorSelection other = sel.complemented();
  return sel.to_string() + " | " + other.to_string();
}

}  // namespace

QuboModel build_qubo(const CovarianceMatrix& cov, const PipelineOptions& options) {
  const SpinPolynomial objective = expand_objective(cov, options.expansion_limit);
  // Solvers minimize -f; the sign flips exactly once, here.
  BooleanPolynomial boolean = spin_to_boolean(objective.negated());
  if (options.select_k) {
    const double lambda =
        options.penalty_weight ? *options.penalty_weight : default_cardinality_weight(boolean);
    boolean = add_cardinality_penalty(boolean, *options.select_k, lambda);
  }
  return quadratize(boolean);
}

PlacementReport report(const SolveResult& result, const CovarianceMatrix& cov, const QuboModel& q) {
  PlacementReport rep;
  rep.n = q.num_sensors();
  rep.constraint = q.cardinality();
  rep.solver = result.solver;
  rep.seed = result.seed;

  for (const SolveEntry& entry : result.entries) {
    const ProjectedSolution projected = project_solution(entry.assignment, q);
    const SpinAssignment pattern = spins_from_selection(projected.selection);
    const std::uint32_t key = projected.selection.canonical().bits();

    ReportRow* row = nullptr;
    for (ReportRow& candidate : rep.rows) {
      if (candidate.partition.canonical().bits() == key && same_energy(candidate.energy, entry.energy)) {
        row = &candidate;
        break;
      }
    }
    if (row == nullptr) {
      rep.rows.push_back(ReportRow{projected.selection, {}, entry.energy,
                                   mutual_information(cov, projected.selection), 0});
      row = &rep.rows.back();
    }
    if (std::find(row->patterns.begin(), row->patterns.end(), pattern) == row->patterns.end()) {
      row->patterns.push_back(pattern);
    }
    row->count += entry.multiplicity;
  }

  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.energy < b.energy; });
  return rep;
}

std::string render_text(const PlacementReport& rep) {
  std::ostringstream out;
  out << "sensors: " << rep.n << "\n";
  out << "solver: " << rep.solver << "\n";
  if (rep.seed) out << "seed: " << *rep.seed << "\n";
  if (rep.constraint) {
    out << "constraint: |S| = " << rep.constraint->k
        << " (lambda = " << format_number(rep.constraint->lambda) << ")\n";
  }

  std::vector<std::array<std::string, 5>> cells;
  cells.push_back({"partition", "patterns", "energy", "mi_nats", "count"});
  for (const ReportRow& row : rep.rows) {
    std::string patterns;
    for (const SpinAssignment& p : row.patterns) {
      if (!patterns.empty()) patterns += " ";
      patterns += p.to_string();
    }
    cells.push_back({partition_label(row.partition), patterns, format_number(row.energy),
                     format_number(row.mi, 6), std::to_string(row.count)});
  }

  std::array<std::size_t, 5> widths{};
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
    }
    out << "\n";
  }
  return out.str();
}

std::string render_json(const PlacementReport& rep) {
  nlohmann::json doc;
  doc["n"] = rep.n;
  doc["solver"] = rep.solver;
  doc["seed"] = rep.seed ? nlohmann::json(*rep.seed) : nlohmann::json(nullptr);
  doc["constraint"] = rep.constraint ? nlohmann::json{{"k", rep.constraint->k},
                                                      {"lambda", rep.constraint->lambda}}
                                     : nlohmann::json(nullptr);
  doc["rows"] = nlohmann::json::array();
  for (const ReportRow& row : rep.rows) {
    nlohmann::json r;
    r["selected"] = row.partition.selected();
    r["complement"] = row.partition.complement();
    r["patterns"] = nlohmann::json::array();
    for (const SpinAssignment& p : row.patterns) r["patterns"].push_back(p.spins());
    r["energy"] = row.energy;
    r["mi_nats"] = row.mi;
    r["count"] = row.count;
    doc["rows"].push_back(r);
  }
  return doc.dump(2) + "\n";
}

std::vector<SweepPoint> sweep_cardinality(const CovarianceMatrix& cov, SolverMethod method,
                                          const AnnealSchedule& schedule, std::uint64_t seed,
                                          int restarts) {
  std::vector<SweepPoint> frontier;
  for (int k = 0; k <= cov.size(); ++k) {
    PipelineOptions options;
    options.select_k = k;
    const QuboModel q = build_qubo(cov, options);
    const SolveResult result = method == SolverMethod::Exhaustive
                                   ? solve_exhaustive(q)
                                   : solve_annealing(q, schedule, seed, restarts);

    // Lowest-energy entry that actually satisfies the cardinality; annealing
    // may occasionally return only infeasible finals, in which case the best
    // entry stands in.
    const SolveEntry* chosen = nullptr;
    for (const SolveEntry& entry : result.entries) {
      if (project_solution(entry.assignment, q).selection.count() == k) {
        chosen = &entry;
        break;
      }
    }
    if (chosen == nullptr) chosen = &result.entries.front();

    const SensorSelection best = project_solution(chosen->assignment, q).selection;
    frontier.push_back(SweepPoint{k, mutual_information(cov, best), best});
  }
  return frontier;
}

}  // namespace miqubo
