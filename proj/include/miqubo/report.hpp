#pragma once

#include <optional>
#include <string>
#include <vector>

#include "miqubo/expansion.hpp"
#include "miqubo/model.hpp"
#include "miqubo/quadratize.hpp"
#include "miqubo/solve.hpp"

namespace miqubo {

struct ReportRow {
  SensorSelection partition;            // selected side of the first grouped entry
  std::vector<SpinAssignment> patterns; // distinct sensor spin patterns in the class
  double energy;
  double mi;  // recomputed from the covariance, never read from the solver
  long count;
};

struct PlacementReport {
  int n = 0;
  std::optional<CardinalityPenalty> constraint;
  std::string solver;
  std::optional<std::uint64_t> seed;
  std::vector<ReportRow> rows;  // ascending energy
};

struct PipelineOptions {
  std::optional<int> select_k;
  std::optional<double> penalty_weight;  // defaults to default_cardinality_weight
  int expansion_limit = kDefaultExpansionLimit;
};

/// expand -> negate -> boolean -> optional cardinality penalty -> quadratize.
QuboModel build_qubo(const CovarianceMatrix& cov, const PipelineOptions& options = {});

/// Projects solver entries onto sensor partitions, merging complementary
/// selections at equal energy, and recomputes each row's MI via the oracle.
PlacementReport report(const SolveResult& result, const CovarianceMatrix& cov, const QuboModel& q);

std::string render_text(const PlacementReport& rep);
std::string render_json(const PlacementReport& rep);

enum class SolverMethod { Exhaustive, Annealing };

struct SweepPoint {
  int k;
  double mi;
  SensorSelection best;
};

/// Solves the k-constrained problem for every k in 0..n and records the best
/// selection and its MI.
std::vector<SweepPoint> sweep_cardinality(const CovarianceMatrix& cov, SolverMethod method,
                                          const AnnealSchedule& schedule = {},
                                          std::uint64_t seed = 0, int restarts = 100);

}  // namespace miqubo
