#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "miqubo/quadratize.hpp"

namespace miqubo {

inline constexpr int kExhaustiveLimit = 25;

struct SolveEntry {
  std::vector<int> assignment;  // 0/1 per variable, index = id - 1
  double energy;
  long multiplicity;

  bool operator==(const SolveEntry&) const = default;
};

/// Solver output: assignments with their energies and occurrence counts,
/// ascending by energy then assignment.
struct SolveResult {
  std::vector<SolveEntry> entries;
  std::string solver;
  std::optional<std::uint64_t> seed;

  bool operator==(const SolveResult&) const = default;
};

struct AnnealSchedule {
  int sweeps = 1000;
  double initial_temperature = 0.0;  // 0 = derive an upper bound on |dE| from the model
  double final_temperature_ratio = 1e-3;
};

/// Evaluates every assignment; returns all tied minimizers with exact
/// energies (multiplicity 1 each).
SolveResult solve_exhaustive(const QuboModel& q);

/// Independent single-bit-flip Metropolis anneals under a geometric cooling
/// schedule. Each restart records its final assignment; identical finals are
/// aggregated into multiplicities. Deterministic for fixed (seed, params,
/// restarts).
SolveResult solve_annealing(const QuboModel& q, const AnnealSchedule& params, std::uint64_t seed,
                            int restarts);

struct ProjectedSolution {
  SensorSelection selection;
  std::vector<int> inconsistent_aux;  // aux ids with y != x_i * x_j

  bool consistent() const { return inconsistent_aux.empty(); }
};

/// Drops auxiliary bits and reports any auxiliary that violates its defining
/// pair (a violation signals the assignment is not a true ground state).
ProjectedSolution project_solution(const std::vector<int>& assignment, const QuboModel& q);

}  // namespace miqubo
