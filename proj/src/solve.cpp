#include "miqubo/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace miqubo {

namespace {

constexpr double kTieTolerance = 1e-9;

struct Couplings {
  std::vector<double> linear;                            // by variable index
  std::vector<std::vector<std::pair<int, double>>> adj;  // neighbors by variable index

  explicit Couplings(const QuboModel& q)
      : linear(static_cast<std::size_t>(q.num_variables()), 0.0),
        adj(static_cast<std::size_t>(q.num_variables())) {
    for (const auto& [i, c] : q.linear()) linear[static_cast<std::size_t>(i - 1)] = c;
    for (const auto& [ij, c] : q.quadratic()) {
      adj[static_cast<std::size_t>(ij.first - 1)].emplace_back(ij.second - 1, c);
      adj[static_cast<std::size_t>(ij.second - 1)].emplace_back(ij.first - 1, c);
    }
  }

  // Energy change of flipping variable v in assignment x.
  double flip_delta(const std::vector<int>& x, int v) const {
    double base = linear[static_cast<std::size_t>(v)];
    for (const auto& [u, c] : adj[static_cast<std::size_t>(v)]) {
      if (x[static_cast<std::size_t>(u)]) base += c;
    }
    return x[static_cast<std::size_t>(v)] ? -base : base;
  }
};

std::vector<int> bits_to_assignment(std::uint32_t bits, int count) {
  std::vector<int> x(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) x[static_cast<std::size_t>(v)] = (bits >> v) & 1u;
  return x;
}

bool within(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// xorshift-based generator with a fully pinned uniform double in [0, 1), so
// results do not depend on standard-library distribution internals.
class FlipRng {
 public:
  explicit FlipRng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int bit() { return static_cast<int>(next() & 1u); }

 private:
  std::uint64_t state_;
};

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void sort_entries(std::vector<SolveEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const SolveEntry& a, const SolveEntry& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.assignment < b.assignment;
  });
}

}  // namespace

SolveResult solve_exhaustive(const QuboModel& q) {
  const int count = q.num_variables();
  if (count > kExhaustiveLimit) {
    throw ProblemTooLarge("exhaustive search over " + std::to_string(count) +
                          " variables exceeds the limit of " + std::to_string(kExhaustiveLimit));
  }

  SolveResult result;
  result.solver = "exhaustive";

  if (count == 0) {
    result.entries.push_back(SolveEntry{{}, q.offset(), 1});
    return result;
  }

  const Couplings couplings(q);
  std::vector<int> x(static_cast<std::size_t>(count), 0);
  double walked = q.offset();

  double best = q.offset();
  std::vector<std::pair<std::uint32_t, double>> ties = {{0u, q.offset()}};

  // Gray-code walk: state t is gray(t), one flip per step. The incremental
  // energy drifts by at most a few ulps; candidates near the minimum are
  // re-evaluated exactly before they are recorded.
  const std::uint64_t total = std::uint64_t{1} << count;
  std::uint32_t bits = 0;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int v = std::countr_zero(t);
    walked += couplings.flip_delta(x, v);
    x[static_cast<std::size_t>(v)] ^= 1;
    bits ^= std::uint32_t{1} << v;

    if (walked <= best + kTieTolerance * std::max(1.0, std::abs(best)) + 1e-9) {
      const double exact = q.energy(x);
      if (exact < best) best = exact;
      if (within(exact, best, kTieTolerance)) ties.emplace_back(bits, exact);
    }
  }

  for (const auto& [mask, energy] : ties) {
    if (within(energy, best, kTieTolerance)) {
      result.entries.push_back(SolveEntry{bits_to_assignment(mask, count), energy, 1});
    }
  }
  sort_entries(result.entries);
  return result;
}

SolveResult solve_annealing(const QuboModel& q, const AnnealSchedule& params, std::uint64_t seed,
                            int restarts) {
  if (restarts < 1) throw ValidationError("restarts must be at least 1");
  if (params.sweeps < 1) throw ValidationError("sweeps must be at least 1");
  if (!(params.final_temperature_ratio > 0.0) || !(params.initial_temperature >= 0.0)) {
    throw ValidationError("schedule parameters must be positive");
  }

  const int count = q.num_variables();
  const Couplings couplings(q);

  // Default T0: an upper bound on any single-flip |dE|, so early sweeps
  // accept nearly everything.
  double t0 = params.initial_temperature;
  if (t0 == 0.0) {
    for (int v = 0; v < count; ++v) {
      double reach = std::abs(couplings.linear[static_cast<std::size_t>(v)]);
      for (const auto& [u, c] : couplings.adj[static_cast<std::size_t>(v)]) reach += std::abs(c);
      t0 = std::max(t0, reach);
    }
    if (t0 == 0.0) t0 = 1.0;  // flat landscape
  }
  const double cooling =
      params.sweeps > 1 ? std::pow(params.final_temperature_ratio, 1.0 / (params.sweeps - 1)) : 1.0;

  std::map<std::vector<int>, long> counts;
  const std::uint64_t stream = splitmix64(seed);
  for (int r = 0; r < restarts; ++r) {
    FlipRng rng(stream + static_cast<std::uint64_t>(r));
    std::vector<int> x(static_cast<std::size_t>(count));
    for (int v = 0; v < count; ++v) x[static_cast<std::size_t>(v)] = rng.bit();

    double temperature = t0;
    for (int sweep = 0; sweep < params.sweeps; ++sweep) {
      for (int v = 0; v < count; ++v) {
        const double delta = couplings.flip_delta(x, v);
        if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
          x[static_cast<std::size_t>(v)] ^= 1;
        }
      }
      temperature *= cooling;
    }
    ++counts[x];
  }

  SolveResult result;
  std::ostringstream descriptor;
  descriptor << "annealing(sweeps=" << params.sweeps << ",t0=" << format_number(t0)
             << ",tf=" << format_number(t0 * params.final_temperature_ratio)
             << ",restarts=" << restarts << ")";
  result.solver = descriptor.str();
  result.seed = seed;
  for (const auto& [x, multiplicity] : counts) {
    result.entries.push_back(SolveEntry{x, q.energy(x), multiplicity});
  }
  sort_entries(result.entries);
  return result;
}

ProjectedSolution project_solution(const std::vector<int>& assignment, const QuboModel& q) {
  if (static_cast<int>(assignment.size()) != q.num_variables()) {
    throw DimensionMismatch("assignment length must match variable count");
  }
  std::vector<int> selected;
  std::vector<int> inconsistent;
  for (const QuboVariable& var : q.variables()) {
    const int value = assignment[static_cast<std::size_t>(var.id - 1)];
    if (!var.auxiliary) {
      if (value) selected.push_back(var.id);
    } else {
      const auto [i, j] = *var.pair;
      const int product = assignment[static_cast<std::size_t>(i - 1)] *
                          assignment[static_cast<std::size_t>(j - 1)];
      if (value != product) inconsistent.push_back(var.id);
    }
  }
  return ProjectedSolution{SensorSelection(q.num_sensors(), std::move(selected)),
                           std::move(inconsistent)};
}

}  // namespace miqubo
