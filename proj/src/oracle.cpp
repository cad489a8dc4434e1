#include "miqubo/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "miqubo/linalg.hpp"

namespace miqubo {

namespace {

// Two partitions tie exactly in real arithmetic; this absorbs the few-ulp
// noise of the floating-point determinants.
constexpr double kTieTolerance = 1e-12;

constexpr double kCoefficientDropTolerance = 1e-12;

Monomial mask_to_monomial(std::uint32_t mask) {
  Monomial m;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) m.push_back(i + 1);
  }
  return m;
}

}  // namespace

double entropy(const CovarianceMatrix& cov) {
  const double n = cov.size();
  return 0.5 * log_determinant_spd(cov.matrix()) + n / 2.0 * (1.0 + std::log(2.0 * std::numbers::pi));
}

double subset_objective(const CovarianceMatrix& cov, const SensorSelection& sel) {
  if (cov.size() != sel.n()) throw DimensionMismatch("covariance and selection sizes differ");
  const double det_s = determinant_lu(cov.submatrix(sel.selected()));
  const double det_t = determinant_lu(cov.submatrix(sel.complement()));
  return det_s * det_t;
}

double mutual_information(const CovarianceMatrix& cov, const SensorSelection& sel) {
  return 0.5 * std::log(subset_objective(cov, sel) / determinant_lu(cov.matrix()));
}

BruteForceResult brute_force_optimum(const CovarianceMatrix& cov, std::optional<int> k) {
  const int n = cov.size();
  if (n > kBruteForceLimit) {
    throw ProblemTooLarge("brute force over " + std::to_string(n) + " sensors exceeds the limit of " +
                          std::to_string(kBruteForceLimit));
  }
  if (k && (*k < 0 || *k > n)) throw InvalidCardinality("cardinality must lie in [0, n]");

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint32_t, double>> ties;
  const std::uint32_t count = 1u << n;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    if (k && std::popcount(bits) != *k) continue;
    const double value = subset_objective(cov, SensorSelection::from_bits(bits, n));
    const double window = kTieTolerance * std::max(1.0, std::abs(std::max(best, value)));
    if (value > best + window) {
      best = value;
      std::erase_if(ties, [&](const auto& t) {
        return t.second < best - kTieTolerance * std::max(1.0, std::abs(best));
      });
      ties.emplace_back(bits, value);
    } else if (value >= best - window) {
      ties.emplace_back(bits, value);
    }
  }

  // Collapse each complement pair to one canonical entry. When a cardinality
  // is fixed the complement is only enumerated for k = n - k, so selections
  // normally pass through unchanged.
  std::vector<std::uint32_t> masks;
  const std::uint32_t full = count - 1;
  for (const auto& [bits, value] : ties) {
    const std::uint32_t partner = full & ~bits;
    const bool partner_tied =
        std::any_of(ties.begin(), ties.end(), [&](const auto& t) { return t.first == partner; });
    std::uint32_t rep = bits;
    if (partner_tied && !(bits & 1u)) rep = partner;  // prefer the side holding sensor 1
    if (std::find(masks.begin(), masks.end(), rep) == masks.end()) masks.push_back(rep);
  }
  std::sort(masks.begin(), masks.end());

  BruteForceResult result;
  result.value = best;
  for (std::uint32_t m : masks) result.maximizers.push_back(SensorSelection::from_bits(m, n));
  return result;
}

SpinPolynomial interpolate_polynomial(const std::function<double(const SpinAssignment&)>& evaluator,
                                      int n) {
  if (n < 0) throw ValidationError("variable count must be nonnegative");
  if (n > kInterpolationLimit) {
    throw ProblemTooLarge("interpolation over " + std::to_string(n) + " variables exceeds the limit of " +
                          std::to_string(kInterpolationLimit));
  }

  const std::size_t size = std::size_t{1} << n;
  std::vector<double> vals(size);
  for (std::uint32_t b = 0; b < size; ++b) {
    vals[b] = evaluator(SpinAssignment::from_bits(b, n));
  }

  // In-place character transform: after the pass for bit i, that bit of the
  // index selects the s_{i+1}-odd component, so vals[mask] ends up as the
  // coefficient of the monomial with exactly the bits of mask.
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t b = 0; b < size; ++b) {
      if (b & bit) continue;
      const double at_minus = vals[b];
      const double at_plus = vals[b | bit];
      vals[b] = (at_plus + at_minus) / 2.0;
      vals[b | bit] = (at_plus - at_minus) / 2.0;
    }
  }

  double max_abs = 0.0;
  for (double c : vals) max_abs = std::max(max_abs, std::abs(c));
  const double threshold = kCoefficientDropTolerance * max_abs;

  SpinPolynomial out(n);
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    if (vals[mask] != 0.0 && std::abs(vals[mask]) >= threshold) {
      out.add_term(mask_to_monomial(mask), vals[mask]);
    }
  }
  return out;
}

}  // namespace miqubo
