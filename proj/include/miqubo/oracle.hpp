#pragma once

#include <functional>
#include <optional>

#include "miqubo/model.hpp"

namespace miqubo {

inline constexpr int kBruteForceLimit = 24;
inline constexpr int kInterpolationLimit = 20;

/// Differential entropy of the Gaussian model in nats:
/// 1/2 ln(det Sigma) + n/2 (1 + ln 2pi).
double entropy(const CovarianceMatrix& cov);

/// det(Sigma_SS) * det(Sigma_TT); an empty block contributes 1.
double subset_objective(const CovarianceMatrix& cov, const SensorSelection& sel);

/// I(S, T) = 1/2 ln[ det(Sigma_SS) det(Sigma_TT) / det(Sigma_XX) ], in nats.
double mutual_information(const CovarianceMatrix& cov, const SensorSelection& sel);

struct BruteForceResult {
  /// Every maximizing partition; complementary selections are collapsed to
  /// one entry. Sorted by selection bit encoding.
  std::vector<SensorSelection> maximizers;
  double value;
};

/// Exhaustive scan of subset_objective over all 2^n subsets, or over the
/// subsets of size k when a cardinality is given.
BruteForceResult brute_force_optimum(const CovarianceMatrix& cov,
                                     std::optional<int> k = std::nullopt);

/// The unique multilinear spin polynomial agreeing with the evaluator on all
/// 2^n assignments: c_M = 2^-n sum_s f(s) prod_{i in M} s_i.
SpinPolynomial interpolate_polynomial(const std::function<double(const SpinAssignment&)>& evaluator,
                                      int n);

}  // namespace miqubo
