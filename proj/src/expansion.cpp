#include "miqubo/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "miqubo/linalg.hpp"

namespace miqubo {

namespace {

constexpr double kCoefficientDropTolerance = 1e-12;

// Heap's algorithm: successive permutations differ by one swap, so the
// parity sign flips in O(1) per step.
template <typename Visitor>
void for_each_permutation_signed(int n, Visitor&& visit) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  int sign = 1;
  visit(perm, sign);
  int i = 0;
  while (i < n) {
    if (c[static_cast<std::size_t>(i)] < i) {
      if (i % 2 == 0) {
        std::swap(perm[0], perm[static_cast<std::size_t>(i)]);
      } else {
        std::swap(perm[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])],
                  perm[static_cast<std::size_t>(i)]);
      }
      sign = -sign;
      visit(perm, sign);
      ++c[static_cast<std::size_t>(i)];
      i = 0;
    } else {
      c[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
  }
}

Monomial mask_to_monomial(std::uint32_t mask) {
  Monomial m;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) m.push_back(i + 1);
  }
  return m;
}

}  // namespace

int masking_value(const SpinAssignment& s, int i, int j) {
  return (s.spin(i) * s.spin(j) + 1) / 2;
}

Eigen::MatrixXd masked_matrix(const CovarianceMatrix& cov, const SensorSelection& sel) {
  if (cov.size() != sel.n()) throw DimensionMismatch("covariance and selection sizes differ");
  return cov.matrix().cwiseProduct(MaskingMatrix::from_selection(sel).matrix());
}

double masked_determinant(const CovarianceMatrix& cov, const SensorSelection& sel) {
  return determinant_lu(masked_matrix(cov, sel));
}

Monomial reduce_monomial(const std::vector<int>& indices) {
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  Monomial out;
  std::size_t t = 0;
  while (t < sorted.size()) {
    std::size_t run = t;
    while (run < sorted.size() && sorted[run] == sorted[t]) ++run;
    if ((run - t) % 2 == 1) out.push_back(sorted[t]);
    t = run;
  }
  return out;
}

SpinPolynomial expand_objective(const CovarianceMatrix& cov, int expansion_limit) {
  const int n = cov.size();
  if (n > expansion_limit) {
    throw ProblemTooLarge("expansion over " + std::to_string(n) +
                          " sensors exceeds the factorial-cost limit of " +
                          std::to_string(expansion_limit));
  }
  const Eigen::MatrixXd& sigma = cov.matrix();

  // Monomials over n <= 10 spins live in a dense table indexed by bitmask;
  // multiplying by a factor (s_a s_b + 1)/2 halves a coefficient and mirrors
  // the other half onto mask ^ pair, which is exactly the s^2 = 1 reduction.
  std::vector<double> acc(std::size_t{1} << n, 0.0);
  std::vector<std::pair<std::uint32_t, double>> work;
  work.reserve(std::size_t{1} << n);

  for_each_permutation_signed(n, [&](const std::vector<int>& perm, int sign) {
    double coef = sign;
    for (int j = 0; j < n; ++j) {
      coef *= sigma(j, perm[static_cast<std::size_t>(j)]);
      if (coef == 0.0) return;
    }

    work.clear();
    work.emplace_back(0u, coef);
    for (int j = 0; j < n; ++j) {
      const int target = perm[static_cast<std::size_t>(j)];
      if (target == j) continue;  // fixed point: k_jj = 1
      const std::uint32_t pair = (1u << j) | (1u << target);
      const std::size_t size = work.size();
      for (std::size_t t = 0; t < size; ++t) {
        const double half = work[t].second / 2.0;
        work[t].second = half;
        work.emplace_back(work[t].first ^ pair, half);
      }
    }
    for (const auto& [mask, c] : work) acc[mask] += c;
  });

  double max_abs = 0.0;
  for (double c : acc) max_abs = std::max(max_abs, std::abs(c));
  const double threshold = kCoefficientDropTolerance * max_abs;

  SpinPolynomial out(n);
  for (std::uint32_t mask = 0; mask < acc.size(); ++mask) {
    const double c = acc[mask];
    if (c != 0.0 && std::abs(c) >= threshold) out.add_term(mask_to_monomial(mask), c);
  }
  return out;
}

}  // namespace miqubo
