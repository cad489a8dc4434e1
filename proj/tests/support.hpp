#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

// Shared fixtures for the test suites. The determinant here is deliberately
// naive (cofactor expansion) so it stays independent of the library's LU
// path and can serve as an oracle against it.

namespace testsupport {

inline Eigen::MatrixXd toy_a() {
  Eigen::MatrixXd m(3, 3);
  m << 2.0, 0.1, 1.0,
       0.1, 2.0, 0.1,
       1.0, 0.1, 2.0;
  return m;
}

inline Eigen::MatrixXd toy_b() {
  Eigen::MatrixXd m(3, 3);
  m << 2.0, 0.5, 1.0,
       0.5, 2.0, 0.1,
       1.0, 0.1, 2.0;
  return m;
}

inline double naive_determinant(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  double sign = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index mc = 0;
      for (Eigen::Index cc = 0; cc < n; ++cc) {
        if (cc == c) continue;
        minor(r - 1, mc++) = m(r, cc);
      }
    }
    det += sign * m(0, c) * naive_determinant(minor);
    sign = -sign;
  }
  return det;
}

inline double naive_subset_objective(const Eigen::MatrixXd& sigma, std::uint32_t bits) {
  std::vector<Eigen::Index> s, t;
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    ((bits >> i) & 1u ? s : t).push_back(i);
  }
  auto block = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) {
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sigma(idx[r], idx[c]);
      }
    }
    return out;
  };
  return naive_determinant(block(s)) * naive_determinant(block(t));
}

// Small deterministic generator so tests do not depend on standard-library
// distribution internals.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Random well-conditioned PD matrix: A^T A plus a diagonal bump.
inline Eigen::MatrixXd random_pd(TestRng& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = rng.uniform(-1.0, 1.0);
  }
  return a.transpose() * a + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace testsupport
