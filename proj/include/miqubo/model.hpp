#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "miqubo/errors.hpp"

namespace miqubo {

/// Sensor indices are 1-based throughout the public API, matching the S1..Sn
/// labels used in reports. Monomials are sorted, duplicate-free index sets;
/// the empty monomial denotes the constant term.
using Monomial = std::vector<int>;

using TermMap = std::map<Monomial, double>;

/// A +/-1 assignment s over the n sensor candidates; s_i = +1 selects i.
class SpinAssignment {
 public:
  explicit SpinAssignment(std::vector<int> spins);

  /// Decodes a bitmask: bit (i-1) set means s_i = +1.
  static SpinAssignment from_bits(std::uint32_t bits, int n);

  int size() const { return static_cast<int>(spins_.size()); }
  int spin(int i) const;  // 1-based
  const std::vector<int>& spins() const { return spins_; }

  SpinAssignment flipped() const;
  std::string to_string() const;  // "[1, 1, -1]"

  bool operator==(const SpinAssignment&) const = default;
  bool operator<(const SpinAssignment& other) const { return spins_ < other.spins_; }

 private:
  std::vector<int> spins_;
};

/// A subset S of {1..n}; the complement T is implied.
class SensorSelection {
 public:
  SensorSelection(int n, std::vector<int> selected);

  /// Decodes a bitmask: bit (i-1) set means i is in S.
  static SensorSelection from_bits(std::uint32_t bits, int n);

  int n() const { return n_; }
  const std::vector<int>& selected() const { return selected_; }
  int count() const { return static_cast<int>(selected_.size()); }
  std::vector<int> complement() const;
  bool contains(int i) const;
  SensorSelection complemented() const;

  /// Representative of the partition {S, T}: the side containing sensor 1.
  SensorSelection canonical() const;

  std::uint32_t bits() const;
  std::string to_string() const;  // "{S1,S2}"

  bool operator==(const SensorSelection&) const = default;

 private:
  int n_;
  std::vector<int> selected_;  // sorted ascending
};

/// Validated symmetric positive-definite covariance matrix of the sensor
/// candidates. Immutable after construction via validate_covariance().
class CovarianceMatrix {
 public:
  int size() const { return static_cast<int>(sigma_.rows()); }
  const Eigen::MatrixXd& matrix() const { return sigma_; }
  double operator()(int i, int j) const;  // 1-based

  /// Principal submatrix over the given 1-based indices, ascending order.
  Eigen::MatrixXd submatrix(const std::vector<int>& indices) const;

 private:
  explicit CovarianceMatrix(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {}
  friend CovarianceMatrix validate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& raw);

  Eigen::MatrixXd sigma_;
};

/// 0/1 matrix K with k_ij = 1 iff i and j lie in the same block of the
/// partition induced by a selection. k_ii = 1 always; K is symmetric.
class MaskingMatrix {
 public:
  static MaskingMatrix from_selection(const SensorSelection& sel);

  int size() const { return static_cast<int>(k_.rows()); }
  const Eigen::MatrixXd& matrix() const { return k_; }
  double operator()(int i, int j) const;  // 1-based

 private:
  explicit MaskingMatrix(Eigen::MatrixXd k) : k_(std::move(k)) {}
  Eigen::MatrixXd k_;
};

/// Multilinear polynomial over spin variables s_1..s_n. No exactly-zero
/// coefficient is ever stored; equality is equality of term maps.
class SpinPolynomial {
 public:
  explicit SpinPolynomial(int n) : n_(n) {}
  SpinPolynomial(int n, TermMap terms);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  double coefficient(const Monomial& m) const;

  /// Accumulates c onto the monomial; erases the term if the sum is exactly 0.
  void add_term(Monomial m, double c);

  int max_degree() const;
  SpinPolynomial negated() const;

  std::string to_string() const;

  bool operator==(const SpinPolynomial&) const = default;

 private:
  int n_ = 0;
  TermMap terms_;
};

struct AuxVariable {
  int id;     // variable id, always past the sensor ids
  int first;  // defining pair (first, second): y represents x_first * x_second
  int second;

  bool operator==(const AuxVariable&) const = default;
};

struct CardinalityPenalty {
  int k;
  double lambda;

  bool operator==(const CardinalityPenalty&) const = default;
};

/// Multilinear polynomial over boolean variables x in {0,1}. Variables
/// 1..num_sensors are the original sensor bits; any further ids are
/// auxiliaries introduced by quadratization, recorded with their defining
/// pair. An attached cardinality record remembers an added constraint term.
class BooleanPolynomial {
 public:
  explicit BooleanPolynomial(int num_sensors) : num_sensors_(num_sensors) {}

  int num_sensors() const { return num_sensors_; }
  int num_variables() const { return num_sensors_ + static_cast<int>(aux_.size()); }
  const std::vector<AuxVariable>& auxiliaries() const { return aux_; }
  const TermMap& terms() const { return terms_; }
  double coefficient(const Monomial& m) const;

  void add_term(Monomial m, double c);
  int max_degree() const;

  /// Registers a fresh auxiliary for the product x_i * x_j; returns its id.
  int add_auxiliary(int i, int j);

  const std::optional<CardinalityPenalty>& cardinality() const { return cardinality_; }
  void set_cardinality(CardinalityPenalty p) { cardinality_ = p; }

  bool operator==(const BooleanPolynomial&) const = default;

 private:
  int num_sensors_ = 0;
  std::vector<AuxVariable> aux_;
  TermMap terms_;
  std::optional<CardinalityPenalty> cardinality_;
};

/// Validates an n x n covariance matrix: n >= 1, symmetric within relative
/// tolerance 1e-8 (then symmetrized by averaging), strictly positive
/// diagonal, and positive definite (Cholesky pivots all > 0).
CovarianceMatrix validate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& raw);

/// S = { i : s_i = +1 }, T = { i : s_i = -1 }.
SensorSelection selection_from_spins(const SpinAssignment& s);

/// The spin assignment with s_i = +1 exactly for i in S.
SpinAssignment spins_from_selection(const SensorSelection& sel);

/// Sum over terms of coefficient * prod_{i in monomial} s_i.
double evaluate_polynomial(const SpinPolynomial& p, const SpinAssignment& s);

/// Boolean counterpart; x is indexed by variable id - 1, values 0/1.
double evaluate_boolean(const BooleanPolynomial& p, const std::vector<int>& x);

}  // namespace miqubo
