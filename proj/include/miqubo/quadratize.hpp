#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "miqubo/model.hpp"

namespace miqubo {

struct QuboVariable {
  int id;  // 1-based, contiguous; sensors first, auxiliaries after
  bool auxiliary;
  std::optional<std::pair<int, int>> pair;  // defining pair for auxiliaries

  bool operator==(const QuboVariable&) const = default;
};

struct SubstitutionPenalty {
  int aux;
  double weight;

  bool operator==(const SubstitutionPenalty&) const = default;
};

/// Quadratic boolean objective: offset + sum linear_i x_i + sum quad_ij x_i x_j.
/// Carries the variable registry and the penalty records of the reduction
/// that produced it.
class QuboModel {
 public:
  QuboModel() = default;
  explicit QuboModel(int num_sensors);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_sensors() const { return num_sensors_; }
  const std::vector<QuboVariable>& variables() const { return variables_; }
  const std::map<int, double>& linear() const { return linear_; }
  const std::map<std::pair<int, int>, double>& quadratic() const { return quadratic_; }
  double offset() const { return offset_; }
  const std::vector<SubstitutionPenalty>& substitutions() const { return substitutions_; }
  const std::optional<CardinalityPenalty>& cardinality() const { return cardinality_; }

  int add_auxiliary(int i, int j);  // returns the new variable id
  void add_linear(int i, double c);
  void add_quadratic(int i, int j, double c);
  void add_offset(double c) { offset_ += c; }
  void record_substitution(SubstitutionPenalty p) { substitutions_.push_back(p); }
  void set_cardinality(CardinalityPenalty p) { cardinality_ = p; }

  /// Energy of a 0/1 assignment indexed by variable id - 1.
  double energy(const std::vector<int>& x) const;

  bool operator==(const QuboModel&) const = default;

 private:
  int num_sensors_ = 0;
  std::vector<QuboVariable> variables_;
  std::map<int, double> linear_;
  std::map<std::pair<int, int>, double> quadratic_;
  double offset_ = 0.0;
  std::vector<SubstitutionPenalty> substitutions_;
  std::optional<CardinalityPenalty> cardinality_;
};

/// Change of variables s_i = 2 x_i - 1; value-preserving at every assignment.
BooleanPolynomial spin_to_boolean(const SpinPolynomial& p);

/// Default constraint weight: twice the total coefficient mass of the
/// objective, so one unit of violation always outweighs any objective gain.
double default_cardinality_weight(const BooleanPolynomial& p);

/// Adds lambda * (sum_{i in sensors} x_i - k)^2, expanded multilinearly.
BooleanPolynomial add_cardinality_penalty(const BooleanPolynomial& p, int k, double lambda);

/// Reduces higher-order terms to quadratic by repeated Rosenberg substitution:
/// the pair (i, j) occurring in the most monomials of degree >= 3 is replaced
/// by a fresh auxiliary y, with penalty M (x_i x_j - 2 x_i y - 2 x_j y + 3 y)
/// and M = 1 + sum |c| over the rewritten monomials. Minimizers of the result
/// project exactly onto the minimizers of p.
QuboModel quadratize(const BooleanPolynomial& p);

struct IsingModel {
  std::map<int, double> fields;
  std::map<std::pair<int, int>, double> couplings;
  double offset = 0.0;
};

/// x = (s + 1)/2 substitution; value-preserving at every assignment.
IsingModel qubo_to_ising(const QuboModel& q);

}  // namespace miqubo
