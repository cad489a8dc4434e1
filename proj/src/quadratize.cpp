#include "miqubo/quadratize.hpp"

#include <algorithm>
#include <cmath>

namespace miqubo {

QuboModel::QuboModel(int num_sensors) : num_sensors_(num_sensors) {
  for (int i = 1; i <= num_sensors; ++i) {
    variables_.push_back(QuboVariable{i, false, std::nullopt});
  }
}

int QuboModel::add_auxiliary(int i, int j) {
  if (i < 1 || j < 1 || i >= j || j > num_variables()) {
    throw ValidationError("auxiliary defining pair must name previously registered variables");
  }
  const int id = num_variables() + 1;
  variables_.push_back(QuboVariable{id, true, std::make_pair(i, j)});
  return id;
}

void QuboModel::add_linear(int i, double c) {
  if (i < 1 || i > num_variables()) throw IndexOutOfRange("linear term variable out of range");
  if (c == 0.0) return;
  auto [it, inserted] = linear_.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) linear_.erase(it);
  }
}

void QuboModel::add_quadratic(int i, int j, double c) {
  if (i < 1 || i > num_variables() || j < 1 || j > num_variables()) {
    throw IndexOutOfRange("quadratic term variable out of range");
  }
  if (i == j) throw ValidationError("quadratic keys must have distinct members");
  if (i > j) std::swap(i, j);
  if (c == 0.0) return;
  auto [it, inserted] = quadratic_.emplace(std::make_pair(i, j), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) quadratic_.erase(it);
  }
}

double QuboModel::energy(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != num_variables()) {
    throw DimensionMismatch("assignment length must match variable count");
  }
  double total = offset_;
  for (const auto& [i, c] : linear_) {
    if (x[static_cast<std::size_t>(i - 1)]) total += c;
  }
  for (const auto& [ij, c] : quadratic_) {
    if (x[static_cast<std::size_t>(ij.first - 1)] && x[static_cast<std::size_t>(ij.second - 1)]) total += c;
  }
  return total;
}

BooleanPolynomial spin_to_boolean(const SpinPolynomial& p) {
  BooleanPolynomial out(p.n());
  std::vector<int> subset;
  for (const auto& [mono, c] : p.terms()) {
    const std::size_t deg = mono.size();
    // prod_{i in M} (2 x_i - 1) = sum over subsets U of M of
    //   2^|U| (-1)^{|M| - |U|} prod_{i in U} x_i
    for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << deg); ++pick) {
      subset.clear();
      for (std::size_t t = 0; t < deg; ++t) {
        if ((pick >> t) & 1u) subset.push_back(mono[t]);
      }
      const double scale = std::ldexp(1.0, static_cast<int>(subset.size()));
      const double sign = (deg - subset.size()) % 2 == 0 ? 1.0 : -1.0;
      out.add_term(subset, c * scale * sign);
    }
  }
  return out;
}

double default_cardinality_weight(const BooleanPolynomial& p) {
  double mass = 0.0;
  for (const auto& [mono, c] : p.terms()) mass += std::abs(c);
  return 2.0 * mass;
}

BooleanPolynomial add_cardinality_penalty(const BooleanPolynomial& p, int k, double lambda) {
  if (k < 0 || k > p.num_sensors()) throw InvalidCardinality("cardinality must lie in [0, n]");
  if (!(lambda > 0.0)) throw InvalidCardinality("cardinality penalty weight must be positive");
  BooleanPolynomial out = p;
  // lambda (sum x_i - k)^2 with x^2 = x:
  out.add_term({}, lambda * k * k);
  for (int i = 1; i <= p.num_sensors(); ++i) {
    out.add_term({i}, lambda * (1.0 - 2.0 * k));
    for (int j = i + 1; j <= p.num_sensors(); ++j) {
      out.add_term({i, j}, 2.0 * lambda);
    }
  }
  out.set_cardinality(CardinalityPenalty{k, lambda});
  return out;
}

QuboModel quadratize(const BooleanPolynomial& p) {
  BooleanPolynomial work = p;
  std::vector<SubstitutionPenalty> substitutions;

  while (true) {
    std::map<std::pair<int, int>, int> pair_counts;
    for (const auto& [mono, c] : work.terms()) {
      if (mono.size() < 3) continue;
      for (std::size_t a = 0; a < mono.size(); ++a) {
        for (std::size_t b = a + 1; b < mono.size(); ++b) {
          ++pair_counts[{mono[a], mono[b]}];
        }
      }
    }
    if (pair_counts.empty()) break;

    // Most frequent pair; map order makes the tie-break the lexicographically
    // smallest (i, j).
    std::pair<int, int> chosen = pair_counts.begin()->first;
    int chosen_count = pair_counts.begin()->second;
    for (const auto& [pair, count] : pair_counts) {
      if (count > chosen_count) {
        chosen = pair;
        chosen_count = count;
      }
    }
    const auto [i, j] = chosen;
    const int y = work.add_auxiliary(i, j);

    double rewritten_mass = 0.0;
    std::vector<std::pair<Monomial, double>> moves;
    for (const auto& [mono, c] : work.terms()) {
      if (mono.size() < 3) continue;
      if (!std::binary_search(mono.begin(), mono.end(), i) ||
          !std::binary_search(mono.begin(), mono.end(), j)) {
        continue;
      }
      moves.emplace_back(mono, c);
      rewritten_mass += std::abs(c);
    }
    for (const auto& [mono, c] : moves) {
      work.add_term(mono, -c);
      Monomial rewritten;
      for (int v : mono) {
        if (v != i && v != j) rewritten.push_back(v);
      }
      rewritten.push_back(y);  // y is the largest id, so order is preserved
      work.add_term(std::move(rewritten), c);
    }

    // Rosenberg gadget: zero when y = x_i x_j, at least M otherwise.
    const double weight = 1.0 + rewritten_mass;
    work.add_term({i, j}, weight);
    work.add_term({i, y}, -2.0 * weight);
    work.add_term({j, y}, -2.0 * weight);
    work.add_term({y}, 3.0 * weight);
    substitutions.push_back(SubstitutionPenalty{y, weight});
  }

  QuboModel model(work.num_sensors());
  for (const AuxVariable& aux : work.auxiliaries()) model.add_auxiliary(aux.first, aux.second);
  for (const SubstitutionPenalty& sub : substitutions) model.record_substitution(sub);
  for (const auto& [mono, c] : work.terms()) {
    switch (mono.size()) {
      case 0:
        model.add_offset(c);
        break;
      case 1:
        model.add_linear(mono[0], c);
        break;
      case 2:
        model.add_quadratic(mono[0], mono[1], c);
        break;
      default:
        throw Error("quadratization failed to reach degree <= 2");
    }
  }
  if (p.cardinality()) model.set_cardinality(*p.cardinality());
  return model;
}

IsingModel qubo_to_ising(const QuboModel& q) {
  IsingModel ising;
  auto add_field = [&](int i, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = ising.fields.emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) ising.fields.erase(it);
    }
  };
  ising.offset = q.offset();
  for (const auto& [i, c] : q.linear()) {
    add_field(i, c / 2.0);
    ising.offset += c / 2.0;
  }
  for (const auto& [ij, c] : q.quadratic()) {
    const double quarter = c / 4.0;
    if (quarter != 0.0) ising.couplings[ij] += quarter;
    add_field(ij.first, quarter);
    add_field(ij.second, quarter);
    ising.offset += quarter;
  }
  std::erase_if(ising.couplings, [](const auto& kv) { return kv.second == 0.0; });
  return ising;
}

}  // namespace miqubo
