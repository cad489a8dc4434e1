#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "miqubo/expansion.hpp"
#include "miqubo/oracle.hpp"
#include "miqubo/quadratize.hpp"
#include "support.hpp"

using namespace miqubo;

namespace {

std::vector<int> bits_to_x(std::uint32_t bits, int count) {
  std::vector<int> x(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) x[static_cast<std::size_t>(v)] = (bits >> v) & 1u;
  return x;
}

// Exhaustive QUBO scan, independent of the solve module.
std::pair<double, std::vector<std::uint32_t>> scan_qubo(const QuboModel& q) {
  double best = 1e300;
  std::vector<std::uint32_t> argmin;
  for (std::uint32_t bits = 0; bits < (1u << q.num_variables()); ++bits) {
    const double e = q.energy(bits_to_x(bits, q.num_variables()));
    const double window = 1e-9 * std::max(1.0, std::abs(best));
    if (e < best - window) {
      best = e;
      argmin.assign(1, bits);
    } else if (e <= best + window) {
      argmin.push_back(bits);
    }
  }
  return {best, argmin};
}

std::pair<double, std::vector<std::uint32_t>> scan_boolean(const BooleanPolynomial& p) {
  double best = 1e300;
  std::vector<std::uint32_t> argmin;
  for (std::uint32_t bits = 0; bits < (1u << p.num_variables()); ++bits) {
    const double e = evaluate_boolean(p, bits_to_x(bits, p.num_variables()));
    const double window = 1e-9 * std::max(1.0, std::abs(best));
    if (e < best - window) {
      best = e;
      argmin.assign(1, bits);
    } else if (e <= best + window) {
      argmin.push_back(bits);
    }
  }
  return {best, argmin};
}

BooleanPolynomial random_boolean(testsupport::TestRng& rng, int vars, int max_degree) {
  BooleanPolynomial p(vars);
  const int terms = rng.integer(3, 8);
  for (int t = 0; t < terms; ++t) {
    const int degree = rng.integer(0, std::min(max_degree, vars));
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < degree) picked.insert(rng.integer(1, vars));
    p.add_term(Monomial(picked.begin(), picked.end()), rng.uniform(-2.0, 2.0));
  }
  return p;
}

}  // namespace

TEST_SUITE("quadratize") {

TEST_CASE("spin_to_boolean on a single spin") {
  SpinPolynomial p(1);
  p.add_term({1}, 1.0);
  const BooleanPolynomial b = spin_to_boolean(p);
  CHECK(b.coefficient({}) == -1.0);
  CHECK(b.coefficient({1}) == 2.0);
  CHECK(b.terms().size() == 2);
}

TEST_CASE("spin_to_boolean on a pair") {
  SpinPolynomial p(2);
  p.add_term({1, 2}, 1.0);
  const BooleanPolynomial b = spin_to_boolean(p);
  CHECK(b.coefficient({}) == 1.0);
  CHECK(b.coefficient({1}) == -2.0);
  CHECK(b.coefficient({2}) == -2.0);
  CHECK(b.coefficient({1, 2}) == 4.0);
}

TEST_CASE("spin_to_boolean preserves values on the toy-A objective") {
  const SpinPolynomial p = expand_objective(validate_covariance(testsupport::toy_a()));
  const BooleanPolynomial b = spin_to_boolean(p);
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    const SpinAssignment s = SpinAssignment::from_bits(bits, 3);
    CHECK(std::abs(evaluate_boolean(b, bits_to_x(bits, 3)) - evaluate_polynomial(p, s)) <= 1e-12);
  }
}

TEST_CASE("spin_to_boolean preserves values on random polynomials") {
  testsupport::TestRng rng(401);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = rng.integer(1, 6);
    SpinPolynomial p(n);
    for (int t = 0; t < 6; ++t) {
      Monomial m;
      for (int i = 1; i <= n; ++i) {
        if (rng.uniform() < 0.4) m.push_back(i);
      }
      p.add_term(m, rng.uniform(-2.0, 2.0));
    }
    const BooleanPolynomial b = spin_to_boolean(p);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      CHECK(std::abs(evaluate_boolean(b, bits_to_x(bits, n)) -
                     evaluate_polynomial(p, SpinAssignment::from_bits(bits, n))) <= 1e-12);
    }
  }
}

TEST_CASE("quadratic input passes through without auxiliaries") {
  BooleanPolynomial p(3);
  p.add_term({}, 1.0);
  p.add_term({1}, -2.0);
  p.add_term({1, 3}, 0.75);
  const QuboModel q = quadratize(p);
  CHECK(q.num_variables() == 3);
  CHECK(q.substitutions().empty());
  CHECK(q.offset() == 1.0);
  CHECK(q.linear().at(1) == -2.0);
  CHECK(q.quadratic().at({1, 3}) == 0.75);
}

TEST_CASE("a single cubic term needs one auxiliary") {
  BooleanPolynomial p(3);
  p.add_term({1, 2, 3}, -1.0);
  const QuboModel q = quadratize(p);
  REQUIRE(q.num_variables() == 4);
  REQUIRE(q.variables().back().auxiliary);
  CHECK(*q.variables().back().pair == std::pair<int, int>{1, 2});
  REQUIRE(q.substitutions().size() == 1);
  CHECK(q.substitutions().front().weight == 2.0);  // 1 + |-1|

  const auto [best, argmin] = scan_qubo(q);
  CHECK(best == doctest::Approx(-1.0).epsilon(1e-12));
  REQUIRE(argmin.size() == 1);
  CHECK(argmin.front() == 0b1111u);  // x1 = x2 = x3 = 1 with consistent y
}

TEST_CASE("pipeline QUBO minimizers match the brute-force oracle") {
  testsupport::TestRng rng(419);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4 + trial % 2;
    const CovarianceMatrix cov = validate_covariance(testsupport::random_pd(rng, n));
    const QuboModel q = quadratize(spin_to_boolean(expand_objective(cov).negated()));

    const auto [best, argmin] = scan_qubo(q);
    std::set<std::uint32_t> projected;
    for (std::uint32_t bits : argmin) {
      const auto x = bits_to_x(bits, q.num_variables());
      std::vector<int> chosen;
      for (int i = 1; i <= n; ++i) {
        if (x[static_cast<std::size_t>(i - 1)]) chosen.push_back(i);
      }
      projected.insert(SensorSelection(n, chosen).canonical().bits());
    }

    const BruteForceResult oracle = brute_force_optimum(cov);
    std::set<std::uint32_t> expected;
    for (const SensorSelection& sel : oracle.maximizers) expected.insert(sel.canonical().bits());
    CHECK(projected == expected);
    CHECK(std::abs(best + oracle.value) <= 1e-9 * std::max(1.0, std::abs(oracle.value)));
  }
}

TEST_CASE("cardinality penalty expands to the documented terms") {
  BooleanPolynomial p(3);
  const double lambda = 3.5;
  const BooleanPolynomial out = add_cardinality_penalty(p, 2, lambda);
  CHECK(out.coefficient({}) == lambda * 4.0);
  for (int i = 1; i <= 3; ++i) CHECK(out.coefficient({i}) == -3.0 * lambda);
  CHECK(out.coefficient({1, 2}) == 2.0 * lambda);
  CHECK(out.coefficient({1, 3}) == 2.0 * lambda);
  CHECK(out.coefficient({2, 3}) == 2.0 * lambda);
  REQUIRE(out.cardinality());
  CHECK(out.cardinality()->k == 2);
  CHECK(out.cardinality()->lambda == lambda);

  // Zero contribution at any feasible assignment.
  CHECK(evaluate_boolean(out, {1, 1, 0}) == 0.0);
  CHECK(evaluate_boolean(out, {0, 1, 1}) == 0.0);
  CHECK(evaluate_boolean(out, {1, 1, 1}) == lambda);
}

TEST_CASE("cardinality penalty rejects invalid k") {
  BooleanPolynomial p(3);
  CHECK_THROWS_AS(add_cardinality_penalty(p, -1, 1.0), InvalidCardinality);
  CHECK_THROWS_AS(add_cardinality_penalty(p, 4, 1.0), InvalidCardinality);
  CHECK_THROWS_AS(add_cardinality_penalty(p, 2, 0.0), InvalidCardinality);
}

TEST_CASE("toy A constrained to two sensors keeps both optimal pairs") {
  const CovarianceMatrix cov = validate_covariance(testsupport::toy_a());
  BooleanPolynomial objective = spin_to_boolean(expand_objective(cov).negated());
  objective = add_cardinality_penalty(objective, 2, default_cardinality_weight(objective));
  const QuboModel q = quadratize(objective);

  const auto [best, argmin] = scan_qubo(q);
  std::set<std::uint32_t> selections(argmin.begin(), argmin.end());
  CHECK(selections == std::set<std::uint32_t>{0b011u, 0b110u});  // {1,2} and {2,3}
  CHECK(best == doctest::Approx(-7.98).epsilon(1e-9));
}

TEST_CASE("qubo_to_ising on a linear model") {
  QuboModel q(1);
  q.add_linear(1, -1.0);
  const IsingModel ising = qubo_to_ising(q);
  CHECK(ising.fields.at(1) == -0.5);
  CHECK(ising.offset == -0.5);
  CHECK(ising.couplings.empty());
}

TEST_CASE("qubo_to_ising on the zero model") {
  const IsingModel ising = qubo_to_ising(QuboModel(2));
  CHECK(ising.fields.empty());
  CHECK(ising.couplings.empty());
  CHECK(ising.offset == 0.0);
}

TEST_CASE("qubo_to_ising preserves energies") {
  const CovarianceMatrix cov = validate_covariance(testsupport::toy_a());
  const QuboModel q = quadratize(spin_to_boolean(expand_objective(cov).negated()));
  const IsingModel ising = qubo_to_ising(q);
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    const auto x = bits_to_x(bits, 3);
    double spin_energy = ising.offset;
    auto spin_of = [&](int i) { return x[static_cast<std::size_t>(i - 1)] ? 1.0 : -1.0; };
    for (const auto& [i, h] : ising.fields) spin_energy += h * spin_of(i);
    for (const auto& [ij, j] : ising.couplings) spin_energy += j * spin_of(ij.first) * spin_of(ij.second);
    CHECK(std::abs(spin_energy - q.energy(x)) <= 1e-12);
  }
}

TEST_CASE("qubo_to_ising preserves energies on random models") {
  testsupport::TestRng rng(431);
  for (int trial = 0; trial < 10; ++trial) {
    const int vars = rng.integer(1, 6);
    QuboModel q(vars);
    q.add_offset(rng.uniform(-2.0, 2.0));
    for (int i = 1; i <= vars; ++i) {
      if (rng.uniform() < 0.7) q.add_linear(i, rng.uniform(-2.0, 2.0));
      for (int j = i + 1; j <= vars; ++j) {
        if (rng.uniform() < 0.5) q.add_quadratic(i, j, rng.uniform(-2.0, 2.0));
      }
    }
    const IsingModel ising = qubo_to_ising(q);
    for (std::uint32_t bits = 0; bits < (1u << vars); ++bits) {
      const auto x = bits_to_x(bits, vars);
      double spin_energy = ising.offset;
      auto spin_of = [&](int i) { return x[static_cast<std::size_t>(i - 1)] ? 1.0 : -1.0; };
      for (const auto& [i, h] : ising.fields) spin_energy += h * spin_of(i);
      for (const auto& [ij, c] : ising.couplings) {
        spin_energy += c * spin_of(ij.first) * spin_of(ij.second);
      }
      CHECK(std::abs(spin_energy - q.energy(x)) <= 1e-12);
    }
  }
}

TEST_CASE("quadratization is sound on random higher-order polynomials") {
  testsupport::TestRng rng(433);
  for (int trial = 0; trial < 25; ++trial) {
    const int vars = rng.integer(3, 5);
    const BooleanPolynomial p = random_boolean(rng, vars, 5);
    const QuboModel q = quadratize(p);
    CHECK(q.num_sensors() == vars);

    const auto [hobo_best, hobo_argmin] = scan_boolean(p);
    const auto [qubo_best, qubo_argmin] = scan_qubo(q);
    CHECK(std::abs(hobo_best - qubo_best) <= 1e-9 * std::max(1.0, std::abs(hobo_best)));

    // Projections of the QUBO minimizers are exactly the HOBO minimizers,
    // and every auxiliary is consistent there.
    std::set<std::uint32_t> projected;
    const std::uint32_t var_mask = (1u << vars) - 1;
    for (std::uint32_t bits : qubo_argmin) {
      projected.insert(bits & var_mask);
      const auto x = bits_to_x(bits, q.num_variables());
      for (const QuboVariable& var : q.variables()) {
        if (!var.auxiliary) continue;
        const auto [i, j] = *var.pair;
        CHECK(x[static_cast<std::size_t>(var.id - 1)] ==
              x[static_cast<std::size_t>(i - 1)] * x[static_cast<std::size_t>(j - 1)]);
      }
    }
    std::set<std::uint32_t> expected;
    for (std::uint32_t bits : hobo_argmin) expected.insert(bits & var_mask);
    CHECK(projected == expected);
  }
}

TEST_CASE("default cardinality weight enforces the constraint exhaustively") {
  testsupport::TestRng rng(439);
  for (int n = 3; n <= 6; ++n) {
    const CovarianceMatrix cov = validate_covariance(testsupport::random_pd(rng, n));
    for (int k = 0; k <= n; ++k) {
      BooleanPolynomial objective = spin_to_boolean(expand_objective(cov).negated());
      objective = add_cardinality_penalty(objective, k, default_cardinality_weight(objective));
      const QuboModel q = quadratize(objective);
      const auto [best, argmin] = scan_qubo(q);
      for (std::uint32_t bits : argmin) {
        CHECK(std::popcount(bits & ((1u << n) - 1)) == k);
      }
    }
  }
}

}  // TEST_SUITE
