#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "forrlab/boolfn.hpp"
#include "forrlab/stats.hpp"

using namespace forrlab;
using namespace forrlab::boolfn;

namespace {

// Direct O(4^n) summation: fhat(S) = 2^-n sum_y f(y) prod_{i in S} y_i.
Eigen::VectorXd spectrum_by_summation(const TruthTable& f) {
  const auto size = static_cast<std::size_t>(f.values.size());
  Eigen::VectorXd coeffs(f.values.size());
  for (std::size_t s = 0; s < size; ++s) {
    double sum = 0.0;
    for (std::size_t y = 0; y < size; ++y) sum += f(y) * character(s, y);
    coeffs[static_cast<Eigen::Index>(s)] = sum / static_cast<double>(size);
  }
  return coeffs;
}

// Multilinear evaluation of a spectrum at a +-1 point given by index.
double evaluate_polynomial(const FourierSpectrum& s, std::size_t x) {
  double value = 0.0;
  for (std::size_t idx = 0; idx < s.size(); ++idx) value += s(idx) * character(idx, x);
  return value;
}

}  // namespace

TEST_CASE("index convention is a bijection with +1 as bit zero, MSB first") {
  const std::vector<int> x{1, -1, 1};
  CHECK(index_of_input(x) == 0b010);
  CHECK(input_of_index(0b010, 3) == x);
  for (std::size_t i = 0; i < 8; ++i) CHECK(index_of_input(input_of_index(i, 3)) == i);
  CHECK_THROWS_AS(index_of_input(std::vector<int>{2}), std::invalid_argument);
}

TEST_CASE("fwht on n=1 constants and dictator") {
  const TruthTable ones = TruthTable::constant(1);
  const FourierSpectrum s0 = fwht(ones);
  CHECK(s0(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s0(1) == doctest::Approx(0.0).epsilon(1e-14));

  Eigen::VectorXd dict(2);
  dict << 1.0, -1.0;  // f(x) = x_1
  const FourierSpectrum s1 = fwht(TruthTable(1, dict));
  CHECK(s1(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(s1(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fwht matches the direct summation oracle") {
  Eigen::VectorXd v(4);
  v << 1.0, 1.0, 1.0, -1.0;
  const TruthTable f(2, v);
  const Eigen::VectorXd expected = spectrum_by_summation(f);
  const FourierSpectrum s = fwht(f);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(s.coeffs[i] == doctest::Approx(expected[i]).epsilon(1e-13));

  RngStream rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const TruthTable g = sample_uniform_fn(4, rng);
    const Eigen::VectorXd oracle = spectrum_by_summation(g);
    CHECK((fwht(g).coeffs - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inverse_fwht round-trips and matches pointwise evaluation") {
  RngStream rng(7);
  const TruthTable f = sample_uniform_fn(5, rng);
  const Eigen::VectorXd back = inverse_fwht(fwht(f));
  CHECK((back - f.values).cwiseAbs().maxCoeff() < 1e-12);

  FourierSpectrum constant;
  constant.n = 3;
  constant.coeffs = Eigen::VectorXd::Zero(8);
  constant.coeffs[0] = 1.0;
  CHECK((inverse_fwht(constant) - Eigen::VectorXd::Ones(8)).cwiseAbs().maxCoeff() < 1e-14);

  FourierSpectrum random_spec;
  random_spec.n = 3;
  random_spec.coeffs = Eigen::VectorXd(8);
  for (Eigen::Index i = 0; i < 8; ++i) random_spec.coeffs[i] = rng.gaussian();
  const Eigen::VectorXd values = inverse_fwht(random_spec);
  for (std::size_t x = 0; x < 8; ++x)
    CHECK(values[static_cast<Eigen::Index>(x)] ==
          doctest::Approx(evaluate_polynomial(random_spec, x)).epsilon(1e-12));
}

TEST_CASE("unnormalized transform applied twice is 2^n times the identity") {
  RngStream rng(3);
  const TruthTable f = sample_uniform_fn(4, rng);
  Eigen::VectorXd v = f.values;
  fwht_inplace(v);
  fwht_inplace(v);
  CHECK((v - 16.0 * f.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("l1_level on known functions and against subset enumeration") {
  const FourierSpectrum constant = fwht(TruthTable::constant(3));
  CHECK(l1_level(constant, 0) == doctest::Approx(1.0));
  CHECK(l1_level(constant, 1) == doctest::Approx(0.0));

  Eigen::VectorXd dict(4);
  dict << 1.0, 1.0, -1.0, -1.0;  // f(x) = x_1 on n=2
  const FourierSpectrum s = fwht(TruthTable(2, dict));
  CHECK(l1_level(s, 1) == doctest::Approx(1.0));

  RngStream rng(5);
  const FourierSpectrum random_spec = fwht(sample_uniform_fn(3, rng));
  for (int level = 0; level <= 3; ++level) {
    double expected = 0.0;
    for (std::size_t idx = 0; idx < 8; ++idx)
      if (std::popcount(idx) == level) expected += std::abs(random_spec(idx));
    CHECK(l1_level(random_spec, level) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK_THROWS_AS(l1_level(random_spec, 4), std::invalid_argument);
  CHECK_THROWS_AS(l1_level(random_spec, -1), std::invalid_argument);
}

TEST_CASE("trnc clamps and rescales") {
  CHECK(trnc(0.5, 1.0) == 0.5);
  CHECK(trnc(2.0, 1.0) == 1.0);
  CHECK(trnc(-3.0, 0.5) == -0.5);
  CHECK_THROWS_AS(trnc(1.0, 0.0), std::invalid_argument);
  RngStream rng(9);
  for (int i = 0; i < 100; ++i) {
    const double z = rng.gaussian(2.0);
    const double a = 0.1 + rng.uniform();
    CHECK(trnc(z, a) == doctest::Approx(a * trnc(z / a)).epsilon(1e-14));
  }
}

TEST_CASE("sample_uniform_fn is deterministic per seed and unbiased") {
  RngStream a(42), b(42), c(43);
  const TruthTable fa = sample_uniform_fn(6, a);
  const TruthTable fb = sample_uniform_fn(6, b);
  const TruthTable fc = sample_uniform_fn(6, c);
  CHECK(fa.values == fb.values);
  CHECK(fa.values != fc.values);

  RngStream rng(100);
  const int trials = 10000;
  double total = 0.0;
  double sq_coeff = 0.0;
  for (int t = 0; t < trials; ++t) {
    const TruthTable f = sample_uniform_fn(6, rng);
    total += f.values.sum();
    sq_coeff += fwht(f).coeffs.cwiseAbs2().mean();
  }
  const double mean_entry = total / (trials * 64.0);
  CHECK(std::abs(mean_entry) < 4.0 / std::sqrt(trials * 64.0));
  // Mean squared coefficient is exactly 2^-n in expectation.
  const double mean_sq = sq_coeff / trials;
  CHECK(mean_sq == doctest::Approx(1.0 / 64.0).epsilon(0.02));
}

TEST_CASE("sample_biased_fn respects its biases") {
  RngStream rng(2024);
  const TruthTable all_plus = sample_biased_fn(Eigen::VectorXd::Ones(16), rng);
  CHECK(all_plus.values.minCoeff() == 1.0);

  CHECK_THROWS_AS(sample_biased_fn(Eigen::VectorXd::Constant(4, 1.5), rng),
                  std::invalid_argument);

  const int trials = 10000;
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(64);
  for (int t = 0; t < trials; ++t)
    sums += sample_biased_fn(Eigen::VectorXd::Constant(64, 0.3), rng).values;
  // Per-coordinate Hoeffding at 99% with a union bound over 64 coordinates.
  const double halfwidth = 2.0 * hoeffding_halfwidth(trials, 0.01 / 64);
  CHECK(((sums / trials).array() - 0.3).abs().maxCoeff() < halfwidth);

  Eigen::VectorXd zero_sums = Eigen::VectorXd::Zero(64);
  for (int t = 0; t < 2000; ++t)
    zero_sums += sample_biased_fn(Eigen::VectorXd::Zero(64), rng).values;
  CHECK((zero_sums / 2000).cwiseAbs().maxCoeff() < 2.0 * hoeffding_halfwidth(2000, 0.01 / 64));
}

TEST_CASE("Parseval and per-level mass partition hold for random tables") {
  RngStream rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const TruthTable f = sample_uniform_fn(6, rng);
    const FourierSpectrum s = fwht(f);
    CHECK(std::abs(s.coeffs.squaredNorm() - 1.0) < 1e-12);
    CHECK(s.coeffs.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    double level_mass = 0.0;
    for (int level = 0; level <= 6; ++level) {
      for (std::size_t idx = 0; idx < s.size(); ++idx)
        if (std::popcount(idx) == level) level_mass += s(idx) * s(idx);
    }
    CHECK(level_mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("truth table validation rejects malformed input") {
  CHECK_THROWS_AS(TruthTable(2, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable(1, Eigen::VectorXd::Constant(2, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable::constant(0), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable::constant(25), cap_error);
}
