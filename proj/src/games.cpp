#include "forrlab/games.hpp"

#include <cmath>

#include "forrlab/parallel.hpp"

namespace forrlab::games {

Distinguisher make_overlap_bruteforce_distinguisher(double threshold) {
  Distinguisher d;
  d.name = "overlap-bruteforce(" + std::to_string(threshold) + ")";
  d.resource_class = "overlap-bruteforce";
  d.accept = [threshold](const Challenge& challenge, RngStream&) {
    return brute_force_max_overlap(*challenge.state, *challenge.ensemble).value >= threshold;
  };
  return d;
}

Distinguisher make_swap_test_distinguisher() {
  Distinguisher d;
  d.name = "swap-test";
  d.resource_class = "swap-test";
  d.accept = [](const Challenge& challenge, RngStream& rng) {
    const std::uint64_t k = rng.below(challenge.ensemble->num_keys());
    return swap_test(*challenge.state, challenge.ensemble->state(k), rng);
  };
  return d;
}

Distinguisher make_coin_flip_distinguisher() {
  Distinguisher d;
  d.name = "coin-flip";
  d.resource_class = "custom";
  d.accept = [](const Challenge&, RngStream& rng) { return rng.bernoulli(0.5); };
  return d;
}

AdvantageEstimate estimate_advantage(const Distinguisher& d, int hybrid_a, int hybrid_b,
                                     const hybrids::OracleSpec& shape,
                                     const fordist::ForrelationParams& params, long long trials,
                                     RngStream& rng, int workers) {
  if (trials < 100) throw std::invalid_argument("estimate_advantage: need at least 100 trials");
  const std::uint64_t seed_a = rng.next_u64();
  const std::uint64_t seed_b = rng.next_u64();
  auto run_side = [&](int hybrid_id, std::uint64_t seed) {
    auto accepts = parallel_map_seeded<char>(
        seed, static_cast<std::size_t>(trials), workers, [&](std::size_t, RngStream& stream) {
          const hybrids::HybridSample sample =
              hybrids::sample_hybrid(hybrid_id, shape, params, stream);
          const Challenge challenge{&sample.state, &sample.ensemble};
          return static_cast<char>(d.accept(challenge, stream));
        });
    long long hits = 0;
    for (const char a : accepts) hits += a;
    return static_cast<double>(hits) / static_cast<double>(trials);
  };
  AdvantageEstimate est;
  est.trials = trials;
  est.p_a = run_side(hybrid_a, seed_a);
  est.p_b = run_side(hybrid_b, seed_b);
  est.advantage = est.p_a - est.p_b;
  est.abs_advantage = std::abs(est.advantage);
  est.ci_halfwidth = advantage_ci_halfwidth(static_cast<std::size_t>(trials));
  return est;
}

hybrids::HybridSample sample_tau_mixture(const hybrids::OracleSpec& shape,
                                         const fordist::ForrelationParams& params,
                                         RngStream& rng) {
  const int hybrid_id = rng.bernoulli(params.epsilon) ? 1 : 3;
  return hybrids::sample_hybrid(hybrid_id, shape, params, rng);
}

MaxOverlapResult brute_force_max_overlap(const qstate::StateVector& state,
                                         const hybrids::KeyedEnsemble& ensemble) {
  MaxOverlapResult best;
  for (std::uint64_t k = 0; k < ensemble.num_keys(); ++k) {
    const double value = std::abs(qstate::overlap(ensemble.state(k), state));
    if (value > best.value) {
      best.value = value;
      best.key = k;
    }
  }
  return best;
}

GameOutcome shifted_forrelation_game(const hybrids::OracleSpec& shape,
                                     const fordist::ForrelationParams& params, GameSide side,
                                     RngStream& rng) {
  if (shape.n != params.n) throw std::invalid_argument("shifted game: mismatched n");
  if (shape.t != 2) throw std::invalid_argument("shifted game: requires t = 2");
  hybrids::OracleSpec spec(rng.next_u64(), shape.kappa, shape.n, shape.t);
  hybrids::KeyedEnsemble ensemble(spec);

  boolfn::TruthTable h = [&] {
    if (side == GameSide::uniform) return boolfn::sample_uniform_fn(spec.n, rng);
    const std::uint64_t k = rng.below(spec.num_keys());
    const auto [f_k, g_k] = ensemble.pair_fn(k);
    const boolfn::TruthTable g = fordist::sample_conditional_g(f_k, params, rng);
    return g_k * g;
  }();

  GameOutcome outcome{std::move(h), 0.0};
  const double scale = std::pow(2.0, -0.5 * spec.n);
  for (std::uint64_t k = 0; k < spec.num_keys(); ++k) {
    const auto [f_k, g_k] = ensemble.pair_fn(k);
    const Eigen::VectorXd coeffs = boolfn::fwht(f_k).coeffs;
    const double value =
        scale * coeffs.dot(g_k.values.cwiseProduct(outcome.h.values));
    outcome.statistic = std::max(outcome.statistic, std::abs(value));
  }
  return outcome;
}

double QuadraticTest::l12() const {
  double mass = 0.0;
  for (const auto& q : quadratic) mass += std::abs(q.coeff);
  return mass;
}

double QuadraticTest::evaluate(const Eigen::VectorXd& f_values,
                               const Eigen::VectorXd& g_values) const {
  auto value = [&](int side, std::uint64_t index) {
    const auto i = static_cast<Eigen::Index>(index);
    return side == 0 ? f_values[i] : g_values[i];
  };
  double acc = constant;
  for (const auto& t : linear) acc += t.coeff * value(t.side, t.index);
  for (const auto& q : quadratic)
    acc += q.coeff * value(q.side_a, q.index_a) * value(q.side_b, q.index_b);
  return acc;
}

std::vector<QuadraticTest> make_quadratic_battery(int n, int count, double t_mass,
                                                  RngStream& rng) {
  check_qubits(n);
  if (count < 1) throw std::invalid_argument("battery must be nonempty");
  if (!(t_mass > 0.0)) throw std::invalid_argument("t_mass must be positive");
  const std::uint64_t dim = table_size(n);
  std::vector<QuadraticTest> battery;
  battery.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    QuadraticTest test;
    const int pairs = 1 << rng.below(4);  // 1, 2, 4, or 8 cross terms
    const bool aligned = c < count / 2;
    const double magnitude = t_mass / pairs;
    for (int p = 0; p < pairs; ++p) {
      QuadraticTest::QuadraticTerm term;
      term.side_a = 0;
      term.index_a = rng.below(dim);
      term.side_b = 1;
      term.index_b = rng.below(dim);
      // chi_{S(y)}(x) is the sign of E[f(x) g(y)] under the Forrelation law;
      // aligned tests stack their terms with it, the rest pick random signs.
      const double character_sign = boolfn::character(term.index_b, term.index_a);
      term.coeff = magnitude * (aligned ? character_sign : rng.sign());
      test.quadratic.push_back(term);
    }
    battery.push_back(std::move(test));
  }
  return battery;
}

LowDegreeReport low_degree_advantage(const std::vector<QuadraticTest>& battery, int n,
                                     const fordist::ForrelationParams& params, long long trials,
                                     RngStream& rng, int workers) {
  if (battery.empty()) throw std::invalid_argument("low_degree_advantage: empty battery");
  if (trials < 1) throw std::invalid_argument("low_degree_advantage: trials must be >= 1");
  if (params.n != n) throw std::invalid_argument("low_degree_advantage: mismatched n");

  const std::uint64_t seed = rng.next_u64();
  // One f-sample yields the exact conditional mean of every test via
  // evaluation at (tt(f), conditional biases of f).
  auto per_sample = parallel_map_seeded<std::vector<double>>(
      seed, static_cast<std::size_t>(trials), workers, [&](std::size_t, RngStream& stream) {
        const boolfn::TruthTable f = boolfn::sample_uniform_fn(n, stream);
        const Eigen::VectorXd bias = fordist::conditional_bias(f, params);
        std::vector<double> values(battery.size());
        for (std::size_t i = 0; i < battery.size(); ++i)
          values[i] = battery[i].evaluate(f.values, bias);
        return values;
      });

  LowDegreeReport report;
  report.trials = trials;
  report.per_test.resize(battery.size());
  const double z99 = 2.5758;  // two-sided 99% normal quantile
  for (std::size_t i = 0; i < battery.size(); ++i) {
    MeanAccumulator acc;
    for (const auto& values : per_sample) acc.add(values[i]);
    TestAdvantage ta;
    ta.mean_forrelated = acc.mean();
    ta.mean_uniform = battery[i].constant;
    ta.advantage = std::abs(ta.mean_forrelated - ta.mean_uniform);
    ta.ci_halfwidth = z99 * acc.stddev() / std::sqrt(static_cast<double>(acc.count()));
    report.per_test[i] = ta;
    report.battery_max = std::max(report.battery_max, ta.advantage);
  }
  double t_mass = 0.0;
  for (const auto& test : battery) t_mass = std::max(t_mass, test.l12());
  const double dim = static_cast<double>(table_size(n));
  report.bound_scale = t_mass * std::log2(dim) / std::sqrt(dim);
  return report;
}

double direct_test_mean(const QuadraticTest& test, const fordist::ForrelationParams& params,
                        long long trials, RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("direct_test_mean: trials must be >= 1");
  MeanAccumulator acc;
  for (long long i = 0; i < trials; ++i) {
    const fordist::ForrelationPair pair = fordist::sample_forrelation_pair(params, rng);
    acc.add(test.evaluate(pair.f.values, pair.g.values));
  }
  return acc.mean();
}

bool swap_test(const qstate::StateVector& a, const qstate::StateVector& b, RngStream& rng) {
  if (a.n != b.n) throw std::invalid_argument("swap_test: mismatched qubit count");
  const double fidelity = std::norm(qstate::overlap(a, b));
  return rng.bernoulli(0.5 * (1.0 + fidelity));
}

}  // namespace forrlab::games
