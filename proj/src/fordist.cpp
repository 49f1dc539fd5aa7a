#include "forrlab/fordist.hpp"

#include <cmath>

namespace forrlab::fordist {

ForrelationParams::ForrelationParams(int n_, double epsilon_) : n(n_), epsilon(epsilon_) {
  check_qubits(n);
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1]");
}

ForrelationParams ForrelationParams::defaults(int n) {
  check_qubits(n);
  return ForrelationParams(n, 1.0 / (100.0 * n));
}

double ForrelationParams::bias_scale() const {
  return std::sqrt(epsilon * static_cast<double>(table_size(n)));
}

double ForrelationParams::truncation_threshold() const { return 1.0 / bias_scale(); }

Eigen::VectorXd conditional_bias(const boolfn::TruthTable& f, const ForrelationParams& params) {
  if (f.n != params.n) throw std::invalid_argument("conditional_bias: mismatched n");
  const double scale = params.bias_scale();
  Eigen::VectorXd bias = boolfn::fwht(f).coeffs;
  for (Eigen::Index i = 0; i < bias.size(); ++i) bias[i] = trnc(scale * bias[i]);
  return bias;
}

boolfn::TruthTable sample_conditional_g(const boolfn::TruthTable& f,
                                        const ForrelationParams& params, RngStream& rng) {
  return boolfn::sample_biased_fn(conditional_bias(f, params), rng);
}

ForrelationPair sample_forrelation_pair(const ForrelationParams& params, RngStream& rng) {
  boolfn::TruthTable f = boolfn::sample_uniform_fn(params.n, rng);
  boolfn::TruthTable g = sample_conditional_g(f, params, rng);
  return ForrelationPair{std::move(f), std::move(g), params};
}

double forrelation_value(const boolfn::TruthTable& f, const boolfn::TruthTable& g) {
  if (f.n != g.n) throw std::invalid_argument("forrelation_value: mismatched n");
  const Eigen::VectorXd coeffs = boolfn::fwht(f).coeffs;
  return std::pow(2.0, -0.5 * f.n) * coeffs.dot(g.values);
}

TruncationStats truncation_event_stats(const ForrelationParams& params, long long trials,
                                       RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("truncation_event_stats: trials must be >= 1");
  const double threshold = params.truncation_threshold();
  TruncationStats stats;
  stats.threshold = threshold;
  stats.trials = trials;
  long long any = 0;
  long long coords = 0;
  for (long long t = 0; t < trials; ++t) {
    const auto f = boolfn::sample_uniform_fn(params.n, rng);
    const Eigen::VectorXd coeffs = boolfn::fwht(f).coeffs;
    long long over = (coeffs.cwiseAbs().array() > threshold).count();
    coords += over;
    if (over > 0) ++any;
  }
  const double denom = static_cast<double>(trials);
  stats.any_coord_rate = static_cast<double>(any) / denom;
  stats.per_coord_rate =
      static_cast<double>(coords) / (denom * static_cast<double>(table_size(params.n)));
  return stats;
}

double truncation_event_rate(const ForrelationParams& params, long long trials, RngStream& rng) {
  return truncation_event_stats(params, trials, rng).any_coord_rate;
}

}  // namespace forrlab::fordist
