#include "forrlab/walk.hpp"

#include <cmath>

#include "forrlab/boolfn.hpp"

namespace forrlab::walk {

namespace {

std::int64_t step_count(int n, double epsilon, double factor) {
  const double ln_n = std::log(static_cast<double>(table_size(n)));
  return static_cast<std::int64_t>(std::ceil(factor * ln_n / epsilon));
}

double pick_epsilon(int n, std::optional<double> epsilon) {
  return epsilon ? *epsilon : fordist::ForrelationParams::defaults(n).epsilon;
}

}  // namespace

WalkConfig WalkConfig::paper_default(int n, std::optional<double> epsilon) {
  const double eps = pick_epsilon(n, epsilon);
  return with_steps(n, eps, step_count(n, eps, 200.0));
}

WalkConfig WalkConfig::fast_profile(int n, std::optional<double> epsilon) {
  const double eps = pick_epsilon(n, epsilon);
  return with_steps(n, eps, step_count(n, eps, 40.0));
}

WalkConfig WalkConfig::with_steps(int n, double epsilon, std::int64_t m) {
  fordist::ForrelationParams(n, epsilon);  // validates
  if (m < 1) throw std::invalid_argument("walk step count must be >= 1");
  WalkConfig config;
  config.n = n;
  config.epsilon = epsilon;
  config.m = m;
  return config;
}

fordist::ForrelationParams WalkConfig::params() const {
  return fordist::ForrelationParams(n, epsilon);
}

WalkState initial_state(int n, double epsilon) {
  fordist::ForrelationParams(n, epsilon);  // validates
  WalkState state;
  state.n = n;
  state.epsilon = epsilon;
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  state.x = Eigen::VectorXd::Zero(dim);
  state.y = Eigen::VectorXd::Zero(dim);
  return state;
}

WalkState run_walk(const WalkConfig& config, RngStream& rng) {
  const auto dim = static_cast<Eigen::Index>(table_size(config.n));
  const double sigma = std::sqrt(config.epsilon);
  const double sqrt_eps = sigma;
  const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(dim));

  WalkState state;
  state.n = config.n;
  state.epsilon = config.epsilon;
  state.x = Eigen::VectorXd::Zero(dim);
  state.y = Eigen::VectorXd::Zero(dim);

  Eigen::VectorXd step(dim);
  Eigen::VectorXd scaled(dim);
  const std::int64_t midpoint = config.m / 2;

  for (std::int64_t i = 1; i <= config.m; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) step[j] = rng.gaussian(sigma);

    // Y uses the raw Gaussian step; X uses the truncated one.
    scaled = (1.0 - state.x.cwiseAbs().array()) * step.array();
    boolfn::fwht_inplace(scaled);
    scaled *= sqrt_eps * inv_sqrt_dim;

    for (Eigen::Index j = 0; j < dim; ++j) {
      double t = step[j];
      if (t > 1.0) {
        t = 1.0;
        state.clamps.x_step = true;
      } else if (t < -1.0) {
        t = -1.0;
        state.clamps.x_step = true;
      }
      state.x[j] += (1.0 - std::abs(state.x[j])) * t;

      double inner = scaled[j];
      if (inner > 0.5) {
        inner = 0.5;
        state.clamps.y_inner = true;
      } else if (inner < -0.5) {
        inner = -0.5;
        state.clamps.y_inner = true;
      }
      double ynew = state.y[j] + inner;
      if (ynew > 1.0) {
        ynew = 1.0;
        state.clamps.y_outer = true;
      } else if (ynew < -1.0) {
        ynew = -1.0;
        state.clamps.y_outer = true;
      }
      state.y[j] = ynew;
    }
    state.step = i;

    if (i == midpoint)
      state.midpoint_mean_sq_deficit = (1.0 - state.x.array().square()).mean();
    if (config.record_history) state.history.emplace_back(state.x, state.y);

    // Boundedness is structural; a violation means a bug, not bad luck.
    if (state.x.cwiseAbs().maxCoeff() > 1.0 || state.y.cwiseAbs().maxCoeff() > 1.0)
      throw std::logic_error("walk coordinate escaped [-1, 1]");
  }
  return state;
}

TruncationReport check_claim_truncations(const WalkState& state, double tol) {
  const auto dim = static_cast<Eigen::Index>(table_size(state.n));
  if (state.x.size() != dim || state.y.size() != dim)
    throw std::invalid_argument("check_claim_truncations: malformed state");
  Eigen::VectorXd expected = state.x;
  boolfn::fwht_inplace(expected);
  expected *= std::sqrt(state.epsilon) / std::sqrt(static_cast<double>(dim));
  TruncationReport report;
  report.max_residual = (state.y - expected).cwiseAbs().maxCoeff();
  report.y_in_half_box = state.y.cwiseAbs().maxCoeff() <= 0.5;
  report.linear_relation_holds = report.max_residual < tol;
  return report;
}

PolarizationStats polarization_stats(const WalkState& state) {
  PolarizationStats stats;
  stats.min_abs = state.x.cwiseAbs().minCoeff();
  stats.mean_sq_deficit = (1.0 - state.x.array().square()).mean();
  return stats;
}

fordist::ForrelationPair round_walk_to_pair(const WalkState& state,
                                            const fordist::ForrelationParams& params,
                                            RngStream& rng) {
  if (state.n != params.n) throw std::invalid_argument("round_walk_to_pair: mismatched n");
  Eigen::VectorXd signs(state.x.size());
  for (Eigen::Index j = 0; j < state.x.size(); ++j) signs[j] = state.x[j] < 0.0 ? -1.0 : 1.0;
  boolfn::TruthTable f(state.n, std::move(signs));
  boolfn::TruthTable g = fordist::sample_conditional_g(f, params, rng);
  return fordist::ForrelationPair{std::move(f), std::move(g), params};
}

}  // namespace forrlab::walk
