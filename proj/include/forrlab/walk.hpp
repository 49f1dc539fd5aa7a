#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "forrlab/common.hpp"
#include "forrlab/fordist.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::walk {

struct WalkConfig {
  int n = 0;
  double epsilon = 0.0;
  std::int64_t m = 0;
  bool record_history = false;

  /// m = ceil(200 ln(N) / eps) with N = 2^n.
  static WalkConfig paper_default(int n, std::optional<double> epsilon = std::nullopt);
  /// m = ceil(40 ln(N) / eps). Smoke-test profile; shorter than the default.
  static WalkConfig fast_profile(int n, std::optional<double> epsilon = std::nullopt);
  /// Explicit step count, for small deterministic experiments.
  static WalkConfig with_steps(int n, double epsilon, std::int64_t m);

  fordist::ForrelationParams params() const;
};

struct ClampFlags {
  bool x_step = false;   // a raw Gaussian step left [-1, 1]
  bool y_inner = false;  // the transformed step left [-1/2, 1/2]
  bool y_outer = false;  // the accumulated y left [-1, 1]
  bool any() const { return x_step || y_inner || y_outer; }
};

struct WalkState {
  int n = 0;
  double epsilon = 0.0;
  std::int64_t step = 0;
  Eigen::VectorXd x;  // accumulated X, every coordinate in [-1, 1]
  Eigen::VectorXd y;  // accumulated Y, every coordinate in [-1, 1]
  ClampFlags clamps;
  // Mean of (1 - x_j^2) captured at step floor(m/2), for trend checks without
  // full history.
  double midpoint_mean_sq_deficit = 0.0;
  // Per-step snapshots of (x, y); only populated when record_history is set.
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;
};

/// The step-0 state: X = 0, Y = 0.
WalkState initial_state(int n, double epsilon);

/// Runs the polarizing walk for config.m steps:
///   X <- X + D .* trnc(step),  Y <- trnc(Y + trnc_{1/2}(sqrt(eps) H (D .* step)))
/// with D = 1 - |X| and step ~ N(0, eps)^N per coordinate.
WalkState run_walk(const WalkConfig& config, RngStream& rng);

struct TruncationReport {
  bool linear_relation_holds = false;  // Y = sqrt(eps) H X within tolerance
  bool y_in_half_box = false;          // every Y coordinate in [-1/2, 1/2]
  double max_residual = 0.0;
};

/// Checks the final state against the no-truncation linear relation.
TruncationReport check_claim_truncations(const WalkState& state, double tol = 1e-9);

struct PolarizationStats {
  double min_abs = 0.0;          // min_j |x_j|
  double mean_sq_deficit = 0.0;  // mean_j (1 - x_j^2)
};

PolarizationStats polarization_stats(const WalkState& state);

/// Rounds the walk to a function pair: f = sign(X) (ties to +1), g sampled
/// with the conditional biases of f. The f part is deterministic given the
/// state; only g consumes randomness.
fordist::ForrelationPair round_walk_to_pair(const WalkState& state,
                                            const fordist::ForrelationParams& params,
                                            RngStream& rng);

}  // namespace forrlab::walk
