#pragma once

#include <Eigen/Dense>

#include "forrlab/boolfn.hpp"
#include "forrlab/common.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::fordist {

struct ForrelationParams {
  int n = 0;
  double epsilon = 0.0;

  ForrelationParams() = default;
  ForrelationParams(int n_, double epsilon_);

  /// The default bias scale 1/(100 n).
  static ForrelationParams defaults(int n);

  /// sqrt(eps 2^n): the factor scaling Fourier coefficients into biases.
  double bias_scale() const;
  /// 1/sqrt(eps 2^n): coefficients above this magnitude get truncated.
  double truncation_threshold() const;
};

struct ForrelationPair {
  boolfn::TruthTable f;
  boolfn::TruthTable g;
  ForrelationParams params;
};

/// Per-coordinate conditional mean of g given f: trnc(sqrt(eps 2^n) fhat(x)).
Eigen::VectorXd conditional_bias(const boolfn::TruthTable& f, const ForrelationParams& params);

/// g with the conditional biases computed from this specific f.
boolfn::TruthTable sample_conditional_g(const boolfn::TruthTable& f,
                                        const ForrelationParams& params, RngStream& rng);

/// f uniform, then g(x) = +1 with probability (1 + trnc(sqrt(eps 2^n) fhat(x)))/2
/// independently per coordinate.
ForrelationPair sample_forrelation_pair(const ForrelationParams& params, RngStream& rng);

/// <+^n | Phi_(f,g)> = 2^(-n/2) sum_x g(x) fhat(x); a real number in [-1, 1].
double forrelation_value(const boolfn::TruthTable& f, const boolfn::TruthTable& g);

struct TruncationStats {
  double any_coord_rate = 0.0;   // fraction of f with some truncated coordinate
  double per_coord_rate = 0.0;   // fraction of (f, coordinate) pairs truncated
  double threshold = 0.0;
  long long trials = 0;
};

TruncationStats truncation_event_stats(const ForrelationParams& params, long long trials,
                                       RngStream& rng);

/// Fraction of sampled uniform f having some |fhat(x)| above the truncation
/// threshold.
double truncation_event_rate(const ForrelationParams& params, long long trials, RngStream& rng);

}  // namespace forrlab::fordist
