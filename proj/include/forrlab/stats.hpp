#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace forrlab {

/// Hoeffding halfwidth for the mean of `trials` independent variables with
/// unit range: sqrt(ln(2/alpha) / (2 trials)). Scale by the actual range for
/// wider variables, and by sqrt(2) when two independent estimates are
/// differenced.
double hoeffding_halfwidth(std::size_t trials, double alpha);

/// Two-sided Hoeffding bound threshold for a single mean comparison with a
/// difference of two estimates, matching the convention used by advantage
/// estimates: sqrt(ln(2/alpha)/(2 trials)) * sqrt(2).
double advantage_ci_halfwidth(std::size_t trials, double alpha = 0.01);

/// Streaming mean/variance (Welford).
class MeanAccumulator {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, 0 for n < 2
  double stddev() const;
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample KS test: reject equality at level alpha when
/// D > c(alpha) sqrt((m+n)/(mn)) with c(alpha) = sqrt(-ln(alpha/2)/2).
bool ks_reject(std::span<const double> a, std::span<const double> b, double alpha);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares fit of y against x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Balanced error of the best single-threshold classifier separating two
/// scalar samples (label a below threshold, b above, or the reverse).
double best_threshold_error(std::vector<double> a, std::vector<double> b);

}  // namespace forrlab
