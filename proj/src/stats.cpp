#include "forrlab/stats.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace forrlab {

double hoeffding_halfwidth(std::size_t trials, double alpha) {
  if (trials == 0) throw std::invalid_argument("hoeffding_halfwidth: trials must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

double advantage_ci_halfwidth(std::size_t trials, double alpha) {
  return hoeffding_halfwidth(trials, alpha) * std::sqrt(2.0);
}

void MeanAccumulator::add(double x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double MeanAccumulator::variance() const {
  if (n_ < 2) return 0.0;
  return m2_ / static_cast<double>(n_ - 1);
}

double MeanAccumulator::stddev() const { return std::sqrt(variance()); }

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

bool ks_reject(std::span<const double> a, std::span<const double> b, double alpha) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  return ks_statistic(a, b) > c * std::sqrt((m + n) / (m * n));
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need matching samples, at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate x values");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

double best_threshold_error(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("best_threshold_error: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> cuts;
  cuts.reserve(a.size() + b.size() + 1);
  cuts.push_back(-std::numeric_limits<double>::infinity());
  cuts.insert(cuts.end(), a.begin(), a.end());
  cuts.insert(cuts.end(), b.begin(), b.end());
  std::sort(cuts.begin(), cuts.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double best = 1.0;
  for (const double t : cuts) {
    // Fraction of a above t and of b at or below t, and the mirrored rule.
    const double a_above =
        static_cast<double>(a.end() - std::upper_bound(a.begin(), a.end(), t)) / na;
    const double b_below =
        static_cast<double>(std::upper_bound(b.begin(), b.end(), t) - b.begin()) / nb;
    const double err = 0.5 * (a_above + b_below);
    best = std::min(best, std::min(err, 1.0 - err));
  }
  return best;
}

}  // namespace forrlab
