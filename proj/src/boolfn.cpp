#include "forrlab/boolfn.hpp"

#include <cmath>

namespace forrlab::boolfn {

std::size_t index_of_input(std::span<const int> x) {
  std::size_t index = 0;
  for (const int xi : x) {
    if (xi != 1 && xi != -1) throw std::invalid_argument("input entries must be +1 or -1");
    index = (index << 1) | (xi == -1 ? 1U : 0U);
  }
  return index;
}

std::vector<int> input_of_index(std::size_t index, int n) {
  check_qubits(n);
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool bit = (index >> (n - 1 - i)) & 1U;
    x[static_cast<std::size_t>(i)] = bit ? -1 : 1;
  }
  return x;
}

TruthTable::TruthTable(int n_, Eigen::VectorXd v) : n(n_), values(std::move(v)) {
  check_qubits(n);
  if (static_cast<std::size_t>(values.size()) != table_size(n))
    throw std::invalid_argument("truth table length must be 2^n");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] != 1.0 && values[i] != -1.0)
      throw std::invalid_argument("truth table entries must be +1 or -1");
  }
}

TruthTable TruthTable::constant(int n, double value) {
  check_qubits(n);
  return TruthTable(n, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(table_size(n)), value));
}

TruthTable TruthTable::operator*(const TruthTable& other) const {
  if (n != other.n) throw std::invalid_argument("truth table product: mismatched n");
  return TruthTable(n, values.cwiseProduct(other.values));
}

FourierSpectrum fwht(const TruthTable& f) {
  FourierSpectrum s;
  s.n = f.n;
  s.coeffs = f.values;
  fwht_inplace(s.coeffs);
  s.coeffs *= 1.0 / static_cast<double>(table_size(f.n));
  return s;
}

Eigen::VectorXd inverse_fwht(const FourierSpectrum& s) {
  Eigen::VectorXd v = s.coeffs;
  fwht_inplace(v);
  return v;
}

double l1_level(const FourierSpectrum& s, int level) {
  if (level < 0 || level > s.n) throw std::invalid_argument("l1_level: level out of range");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::popcount(i) == level) sum += std::abs(s(i));
  }
  return sum;
}

TruthTable sample_uniform_fn(int n, RngStream& rng) {
  check_qubits(n);
  Eigen::VectorXd v(static_cast<Eigen::Index>(table_size(n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.sign();
  return TruthTable(n, std::move(v));
}

TruthTable sample_biased_fn(const Eigen::VectorXd& bias, RngStream& rng) {
  const Eigen::Index size = bias.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("bias length must be a power of two");
  const int n = std::countr_zero(static_cast<std::size_t>(size));
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double b = bias[i];
    if (!(b >= -1.0 && b <= 1.0)) throw std::invalid_argument("bias entries must lie in [-1,1]");
    v[i] = rng.bernoulli((1.0 + b) / 2.0) ? 1.0 : -1.0;
  }
  return TruthTable(n, std::move(v));
}

}  // namespace forrlab::boolfn
