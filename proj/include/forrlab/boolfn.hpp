#pragma once

#include <Eigen/Dense>
#include <bit>
#include <span>
#include <vector>

#include "forrlab/common.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::boolfn {

// Index convention shared by every module: an input x in {+1,-1}^n maps to the
// n-bit offset whose bit for coordinate i (counting x_1 as the most
// significant) is 0 for x_i = +1 and 1 for x_i = -1. The same bitmask read as
// a set gives S(x) = { i : x_i = -1 }, so spectra and truth tables share one
// layout.
std::size_t index_of_input(std::span<const int> x);
std::vector<int> input_of_index(std::size_t index, int n);

/// Parity of the number of shared set bits; chi_S(x) = (-1)^parity(S & x).
inline double character(std::size_t s, std::size_t x) {
  return (std::popcount(s & x) & 1U) ? -1.0 : 1.0;
}

/// A Boolean function on n bits as a dense +1/-1 vector of length 2^n.
struct TruthTable {
  int n = 0;
  Eigen::VectorXd values;

  TruthTable() = default;
  TruthTable(int n_, Eigen::VectorXd v);

  static TruthTable constant(int n, double value = 1.0);

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double operator()(std::size_t index) const { return values[static_cast<Eigen::Index>(index)]; }

  /// Pointwise product: (f * g)(x) = f(x) g(x). XOR in the +-1 domain.
  TruthTable operator*(const TruthTable& other) const;
};

/// The 2^n real Fourier coefficients, indexed by the convention above.
struct FourierSpectrum {
  int n = 0;
  Eigen::VectorXd coeffs;

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  double operator()(std::size_t index) const { return coeffs[static_cast<Eigen::Index>(index)]; }
};

/// In-place unnormalized Walsh-Hadamard butterfly. Applying it twice yields
/// 2^n times the identity. Works for real and complex vectors.
template <typename Derived>
void fwht_inplace(Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index size = v.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("fwht_inplace: length must be a power of two");
  for (Eigen::Index h = 1; h < size; h <<= 1) {
    for (Eigen::Index i = 0; i < size; i += h << 1) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const auto a = v[j];
        const auto b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

/// Fourier transform of a Boolean function: coeffs[S] = 2^-n sum_y f(y) chi_S(y),
/// computed in O(N log N).
FourierSpectrum fwht(const TruthTable& f);

/// Evaluates the multilinear polynomial with the given spectrum on all +-1
/// inputs; exact inverse of fwht.
Eigen::VectorXd inverse_fwht(const FourierSpectrum& s);

/// L_{1,level}: sum of |coeff| over sets of the given size.
double l1_level(const FourierSpectrum& s, int level);

/// Uniformly random truth table; deterministic given the stream.
TruthTable sample_uniform_fn(int n, RngStream& rng);

/// Entry x is +1 with probability (1 + bias[x]) / 2, independently.
TruthTable sample_biased_fn(const Eigen::VectorXd& bias, RngStream& rng);

}  // namespace forrlab::boolfn
