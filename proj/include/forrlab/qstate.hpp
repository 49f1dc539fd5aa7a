#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "forrlab/boolfn.hpp"
#include "forrlab/common.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::qstate {

/// An n-qubit pure state; amplitudes indexed by the boolfn convention.
struct StateVector {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  StateVector(int n_, Eigen::VectorXcd amps);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
  double max_imag() const { return amplitudes.imag().cwiseAbs().maxCoeff(); }
};

/// An n-qubit mixed state as a dense Hermitian matrix. Dense storage caps n at
/// kMaxDenseQubits.
struct DensityMatrix {
  int n = 0;
  Eigen::MatrixXcd entries;

  DensityMatrix() = default;
  DensityMatrix(int n_, Eigen::MatrixXcd m);

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  double trace_real() const { return entries.trace().real(); }
  /// Throws if the matrix is not Hermitian / unit-trace / PSD within tolerance.
  void validate(double tol = 1e-9) const;
};

StateVector plus_state(int n);

/// U_f |x> = f(x) |x>; an involution.
StateVector apply_phase(const StateVector& state, const boolfn::TruthTable& f);

/// Normalized n-qubit Hadamard transform; unitary and self-inverse.
StateVector apply_hadamard(const StateVector& state);

/// Alternating phase/Hadamard product applied to |+^n>: t phase layers
/// separated by t-1 Hadamards, functions applied in list order.
StateVector t_forrelation_state(std::span<const boolfn::TruthTable> functions);

/// Haar-random pure state via normalized i.i.d. complex Gaussians.
StateVector sample_haar(int n, RngStream& rng);

/// Inner product <a|b>.
std::complex<double> overlap(const StateVector& a, const StateVector& b);

/// Finite mixture sum_i w_i |psi_i><psi_i|; weights must be nonnegative and
/// sum to 1 within 1e-10.
DensityMatrix density_from_ensemble(std::span<const StateVector> states,
                                    std::span<const double> weights);

/// Trace distance (1/2) sum |eig(rho - sigma)| via Hermitian eigendecomposition.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Total variation distance between probability vectors.
double tvd(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace forrlab::qstate
