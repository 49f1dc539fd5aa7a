#include "forrlab/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace forrlab::qstate {

namespace {
constexpr double kNormTol = 1e-10;
}

StateVector::StateVector(int n_, Eigen::VectorXcd amps) : n(n_), amplitudes(std::move(amps)) {
  check_qubits(n);
  if (static_cast<std::size_t>(amplitudes.size()) != table_size(n))
    throw std::invalid_argument("state vector length must be 2^n");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("state vector must have unit norm");
}

DensityMatrix::DensityMatrix(int n_, Eigen::MatrixXcd m) : n(n_), entries(std::move(m)) {
  check_qubits(n, kMaxDenseQubits);
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  if (entries.rows() != dim || entries.cols() != dim)
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
}

void DensityMatrix::validate(double tol) const {
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");
  if (std::abs(entries.trace().real() - 1.0) > tol || std::abs(entries.trace().imag()) > tol)
    throw std::invalid_argument("density matrix trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue beyond tolerance");
}

StateVector plus_state(int n) {
  check_qubits(n);
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  const double amp = std::pow(2.0, -0.5 * n);
  return StateVector(n, Eigen::VectorXcd::Constant(dim, std::complex<double>(amp, 0.0)));
}

StateVector apply_phase(const StateVector& state, const boolfn::TruthTable& f) {
  if (state.n != f.n) throw std::invalid_argument("apply_phase: mismatched qubit count");
  StateVector out = state;
  out.amplitudes.array() *= f.values.array().cast<std::complex<double>>();
  return out;
}

StateVector apply_hadamard(const StateVector& state) {
  StateVector out = state;
  boolfn::fwht_inplace(out.amplitudes);
  out.amplitudes *= std::pow(2.0, -0.5 * state.n);
  return out;
}

StateVector t_forrelation_state(std::span<const boolfn::TruthTable> functions) {
  if (functions.empty()) throw std::invalid_argument("t_forrelation_state: empty function list");
  const int n = functions.front().n;
  for (const auto& f : functions) {
    if (f.n != n) throw std::invalid_argument("t_forrelation_state: mismatched qubit counts");
  }
  StateVector state = plus_state(n);
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (i > 0) state = apply_hadamard(state);
    state = apply_phase(state, functions[i]);
  }
  return state;
}

StateVector sample_haar(int n, RngStream& rng) {
  check_qubits(n);
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    amps[i] = std::complex<double>(rng.gaussian(), rng.gaussian());
  amps /= amps.norm();
  return StateVector(n, std::move(amps));
}

std::complex<double> overlap(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw std::invalid_argument("overlap: mismatched qubit count");
  return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the left argument
}

DensityMatrix density_from_ensemble(std::span<const StateVector> states,
                                    std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("density_from_ensemble: need matching states and weights");
  const int n = states.front().n;
  check_qubits(n, kMaxDenseQubits);
  double total = 0.0;
  for (const double w : weights) {
    if (w < 0.0) throw std::invalid_argument("density_from_ensemble: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw std::invalid_argument("density_from_ensemble: weights must sum to 1");
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].n != n)
      throw std::invalid_argument("density_from_ensemble: mismatched qubit counts");
    acc.noalias() += weights[i] * (states[i].amplitudes * states[i].amplitudes.adjoint());
  }
  return DensityMatrix(n, std::move(acc));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.n != sigma.n) throw std::invalid_argument("trace_distance: mismatched dimensions");
  constexpr double kHermTol = 1e-8;
  if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > kHermTol ||
      (sigma.entries - sigma.entries.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("trace_distance: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries - sigma.entries,
                                                         Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double tvd(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvd: mismatched lengths");
  constexpr double kSumTol = 1e-10;
  if (std::abs(p.sum() - 1.0) > kSumTol || std::abs(q.sum() - 1.0) > kSumTol)
    throw std::invalid_argument("tvd: inputs must sum to 1");
  if (p.minCoeff() < -kSumTol || q.minCoeff() < -kSumTol)
    throw std::invalid_argument("tvd: inputs must be nonnegative");
  return 0.5 * (p - q).cwiseAbs().sum();
}

}  // namespace forrlab::qstate
