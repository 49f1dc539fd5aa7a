#include "forrlab/hybrids.hpp"

#include <cmath>

namespace forrlab::hybrids {

OracleSpec::OracleSpec(std::uint64_t seed, int kappa_, int n_, int t_)
    : master_seed(seed), kappa(kappa_), n(n_), t(t_) {
  if (kappa < 0 || kappa > kMaxKappa)
    throw std::invalid_argument("kappa must lie in [0, " + std::to_string(kMaxKappa) + "]");
  check_qubits(n);
  if (n < kappa + 1) throw std::invalid_argument("need kappa + 1 <= n");
  if (t < 1) throw std::invalid_argument("layer count t must be >= 1");
}

double OracleSpec::bit(std::uint64_t x, std::uint64_t k, int layer) const {
  if (layer < 1 || layer > t) throw std::invalid_argument("oracle layer out of range");
  const std::uint64_t h = mix64(master_seed, x, k, static_cast<std::uint64_t>(layer));
  return (h >> 63) ? -1.0 : 1.0;
}

KeyedEnsemble::KeyedEnsemble(OracleSpec spec) : spec_(spec), cache_(spec.num_keys()) {}

KeyedEnsemble::KeyedEnsemble(const KeyedEnsemble& other)
    : spec_(other.spec_), overrides_(other.overrides_), cache_(other.spec_.num_keys()) {}

KeyedEnsemble::KeyedEnsemble(KeyedEnsemble&& other) noexcept
    : spec_(other.spec_),
      overrides_(std::move(other.overrides_)),
      cache_(std::move(other.cache_)) {}

KeyedEnsemble& KeyedEnsemble::operator=(KeyedEnsemble&& other) noexcept {
  if (this != &other) {
    spec_ = other.spec_;
    overrides_ = std::move(other.overrides_);
    cache_ = std::move(other.cache_);
  }
  return *this;
}

const KeyedEnsemble::KeyTables& KeyedEnsemble::materialize(std::uint64_t key) const {
  if (key >= num_keys()) throw std::invalid_argument("key out of range");
  std::scoped_lock lock(cache_mutex_);
  if (cache_.size() != num_keys()) cache_.resize(num_keys());
  auto& slot = cache_[key];
  if (!slot) {
    auto tables = std::make_unique<KeyTables>();
    const auto dim = static_cast<Eigen::Index>(table_size(spec_.n));
    tables->layers.reserve(static_cast<std::size_t>(spec_.t));
    for (int layer = 1; layer <= spec_.t; ++layer) {
      Eigen::VectorXd v(dim);
      for (Eigen::Index x = 0; x < dim; ++x)
        v[x] = spec_.bit(static_cast<std::uint64_t>(x), key, layer);
      tables->layers.emplace_back(spec_.n, std::move(v));
    }
    slot = std::move(tables);
  }
  return *slot;
}

const boolfn::TruthTable& KeyedEnsemble::fn(std::uint64_t key, int layer) const {
  if (layer < 1 || layer > spec_.t) throw std::invalid_argument("ensemble layer out of range");
  const auto it = overrides_.find({key, layer});
  if (it != overrides_.end()) return it->second;
  return materialize(key).layers[static_cast<std::size_t>(layer - 1)];
}

std::pair<const boolfn::TruthTable&, const boolfn::TruthTable&> KeyedEnsemble::pair_fn(
    std::uint64_t key) const {
  if (spec_.t != 2) throw std::invalid_argument("pair_fn requires a two-layer ensemble");
  return {fn(key, 1), fn(key, 2)};
}

qstate::StateVector KeyedEnsemble::state(std::uint64_t key) const {
  std::vector<boolfn::TruthTable> layers;
  layers.reserve(static_cast<std::size_t>(spec_.t));
  for (int layer = 1; layer <= spec_.t; ++layer) layers.push_back(fn(key, layer));
  return qstate::t_forrelation_state(layers);
}

void KeyedEnsemble::override_fn(std::uint64_t key, int layer, boolfn::TruthTable table) {
  if (key >= num_keys()) throw std::invalid_argument("key out of range");
  if (layer < 1 || layer > spec_.t) throw std::invalid_argument("ensemble layer out of range");
  if (table.n != spec_.n) throw std::invalid_argument("override table has wrong n");
  overrides_.insert_or_assign({key, layer}, std::move(table));
}

KeyedEnsemble build_ensemble(const OracleSpec& spec) { return KeyedEnsemble(spec); }

HybridSample sample_hybrid(int hybrid_id, const OracleSpec& shape,
                           const fordist::ForrelationParams& params, RngStream& rng) {
  if (hybrid_id < 0 || hybrid_id > 4) throw std::invalid_argument("hybrid id must be 0..4");
  if (shape.n != params.n) throw std::invalid_argument("sample_hybrid: mismatched n");
  if (shape.t != 2) throw std::invalid_argument("sample_hybrid: requires t = 2");

  OracleSpec spec(rng.next_u64(), shape.kappa, shape.n, shape.t);
  KeyedEnsemble ensemble(spec);
  HybridSample sample;
  sample.hybrid_id = hybrid_id;

  if (hybrid_id == 0) {
    const std::uint64_t k_star = rng.below(spec.num_keys());
    sample.state = ensemble.state(k_star);
    sample.hidden.k_star = k_star;
  } else if (hybrid_id >= 1 && hybrid_id <= 3) {
    const std::uint64_t k_star = rng.below(spec.num_keys());
    const boolfn::TruthTable h = boolfn::sample_uniform_fn(spec.n, rng);
    // The raw oracle tables play the primed functions; the observable g_k is
    // g'_k * h for every key. In H1/H2 the starred pair is Forrelated.
    if (hybrid_id <= 2) {
      fordist::ForrelationPair planted = fordist::sample_forrelation_pair(params, rng);
      sample.hidden.planted_f = planted.f;
      sample.hidden.planted_g = planted.g;
      ensemble.override_fn(k_star, 1, std::move(planted.f));
      ensemble.override_fn(k_star, 2, std::move(planted.g));
    }
    for (std::uint64_t k = 0; k < spec.num_keys(); ++k) {
      const auto& g_prime = ensemble.fn(k, 2);
      ensemble.override_fn(k, 2, g_prime * h);
    }
    if (hybrid_id == 1) {
      sample.state = ensemble.state(k_star);
    } else {
      sample.state = qstate::t_forrelation_state(std::span(&h, 1));
    }
    sample.hidden.k_star = k_star;
    sample.hidden.h = h;
  } else {
    sample.state = qstate::sample_haar(spec.n, rng);
  }
  sample.ensemble = std::move(ensemble);
  return sample;
}

namespace {

// Amplitude vectors of |phi_k>: a_k(i) = g_k(i) fhat_k(i), real.
Eigen::MatrixXd amplitude_columns(const KeyedEnsemble& ensemble) {
  const auto& spec = ensemble.spec();
  check_qubits(spec.n, kMaxDenseQubits);
  const auto dim = static_cast<Eigen::Index>(table_size(spec.n));
  const auto keys = static_cast<Eigen::Index>(ensemble.num_keys());
  Eigen::MatrixXd columns(dim, keys);
  for (Eigen::Index k = 0; k < keys; ++k) {
    const auto [f, g] = ensemble.pair_fn(static_cast<std::uint64_t>(k));
    columns.col(k) = boolfn::fwht(f).coeffs.cwiseProduct(g.values);
  }
  return columns;
}

// Conditional-bias vectors w_k(i) = g_k(i) trnc(sqrt(eps 2^n) fhat_k(i)).
Eigen::MatrixXd bias_columns(const KeyedEnsemble& ensemble,
                             const fordist::ForrelationParams& params) {
  const auto& spec = ensemble.spec();
  check_qubits(spec.n, kMaxDenseQubits);
  const auto dim = static_cast<Eigen::Index>(table_size(spec.n));
  const auto keys = static_cast<Eigen::Index>(ensemble.num_keys());
  Eigen::MatrixXd columns(dim, keys);
  for (Eigen::Index k = 0; k < keys; ++k) {
    const auto [f, g] = ensemble.pair_fn(static_cast<std::uint64_t>(k));
    columns.col(k) = fordist::conditional_bias(f, params).cwiseProduct(g.values);
  }
  return columns;
}

qstate::DensityMatrix to_density(int n, const Eigen::MatrixXd& real) {
  return qstate::DensityMatrix(n, real.cast<std::complex<double>>());
}

}  // namespace

qstate::DensityMatrix rho_A(const KeyedEnsemble& ensemble) {
  const Eigen::MatrixXd a = amplitude_columns(ensemble);
  const double inv_keys = 1.0 / static_cast<double>(ensemble.num_keys());
  Eigen::MatrixXd rho = inv_keys * (a * a.transpose());
  return to_density(ensemble.spec().n, rho);
}

qstate::DensityMatrix sigma_A(const KeyedEnsemble& ensemble,
                              const fordist::ForrelationParams& params) {
  if (ensemble.spec().n != params.n) throw std::invalid_argument("sigma_A: mismatched n");
  const Eigen::MatrixXd w = bias_columns(ensemble, params);
  const double inv_dim = 1.0 / static_cast<double>(table_size(params.n));
  const double inv_keys = 1.0 / static_cast<double>(ensemble.num_keys());
  // E_k[(w_k w_k^T - diag(w_k^2) + I)] / 2^n: the conditional second moment of
  // g is the product of conditional means off the diagonal and exactly 1 on it.
  Eigen::MatrixXd sigma = w * w.transpose();
  sigma.diagonal().setZero();
  sigma *= inv_keys;
  sigma.diagonal().array() += 1.0;
  sigma *= inv_dim;
  return to_density(params.n, sigma);
}

qstate::DensityMatrix tau_A(const KeyedEnsemble& ensemble,
                            const fordist::ForrelationParams& params) {
  if (ensemble.spec().n != params.n) throw std::invalid_argument("tau_A: mismatched n");
  const qstate::DensityMatrix rho = rho_A(ensemble);
  const auto dim = static_cast<Eigen::Index>(table_size(params.n));
  Eigen::MatrixXcd tau = params.epsilon * rho.entries;
  tau.diagonal().array() += (1.0 - params.epsilon) / static_cast<double>(dim);
  return qstate::DensityMatrix(params.n, std::move(tau));
}

Lemma55Report check_lemma_5_5(const KeyedEnsemble& ensemble,
                              const fordist::ForrelationParams& params) {
  Lemma55Report report;
  const auto& spec = ensemble.spec();
  const auto dim = static_cast<Eigen::Index>(table_size(spec.n));

  double max_fourier = 0.0;
  Eigen::VectorXd mean_sq = Eigen::VectorXd::Zero(dim);
  for (std::uint64_t k = 0; k < ensemble.num_keys(); ++k) {
    const Eigen::VectorXd coeffs = boolfn::fwht(ensemble.fn(k, 1)).coeffs;
    max_fourier = std::max(max_fourier, coeffs.cwiseAbs().maxCoeff());
    mean_sq += coeffs.cwiseAbs2();
  }
  mean_sq /= static_cast<double>(ensemble.num_keys());
  report.max_abs_fourier = max_fourier;
  report.threshold_condition = max_fourier <= params.truncation_threshold();

  const qstate::DensityMatrix sigma = sigma_A(ensemble, params);
  const qstate::DensityMatrix tau = tau_A(ensemble, params);
  Eigen::MatrixXd gap = (sigma.entries - tau.entries).real().cwiseAbs();
  gap.diagonal().setZero();
  report.offdiag_max_gap = gap.maxCoeff();

  report.td = qstate::trace_distance(sigma, tau);
  const double inv_dim = 1.0 / static_cast<double>(dim);
  report.tvd_diag =
      0.5 * params.epsilon * (mean_sq.array() - inv_dim).abs().sum();

  report.matches = report.offdiag_max_gap < 1e-10 && std::abs(report.td - report.tvd_diag) < 1e-8;
  return report;
}

double fourier_square_uniformity(const KeyedEnsemble& ensemble) {
  const auto& spec = ensemble.spec();
  const auto dim = static_cast<Eigen::Index>(table_size(spec.n));
  Eigen::VectorXd mean_sq = Eigen::VectorXd::Zero(dim);
  for (std::uint64_t k = 0; k < ensemble.num_keys(); ++k)
    mean_sq += boolfn::fwht(ensemble.fn(k, 1)).coeffs.cwiseAbs2();
  mean_sq /= static_cast<double>(ensemble.num_keys());
  return (mean_sq.array() - 1.0 / static_cast<double>(dim)).abs().sum();
}

}  // namespace forrlab::hybrids
