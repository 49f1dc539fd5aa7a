#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "forrlab/boolfn.hpp"
#include "forrlab/common.hpp"
#include "forrlab/fordist.hpp"
#include "forrlab/qstate.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::hybrids {

// Hybrid sampling materializes every key's truth tables, so kappa stays small.
inline constexpr int kMaxKappa = 16;

/// Seeded stand-in for the random oracle A restricted to the ensemble slice:
/// the bit at (x, k, layer) is a pure function of the master seed.
struct OracleSpec {
  std::uint64_t master_seed = 0;
  int kappa = 0;
  int n = 0;
  int t = 2;

  OracleSpec() = default;
  OracleSpec(std::uint64_t seed, int kappa_, int n_, int t_ = 2);

  std::uint64_t num_keys() const { return std::uint64_t{1} << kappa; }
  /// The oracle bit A(x, k, layer) as +1/-1; layer in [1, t].
  double bit(std::uint64_t x, std::uint64_t k, int layer) const;
};

/// Key-indexed view of the oracle's truth tables and states, with optional
/// per-key overrides (the hybrids replace designated keys' functions).
/// Materialized tables are cached; the cache only ever holds the same bytes
/// for a given key, so concurrent readers are safe.
class KeyedEnsemble {
 public:
  KeyedEnsemble() = default;
  explicit KeyedEnsemble(OracleSpec spec);
  KeyedEnsemble(const KeyedEnsemble& other);
  KeyedEnsemble(KeyedEnsemble&& other) noexcept;
  KeyedEnsemble& operator=(KeyedEnsemble&& other) noexcept;

  const OracleSpec& spec() const { return spec_; }
  std::uint64_t num_keys() const { return spec_.num_keys(); }

  /// Truth table of f_k^layer; layer in [1, t].
  const boolfn::TruthTable& fn(std::uint64_t key, int layer) const;
  /// (f_k, g_k) for the t = 2 ensemble.
  std::pair<const boolfn::TruthTable&, const boolfn::TruthTable&> pair_fn(std::uint64_t key) const;
  /// |phi_k>, the t-layer state for this key.
  qstate::StateVector state(std::uint64_t key) const;

  void override_fn(std::uint64_t key, int layer, boolfn::TruthTable table);

 private:
  struct KeyTables {
    std::vector<boolfn::TruthTable> layers;  // indexed by layer - 1
  };
  const KeyTables& materialize(std::uint64_t key) const;

  OracleSpec spec_;
  std::map<std::pair<std::uint64_t, int>, boolfn::TruthTable> overrides_;
  mutable std::vector<std::unique_ptr<KeyTables>> cache_;
  mutable std::mutex cache_mutex_;
};

KeyedEnsemble build_ensemble(const OracleSpec& spec);

/// Bookkeeping hidden from distinguishers; consumed only by test oracles.
struct HybridHidden {
  std::optional<std::uint64_t> k_star;
  std::optional<boolfn::TruthTable> h;
  std::optional<boolfn::TruthTable> planted_f;
  std::optional<boolfn::TruthTable> planted_g;
};

struct HybridSample {
  int hybrid_id = 0;
  qstate::StateVector state;
  KeyedEnsemble ensemble;
  HybridHidden hidden;
};

/// Samples one security challenge:
///   H0: uniform oracle, state |phi_{k*}>.
///   H1: (f'_{k*}, g'_{k*}) Forrelated, other primed pairs uniform, h uniform,
///       observable g_k = g'_k * h for every key; state |phi_{k*}>.
///   H2: oracle as in H1, state |Phi_h>.
///   H3: all primed pairs uniform, otherwise as H2.
///   H4: uniform oracle, Haar-random state.
/// The oracle's master seed is drawn from the stream, so every sample carries
/// a fresh oracle; `shape` supplies kappa, n, t.
HybridSample sample_hybrid(int hybrid_id, const OracleSpec& shape,
                           const fordist::ForrelationParams& params, RngStream& rng);

/// rho_A with entries E_k[g_k(i) g_k(j) fhat_k(i) fhat_k(j)], by key enumeration.
qstate::DensityMatrix rho_A(const KeyedEnsemble& ensemble);

/// sigma_A: diagonal exactly 1/2^n; off-diagonal entries
/// E_k[g_k(i) g_k(j) w_k(i) w_k(j)] / 2^n with w_k the conditional bias of f_k.
qstate::DensityMatrix sigma_A(const KeyedEnsemble& ensemble,
                              const fordist::ForrelationParams& params);

/// tau_A = eps rho_A + (1 - eps) I / 2^n.
qstate::DensityMatrix tau_A(const KeyedEnsemble& ensemble,
                            const fordist::ForrelationParams& params);

struct Lemma55Report {
  double offdiag_max_gap = 0.0;   // max |sigma_ij - eps rho_ij| over i != j
  double td = 0.0;                // TD(sigma_A, tau_A) by eigendecomposition
  double tvd_diag = 0.0;          // (eps/2) sum_i |2^-n - E_k fhat_k(i)^2|
  bool matches = false;           // off-diagonals equal and TD == TVD within tolerance
  bool threshold_condition = false;  // max |fhat_k(i)| <= 1/sqrt(eps 2^n)
  double max_abs_fourier = 0.0;
};

Lemma55Report check_lemma_5_5(const KeyedEnsemble& ensemble,
                              const fordist::ForrelationParams& params);

/// sum_i |2^-n - E_k fhat_k(i)^2|.
double fourier_square_uniformity(const KeyedEnsemble& ensemble);

}  // namespace forrlab::hybrids
