#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "forrlab/fordist.hpp"
#include "forrlab/hybrids.hpp"
#include "forrlab/qstate.hpp"
#include "forrlab/rng.hpp"
#include "forrlab/stats.hpp"

namespace forrlab::games {

/// What a distinguisher sees: one copy of the challenge state plus read
/// access to the ensemble truth tables. Hidden sampling records stay out.
struct Challenge {
  const qstate::StateVector* state = nullptr;
  const hybrids::KeyedEnsemble* ensemble = nullptr;
};

struct Distinguisher {
  std::string name;
  std::string resource_class;  // overlap-bruteforce | swap-test | low-degree | custom
  std::function<bool(const Challenge&, RngStream&)> accept;
};

/// Accepts when max_k |<phi_k|psi>| reaches the threshold. Inefficient by
/// construction: enumerates all 2^kappa keys.
Distinguisher make_overlap_bruteforce_distinguisher(double threshold = 0.5);

/// One-copy swap test of the challenge against |phi_k> for a stream-drawn
/// key; accepts with probability (1 + |<phi_k|psi>|^2) / 2.
Distinguisher make_swap_test_distinguisher();

/// Ignores the challenge.
Distinguisher make_coin_flip_distinguisher();

struct AdvantageEstimate {
  double p_a = 0.0;
  double p_b = 0.0;
  double advantage = 0.0;
  double abs_advantage = 0.0;
  double ci_halfwidth = 0.0;  // 99% Hoeffding, two estimates combined
  long long trials = 0;
};

/// Runs the distinguisher on fresh samples of each hybrid. Trials are split
/// into fixed blocks with derived substreams, so results do not depend on the
/// worker count.
AdvantageEstimate estimate_advantage(const Distinguisher& d, int hybrid_a, int hybrid_b,
                                     const hybrids::OracleSpec& shape,
                                     const fordist::ForrelationParams& params, long long trials,
                                     RngStream& rng, int workers = 1);

/// Challenge drawn from H1 with probability eps, else from H3; the explicit
/// mixture whose average state is tau_A.
hybrids::HybridSample sample_tau_mixture(const hybrids::OracleSpec& shape,
                                         const fordist::ForrelationParams& params,
                                         RngStream& rng);

struct MaxOverlapResult {
  std::uint64_t key = 0;
  double value = 0.0;
};

/// max over all keys of |<phi_k|state>| by enumeration.
MaxOverlapResult brute_force_max_overlap(const qstate::StateVector& state,
                                         const hybrids::KeyedEnsemble& ensemble);

enum class GameSide { hkappa, uniform };

struct GameOutcome {
  boolfn::TruthTable h;
  double statistic = 0.0;  // max_k |forrelation_value(f_k, g_k * h)|
};

/// One round of the shifted-Forrelation game. On the hkappa side a key k is
/// drawn, g is sampled from the conditional law given f_k, and h = g_k * g;
/// on the uniform side h is uniform. Each round draws a fresh oracle from the
/// stream. The statistic is the maximum shifted Forrelation over keys, the
/// inefficient detector's value.
GameOutcome shifted_forrelation_game(const hybrids::OracleSpec& shape,
                                     const fordist::ForrelationParams& params, GameSide side,
                                     RngStream& rng);

/// A multilinear function of degree <= 2 over the 2*2^n variables
/// (tt(f), tt(g)). Side 0 indexes into tt(f), side 1 into tt(g).
struct QuadraticTest {
  struct LinearTerm {
    int side = 0;
    std::uint64_t index = 0;
    double coeff = 0.0;
  };
  struct QuadraticTerm {
    int side_a = 0;
    std::uint64_t index_a = 0;
    int side_b = 0;
    std::uint64_t index_b = 0;
    double coeff = 0.0;
  };

  double constant = 0.0;
  std::vector<LinearTerm> linear;
  std::vector<QuadraticTerm> quadratic;

  /// Sum of absolute degree-2 coefficients.
  double l12() const;
  /// Multilinear evaluation at arbitrary real vectors, one per side.
  double evaluate(const Eigen::VectorXd& f_values, const Eigen::VectorXd& g_values) const;
};

/// Battery of `count` tests with degree-2 mass exactly t_mass, supported on
/// random f/g coordinate pairs. Half the battery aligns its signs with the
/// character structure (the strongest tests of this mass), half uses random
/// signs.
std::vector<QuadraticTest> make_quadratic_battery(int n, int count, double t_mass,
                                                  RngStream& rng);

struct TestAdvantage {
  double advantage = 0.0;      // |E_Fn[C] - E_uniform[C]|
  double ci_halfwidth = 0.0;   // normal-approximation 99% CI on the mean
  double mean_forrelated = 0.0;
  double mean_uniform = 0.0;   // exact: the constant coefficient
};

struct LowDegreeReport {
  std::vector<TestAdvantage> per_test;
  double battery_max = 0.0;
  double bound_scale = 0.0;  // t log2(N) / sqrt(N), the comparison scale
  long long trials = 0;
};

/// Estimates each test's advantage against the Forrelation distribution. The
/// conditional law of g given f is integrated exactly (multilinear evaluation
/// at the conditional means), so only f is sampled; this keeps the estimator
/// variance at the sqrt(eps) scale instead of unit scale.
LowDegreeReport low_degree_advantage(const std::vector<QuadraticTest>& battery, int n,
                                     const fordist::ForrelationParams& params, long long trials,
                                     RngStream& rng, int workers = 1);

/// Direct-sampling estimate of E_Fn[C] for one test: full (f, g) pairs, no
/// conditional integration. Higher variance; cross-validation path.
double direct_test_mean(const QuadraticTest& test, const fordist::ForrelationParams& params,
                        long long trials, RngStream& rng);

/// Simulated one-copy swap test: returns true with probability
/// (1 + |<a|b>|^2) / 2.
bool swap_test(const qstate::StateVector& a, const qstate::StateVector& b, RngStream& rng);

}  // namespace forrlab::games
