#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace forrlab {

// SplitMix64 finalizer. Used both to derive substream seeds and as the keyed
// bit source behind the oracle stand-ins.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b) ^ c);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return mix64(mix64(a, b, c) ^ d);
}

// Seeded random stream. Wraps std::mt19937_64 (whose output sequence is fixed
// by the standard) with explicit conversions to doubles, so that runs are
// bit-reproducible across platforms; std::uniform_real_distribution and
// std::normal_distribution carry no such guarantee. Gaussians use Box-Muller
// on the 53-bit uniforms, with the paired variate cached.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  // Substream `stream` of a master seed. Deterministic and documented:
  // substream seeds are mix64(master, stream).
  static RngStream substream(std::uint64_t master, std::uint64_t stream) {
    return RngStream(mix64(master, stream));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform +1/-1.
  double sign() { return (engine_() >> 63) ? -1.0 : 1.0; }

  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

  /// Zero-mean Gaussian with standard deviation sigma.
  double gaussian(double sigma = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta) * sigma;
  }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace forrlab
