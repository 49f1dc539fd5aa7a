#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace forrlab {

// Truth tables and statevectors hold 2^n dense entries; density matrices 4^n.
inline constexpr int kMaxQubits = 24;
inline constexpr int kMaxDenseQubits = 12;

// Thrown when a requested size exceeds the in-memory caps above. The CLI maps
// this to its own exit code, distinct from ordinary argument errors.
class cap_error : public std::runtime_error {
 public:
  explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

inline int check_qubits(int n, int cap = kMaxQubits) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1, got " + std::to_string(n));
  if (n > cap)
    throw cap_error("qubit count " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  return n;
}

inline std::size_t table_size(int n) { return std::size_t{1} << n; }

/// Truncation to [-a, a]: min(a, max(-a, z)). Satisfies trnc_a(z) = a*trnc_1(z/a).
inline double trnc(double z, double a = 1.0) {
  if (!(a > 0.0)) throw std::invalid_argument("trnc bound must be positive");
  if (z > a) return a;
  if (z < -a) return -a;
  return z;
}

}  // namespace forrlab
