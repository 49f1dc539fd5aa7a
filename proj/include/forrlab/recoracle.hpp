#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forrlab/common.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::recoracle {

// B is defined on strings of at most 16 bits; query gates inside a length-l
// machine may touch strings of length at most floor(sqrt(l)), so nested B
// evaluations shrink 16 -> 4 -> 2 and bottom out.
inline constexpr int kMaxBLength = 16;
inline constexpr int kMaxALength = 64;
inline constexpr int kWitnessBudget = 8;  // brute force capped at 2^8 per call
inline constexpr int kMaxRecursionDepth = 4;

/// A bit string of up to 64 bits, most significant bit first.
struct BitStr {
  int len = 0;
  std::uint64_t bits = 0;

  BitStr() = default;
  BitStr(int len_, std::uint64_t bits_);
  static BitStr from_string(const std::string& zeros_and_ones);

  int bit(int i) const { return static_cast<int>((bits >> (len - 1 - i)) & 1U); }
  std::string to_string() const;
  auto operator<=>(const BitStr&) const = default;
};

inline int isqrt_floor(int v) {
  int r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Machine encoding, consumed most significant bit first. Two header bits pick
// the class:
//   00 WITNESS_EQ   4-bit |y|, then y, then zero padding. Accepts iff the
//                   witness equals y; |y| wires, |y| <= 8.
//   01 A_OR         2-bit c-1, 2-bit L-1, then c query strings of common
//                   length L <= floor(sqrt(l)), then zero padding. Accepts iff
//                   some A(s_i) = +1. No witness.
//   10 ORACLE_FWD   1 bit picking A or B; the rest of the string is the query
//                   (1 <= |s| <= floor(sqrt(l))). Accepts iff the answer is +1.
//   11 PROGRAM      a stack program over two witness wires; 2-bit opcodes:
//                   00 END (remaining bits must be zero), 01 PUSH_ORACLE
//                   (1 bit A/B, 2-bit L-1, L query bits), 10 PUSH_W (1-bit
//                   wire), 11 LOGIC (2-bit: NOT, AND, OR, XOR). Accepts iff
//                   the final stack top is +1. Stack discipline is checked at
//                   decode time.
// Logic is over +-1 values with +1 playing true: AND = min, OR = max,
// NOT = negate, XOR = negated product.
struct ProgramOp {
  enum class Code { push_a, push_b, push_w, op_not, op_and, op_or, op_xor };
  Code code = Code::op_not;
  BitStr query;  // push_a / push_b
  int wire = 0;  // push_w
};

struct MachineDesc {
  enum class Kind { witness_eq, a_or, oracle_forward, program };

  Kind kind = Kind::witness_eq;
  int encoded_length = 0;
  int witness_count = 0;
  int gate_count = 0;
  BitStr target_y;                // witness_eq
  std::vector<BitStr> queries;    // a_or
  bool forward_to_b = false;      // oracle_forward
  BitStr forward_query;           // oracle_forward
  std::vector<ProgramOp> ops;     // program
};

/// Decodes a machine description; nullopt on any malformed encoding.
std::optional<MachineDesc> decode_machine(const BitStr& x);

// Encoders for the four classes. pad_to fixes the final length by appending
// zero padding where the class allows it.
BitStr encode_witness_eq(const BitStr& y, int pad_to = 0);
BitStr encode_a_or(std::span<const BitStr> queries, int pad_to = 0);
BitStr encode_oracle_forward(bool to_b, const BitStr& query);
BitStr encode_program(std::span<const ProgramOp> ops, int pad_to = 0);

/// The oracle pair (A, B): A is a seeded bit source, B answers witness
/// queries about machines over A and B.
class RecursiveOracle {
 public:
  explicit RecursiveOracle(std::uint64_t seed, bool use_memo = true)
      : seed_(seed), use_memo_(use_memo) {}

  std::uint64_t seed() const { return seed_; }
  int max_depth_seen() const { return max_depth_seen_; }
  bool use_memo() const { return use_memo_; }

  std::optional<int> memo_lookup(const BitStr& x) const {
    std::scoped_lock lock(memo_mutex_);
    const auto it = memo_.find(x);
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }
  void memo_store(const BitStr& x, int value) const {
    std::scoped_lock lock(memo_mutex_);
    memo_.emplace(x, value);
  }
  void note_depth(int depth) const {
    std::scoped_lock lock(memo_mutex_);
    max_depth_seen_ = std::max(max_depth_seen_, depth);
  }

 private:
  std::uint64_t seed_ = 0;
  bool use_memo_ = true;
  mutable std::map<BitStr, int> memo_;
  mutable std::mutex memo_mutex_;
  mutable int max_depth_seen_ = 0;
};

/// The seeded random oracle bit A(x) as +1/-1; |x| <= 64.
int eval_A(const RecursiveOracle& oracle, const BitStr& x);

/// B(x): +1 iff some witness assignment makes the decoded machine accept;
/// malformed encodings give -1. |x| <= 16.
int eval_B(const RecursiveOracle& oracle, const BitStr& x);

/// Direct existential evaluation of an in-memory machine: enumerates witness
/// assignments and evaluates gates, without going through B's decode path.
int brute_force_eval(const RecursiveOracle& oracle, const MachineDesc& machine);

struct DemoCase {
  BitStr encoding;
  int via_b = 0;
  int via_brute_force = 0;
  bool agree = false;
};

struct DemoReport {
  std::vector<DemoCase> cases;
  long long agreements = 0;
  double agreement_rate = 0.0;
};

/// For each encoded machine, compares the single B query against brute-force
/// existential evaluation.
DemoReport demo_p_equals_np(const RecursiveOracle& oracle, std::span<const BitStr> machines);

/// A varied suite of valid machine encodings: witness-equality machines, ORs
/// of designated A bits, oracle forwards, stack programs, and a depth-2
/// nested case. Size at least `count`.
std::vector<BitStr> make_demo_machine_suite(int count, RngStream& rng);

}  // namespace forrlab::recoracle
