#include "forrlab/recoracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace forrlab::recoracle {

BitStr::BitStr(int len_, std::uint64_t bits_) : len(len_), bits(bits_) {
  if (len < 0 || len > 64) throw std::invalid_argument("bit string length must be in [0, 64]");
  if (len < 64) bits &= (std::uint64_t{1} << len) - 1;
}

BitStr BitStr::from_string(const std::string& s) {
  BitStr out;
  out.len = static_cast<int>(s.size());
  if (out.len > 64) throw std::invalid_argument("bit string too long");
  for (const char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
    out.bits = (out.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return out;
}

std::string BitStr::to_string() const {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i)
    if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

namespace {

class BitReader {
 public:
  explicit BitReader(const BitStr& s) : str_(s) {}

  std::optional<std::uint64_t> take(int nbits) {
    if (nbits < 0 || pos_ + nbits > str_.len) return std::nullopt;
    std::uint64_t v = 0;
    for (int i = 0; i < nbits; ++i) v = (v << 1) | static_cast<std::uint64_t>(str_.bit(pos_ + i));
    pos_ += nbits;
    return v;
  }

  std::optional<BitStr> take_str(int nbits) {
    const auto v = take(nbits);
    if (!v) return std::nullopt;
    return BitStr(nbits, *v);
  }

  int remaining() const { return str_.len - pos_; }

  bool rest_is_zero() {
    while (pos_ < str_.len) {
      if (str_.bit(pos_++)) return false;
    }
    return true;
  }

 private:
  const BitStr& str_;
  int pos_ = 0;
};

class BitWriter {
 public:
  void append(std::uint64_t value, int nbits) {
    for (int i = nbits - 1; i >= 0; --i) append_bit(static_cast<int>((value >> i) & 1U));
  }
  void append_str(const BitStr& s) {
    for (int i = 0; i < s.len; ++i) append_bit(s.bit(i));
  }
  void append_bit(int b) {
    if (len_ >= 64) throw std::invalid_argument("encoded machine exceeds 64 bits");
    bits_ = (bits_ << 1) | static_cast<std::uint64_t>(b & 1);
    ++len_;
  }
  void pad_to(int target) {
    if (target == 0) return;
    if (target < len_) throw std::invalid_argument("pad_to target shorter than encoding");
    while (len_ < target) append_bit(0);
  }
  BitStr str() const { return BitStr(len_, bits_); }

 private:
  int len_ = 0;
  std::uint64_t bits_ = 0;
};

std::optional<MachineDesc> decode_witness_eq(BitReader& reader, MachineDesc desc) {
  const auto len_y = reader.take(4);
  if (!len_y) return std::nullopt;
  if (static_cast<int>(*len_y) > kWitnessBudget) return std::nullopt;
  const auto y = reader.take_str(static_cast<int>(*len_y));
  if (!y || !reader.rest_is_zero()) return std::nullopt;
  desc.kind = MachineDesc::Kind::witness_eq;
  desc.witness_count = y->len;
  desc.gate_count = y->len + 1;
  desc.target_y = *y;
  return desc;
}

std::optional<MachineDesc> decode_a_or(BitReader& reader, MachineDesc desc, int max_query_len) {
  const auto count_field = reader.take(2);
  const auto len_field = reader.take(2);
  if (!count_field || !len_field) return std::nullopt;
  const int count = static_cast<int>(*count_field) + 1;
  const int qlen = static_cast<int>(*len_field) + 1;
  if (qlen > max_query_len) return std::nullopt;
  desc.kind = MachineDesc::Kind::a_or;
  desc.gate_count = 2 * count;
  for (int i = 0; i < count; ++i) {
    const auto q = reader.take_str(qlen);
    if (!q) return std::nullopt;
    desc.queries.push_back(*q);
  }
  if (!reader.rest_is_zero()) return std::nullopt;
  return desc;
}

std::optional<MachineDesc> decode_oracle_forward(BitReader& reader, MachineDesc desc,
                                                 int max_query_len) {
  const auto which = reader.take(1);
  if (!which) return std::nullopt;
  const int qlen = reader.remaining();
  if (qlen < 1 || qlen > max_query_len) return std::nullopt;
  desc.kind = MachineDesc::Kind::oracle_forward;
  desc.forward_to_b = *which == 1;
  desc.forward_query = *reader.take_str(qlen);
  desc.gate_count = 1;
  return desc;
}

std::optional<MachineDesc> decode_program(BitReader& reader, MachineDesc desc,
                                          int max_query_len) {
  desc.kind = MachineDesc::Kind::program;
  desc.witness_count = 2;
  int stack_depth = 0;
  while (true) {
    const auto opcode = reader.take(2);
    if (!opcode) return std::nullopt;
    if (*opcode == 0) {  // END
      if (!reader.rest_is_zero()) return std::nullopt;
      break;
    }
    ProgramOp op;
    if (*opcode == 1) {  // PUSH_ORACLE
      const auto which = reader.take(1);
      const auto len_field = reader.take(2);
      if (!which || !len_field) return std::nullopt;
      const int qlen = static_cast<int>(*len_field) + 1;
      if (qlen > max_query_len) return std::nullopt;
      const auto q = reader.take_str(qlen);
      if (!q) return std::nullopt;
      op.code = *which ? ProgramOp::Code::push_b : ProgramOp::Code::push_a;
      op.query = *q;
      ++stack_depth;
    } else if (*opcode == 2) {  // PUSH_W
      const auto wire = reader.take(1);
      if (!wire) return std::nullopt;
      op.code = ProgramOp::Code::push_w;
      op.wire = static_cast<int>(*wire);
      ++stack_depth;
    } else {  // LOGIC
      const auto logic = reader.take(2);
      if (!logic) return std::nullopt;
      switch (*logic) {
        case 0:
          op.code = ProgramOp::Code::op_not;
          if (stack_depth < 1) return std::nullopt;
          break;
        case 1:
          op.code = ProgramOp::Code::op_and;
          if (stack_depth < 2) return std::nullopt;
          --stack_depth;
          break;
        case 2:
          op.code = ProgramOp::Code::op_or;
          if (stack_depth < 2) return std::nullopt;
          --stack_depth;
          break;
        default:
          op.code = ProgramOp::Code::op_xor;
          if (stack_depth < 2) return std::nullopt;
          --stack_depth;
          break;
      }
    }
    desc.ops.push_back(op);
  }
  if (stack_depth < 1) return std::nullopt;
  desc.gate_count = static_cast<int>(desc.ops.size());
  return desc;
}

}  // namespace

std::optional<MachineDesc> decode_machine(const BitStr& x) {
  if (x.len < 3 || x.len > kMaxBLength) return std::nullopt;
  const int max_query_len = isqrt_floor(x.len);
  BitReader reader(x);
  const auto header = reader.take(2);
  if (!header) return std::nullopt;
  MachineDesc desc;
  desc.encoded_length = x.len;
  std::optional<MachineDesc> decoded;
  switch (*header) {
    case 0:
      decoded = decode_witness_eq(reader, std::move(desc));
      break;
    case 1:
      decoded = decode_a_or(reader, std::move(desc), max_query_len);
      break;
    case 2:
      decoded = decode_oracle_forward(reader, std::move(desc), max_query_len);
      break;
    default:
      decoded = decode_program(reader, std::move(desc), max_query_len);
      break;
  }
  if (decoded) {
    if (decoded->gate_count >= x.len) return std::nullopt;
    if (decoded->witness_count > kWitnessBudget) return std::nullopt;
  }
  return decoded;
}

BitStr encode_witness_eq(const BitStr& y, int pad_to) {
  BitWriter w;
  w.append(0b00, 2);
  w.append(static_cast<std::uint64_t>(y.len), 4);
  w.append_str(y);
  w.pad_to(pad_to);
  return w.str();
}

BitStr encode_a_or(std::span<const BitStr> queries, int pad_to) {
  if (queries.empty() || queries.size() > 4)
    throw std::invalid_argument("a_or takes 1..4 queries");
  const int qlen = queries.front().len;
  if (qlen < 1 || qlen > 4) throw std::invalid_argument("a_or query length must be 1..4");
  BitWriter w;
  w.append(0b01, 2);
  w.append(queries.size() - 1, 2);
  w.append(static_cast<std::uint64_t>(qlen - 1), 2);
  for (const auto& q : queries) {
    if (q.len != qlen) throw std::invalid_argument("a_or queries must share one length");
    w.append_str(q);
  }
  w.pad_to(pad_to);
  return w.str();
}

BitStr encode_oracle_forward(bool to_b, const BitStr& query) {
  BitWriter w;
  w.append(0b10, 2);
  w.append(to_b ? 1 : 0, 1);
  w.append_str(query);
  return w.str();
}

BitStr encode_program(std::span<const ProgramOp> ops, int pad_to) {
  BitWriter w;
  w.append(0b11, 2);
  for (const auto& op : ops) {
    switch (op.code) {
      case ProgramOp::Code::push_a:
      case ProgramOp::Code::push_b:
        w.append(0b01, 2);
        w.append(op.code == ProgramOp::Code::push_b ? 1 : 0, 1);
        w.append(static_cast<std::uint64_t>(op.query.len - 1), 2);
        w.append_str(op.query);
        break;
      case ProgramOp::Code::push_w:
        w.append(0b10, 2);
        w.append(static_cast<std::uint64_t>(op.wire), 1);
        break;
      case ProgramOp::Code::op_not:
        w.append(0b11, 2);
        w.append(0, 2);
        break;
      case ProgramOp::Code::op_and:
        w.append(0b11, 2);
        w.append(1, 2);
        break;
      case ProgramOp::Code::op_or:
        w.append(0b11, 2);
        w.append(2, 2);
        break;
      case ProgramOp::Code::op_xor:
        w.append(0b11, 2);
        w.append(3, 2);
        break;
    }
  }
  w.append(0b00, 2);  // END
  w.pad_to(pad_to);
  return w.str();
}

namespace {

int eval_machine(const RecursiveOracle& oracle, const MachineDesc& machine, std::uint64_t witness,
                 int depth);

int witness_bit(std::uint64_t witness, int wire, int count) {
  // Wire 0 is the most significant bit of the assignment, mirroring BitStr.
  return static_cast<int>((witness >> (count - 1 - wire)) & 1U) ? -1 : 1;
}

int eval_B_impl(const RecursiveOracle& oracle, const BitStr& x, int depth) {
  if (x.len > kMaxBLength)
    throw cap_error("B is only defined on strings of length <= " +
                    std::to_string(kMaxBLength));
  if (depth > kMaxRecursionDepth) throw std::logic_error("oracle recursion exceeded its depth bound");
  oracle.note_depth(depth);
  if (oracle.use_memo()) {
    if (const auto memoized = oracle.memo_lookup(x)) return *memoized;
  }
  const auto machine = decode_machine(x);
  int result = -1;
  if (machine) {
    const int assignments = 1 << machine->witness_count;
    for (int w = 0; w < assignments; ++w) {
      if (eval_machine(oracle, *machine, static_cast<std::uint64_t>(w), depth) == 1) {
        result = 1;
        break;
      }
    }
  }
  if (oracle.use_memo()) oracle.memo_store(x, result);
  return result;
}

int eval_machine(const RecursiveOracle& oracle, const MachineDesc& machine, std::uint64_t witness,
                 int depth) {
  switch (machine.kind) {
    case MachineDesc::Kind::witness_eq:
      return witness == machine.target_y.bits ? 1 : -1;
    case MachineDesc::Kind::a_or: {
      for (const auto& q : machine.queries) {
        if (eval_A(oracle, q) == 1) return 1;
      }
      return -1;
    }
    case MachineDesc::Kind::oracle_forward:
      return machine.forward_to_b ? eval_B_impl(oracle, machine.forward_query, depth + 1)
                                  : eval_A(oracle, machine.forward_query);
    case MachineDesc::Kind::program: {
      std::vector<int> stack;
      stack.reserve(machine.ops.size());
      for (const auto& op : machine.ops) {
        switch (op.code) {
          case ProgramOp::Code::push_a:
            stack.push_back(eval_A(oracle, op.query));
            break;
          case ProgramOp::Code::push_b:
            stack.push_back(eval_B_impl(oracle, op.query, depth + 1));
            break;
          case ProgramOp::Code::push_w:
            stack.push_back(witness_bit(witness, op.wire, machine.witness_count));
            break;
          case ProgramOp::Code::op_not:
            stack.back() = -stack.back();
            break;
          case ProgramOp::Code::op_and: {
            const int b = stack.back();
            stack.pop_back();
            stack.back() = std::min(stack.back(), b);
            break;
          }
          case ProgramOp::Code::op_or: {
            const int b = stack.back();
            stack.pop_back();
            stack.back() = std::max(stack.back(), b);
            break;
          }
          case ProgramOp::Code::op_xor: {
            const int b = stack.back();
            stack.pop_back();
            stack.back() = -(stack.back() * b);
            break;
          }
        }
      }
      return stack.back();
    }
  }
  throw std::logic_error("unreachable machine kind");
}

}  // namespace

int eval_A(const RecursiveOracle& oracle, const BitStr& x) {
  if (x.len > kMaxALength)
    throw cap_error("A is only defined on strings of length <= " + std::to_string(kMaxALength));
  // Tag separates A's bit space from other derived uses of the seed.
  const std::uint64_t h = mix64(oracle.seed(), 0xA11CE, static_cast<std::uint64_t>(x.len), x.bits);
  return (h >> 63) ? -1 : 1;
}

int eval_B(const RecursiveOracle& oracle, const BitStr& x) { return eval_B_impl(oracle, x, 1); }

int eval_B_depth(const RecursiveOracle& oracle, const BitStr& x, int depth) {
  return eval_B_impl(oracle, x, depth);
}

int brute_force_eval(const RecursiveOracle& oracle, const MachineDesc& machine) {
  const int assignments = 1 << machine.witness_count;
  for (int w = 0; w < assignments; ++w) {
    if (eval_machine(oracle, machine, static_cast<std::uint64_t>(w), 1) == 1) return 1;
  }
  return -1;
}

DemoReport demo_p_equals_np(const RecursiveOracle& oracle, std::span<const BitStr> machines) {
  DemoReport report;
  for (const auto& encoding : machines) {
    DemoCase c;
    c.encoding = encoding;
    c.via_b = eval_B(oracle, encoding);
    const auto machine = decode_machine(encoding);
    c.via_brute_force = machine ? brute_force_eval(oracle, *machine) : -1;
    c.agree = c.via_b == c.via_brute_force;
    if (c.agree) ++report.agreements;
    report.cases.push_back(c);
  }
  report.agreement_rate =
      report.cases.empty() ? 1.0
                           : static_cast<double>(report.agreements) /
                                 static_cast<double>(report.cases.size());
  return report;
}

std::vector<BitStr> make_demo_machine_suite(int count, RngStream& rng) {
  std::vector<BitStr> suite;

  // Witness-equality machines for every allowed target length.
  for (int len = 0; len <= kWitnessBudget; ++len) {
    const BitStr y(len, rng.next_u64());
    suite.push_back(encode_witness_eq(y, std::min(kMaxBLength, 2 + 4 + len + 2)));
  }

  // OR of four designated A bits, plus random OR machines.
  {
    const std::vector<BitStr> named = {BitStr::from_string("00"), BitStr::from_string("01"),
                                       BitStr::from_string("10"), BitStr::from_string("11")};
    suite.push_back(encode_a_or(named, 14));
  }

  // Oracle forwards at small lengths, both to A and to B.
  suite.push_back(encode_oracle_forward(false, BitStr::from_string("1")));
  suite.push_back(encode_oracle_forward(false, BitStr::from_string("01")));
  suite.push_back(encode_oracle_forward(true, BitStr::from_string("10")));

  // Depth-2 nesting: a program queries B on a 4-bit string that itself
  // forwards to A.
  {
    const BitStr inner = encode_oracle_forward(false, BitStr::from_string("1"));
    ProgramOp push_b{ProgramOp::Code::push_b, inner, 0};
    suite.push_back(encode_program(std::span(&push_b, 1), kMaxBLength));
    ProgramOp ops[2] = {push_b, ProgramOp{ProgramOp::Code::op_not, {}, 0}};
    suite.push_back(encode_program(std::span(ops, 2), kMaxBLength));
  }

  // Two-wire logic over the witness: exercises the existential search.
  {
    ProgramOp ops[3] = {ProgramOp{ProgramOp::Code::push_w, {}, 0},
                        ProgramOp{ProgramOp::Code::push_w, {}, 1},
                        ProgramOp{ProgramOp::Code::op_and, {}, 0}};
    suite.push_back(encode_program(std::span(ops, 3), kMaxBLength));
    ops[2].code = ProgramOp::Code::op_xor;
    suite.push_back(encode_program(std::span(ops, 3), kMaxBLength));
  }

  while (static_cast<int>(suite.size()) < count) {
    switch (rng.below(4)) {
      case 0: {
        const int len = static_cast<int>(rng.below(kWitnessBudget + 1));
        suite.push_back(encode_witness_eq(BitStr(len, rng.next_u64()),
                                          std::min(kMaxBLength, 6 + len + static_cast<int>(rng.below(3)))));
        break;
      }
      case 1: {
        const int qlen = 1 + static_cast<int>(rng.below(3));
        // Keep the encoding within the 16-bit cap and the query length within
        // floor(sqrt(l)) of the resulting length.
        const int max_count = std::min(4, (kMaxBLength - 6) / qlen);
        const int count_q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_count)));
        std::vector<BitStr> queries;
        for (int i = 0; i < count_q; ++i) queries.emplace_back(qlen, rng.next_u64());
        const int body = 6 + qlen * count_q;
        const int min_len = qlen >= 3 ? 9 : (qlen == 2 ? 8 : body);
        suite.push_back(encode_a_or(queries, std::max(body, min_len)));
        break;
      }
      case 2: {
        const int qlen = 1 + static_cast<int>(rng.below(2));
        suite.push_back(encode_oracle_forward(rng.bernoulli(0.5), BitStr(qlen, rng.next_u64())));
        break;
      }
      default: {
        std::vector<ProgramOp> ops;
        if (rng.bernoulli(0.5)) {
          ops.push_back({ProgramOp::Code::push_a, BitStr(1 + static_cast<int>(rng.below(2)), rng.next_u64()), 0});
        } else {
          ops.push_back({ProgramOp::Code::push_w, {}, static_cast<int>(rng.below(2))});
        }
        if (rng.bernoulli(0.5)) ops.push_back({ProgramOp::Code::op_not, {}, 0});
        suite.push_back(encode_program(ops, kMaxBLength));
        break;
      }
    }
  }
  return suite;
}

}  // namespace forrlab::recoracle
