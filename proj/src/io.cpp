#include "forrlab/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace forrlab::io {

namespace {

constexpr std::uint8_t kVersion = 1;

void write_bytes(std::ostream& out, const void* data, std::size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw std::runtime_error("write failed");
}

void read_bytes(std::istream& in, void* data, std::size_t size) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
  if (static_cast<std::size_t>(in.gcount()) != size) throw std::runtime_error("truncated record");
}

void write_u8(std::ostream& out, std::uint8_t v) { write_bytes(out, &v, 1); }

std::uint8_t read_u8(std::istream& in) {
  std::uint8_t v = 0;
  read_bytes(in, &v, 1);
  return v;
}

void write_f64(std::ostream& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<std::uint8_t, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = (bits >> (8 * i)) & 0xFF;
  write_bytes(out, bytes.data(), bytes.size());
}

double read_f64(std::istream& in) {
  std::array<std::uint8_t, 8> bytes{};
  read_bytes(in, bytes.data(), bytes.size());
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_magic(std::ostream& out, const char (&magic)[5]) { write_bytes(out, magic, 4); }

void expect_magic(std::istream& in, const char (&magic)[5]) {
  char found[4];
  read_bytes(in, found, 4);
  if (std::memcmp(found, magic, 4) != 0) throw std::runtime_error("bad magic bytes");
}

int read_header(std::istream& in, const char (&magic)[5]) {
  expect_magic(in, magic);
  if (read_u8(in) != kVersion) throw std::runtime_error("unsupported format version");
  return static_cast<int>(read_u8(in));
}

}  // namespace

void write_truth_table(std::ostream& out, const boolfn::TruthTable& table) {
  write_magic(out, "TTB1");
  write_u8(out, kVersion);
  write_u8(out, static_cast<std::uint8_t>(table.n));
  const std::size_t entries = table.size();
  std::vector<std::uint8_t> packed((entries + 7) / 8, 0);
  for (std::size_t i = 0; i < entries; ++i) {
    if (table(i) == -1.0) packed[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  write_bytes(out, packed.data(), packed.size());
}

boolfn::TruthTable read_truth_table(std::istream& in) {
  const int n = read_header(in, "TTB1");
  check_qubits(n);
  const std::size_t entries = table_size(n);
  std::vector<std::uint8_t> packed((entries + 7) / 8, 0);
  read_bytes(in, packed.data(), packed.size());
  Eigen::VectorXd values(static_cast<Eigen::Index>(entries));
  for (std::size_t i = 0; i < entries; ++i)
    values[static_cast<Eigen::Index>(i)] = (packed[i / 8] >> (i % 8)) & 1U ? -1.0 : 1.0;
  return boolfn::TruthTable(n, std::move(values));
}

std::string to_text(const boolfn::TruthTable& table) {
  std::string text(table.size(), '+');
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table(i) == -1.0) text[i] = '-';
  return text;
}

boolfn::TruthTable from_text(const std::string& text) {
  const std::size_t entries = text.size();
  if (entries == 0 || (entries & (entries - 1)) != 0)
    throw std::invalid_argument("text table length must be a power of two");
  const int n = std::countr_zero(entries);
  Eigen::VectorXd values(static_cast<Eigen::Index>(entries));
  for (std::size_t i = 0; i < entries; ++i) {
    const char c = text[i];
    if (c != '+' && c != '-') throw std::invalid_argument("text table must be '+'/'-'");
    values[static_cast<Eigen::Index>(i)] = c == '-' ? -1.0 : 1.0;
  }
  return boolfn::TruthTable(n, std::move(values));
}

void write_pair(std::ostream& out, const fordist::ForrelationPair& pair) {
  write_magic(out, "FPR1");
  write_u8(out, kVersion);
  write_u8(out, static_cast<std::uint8_t>(pair.params.n));
  write_f64(out, pair.params.epsilon);
  write_truth_table(out, pair.f);
  write_truth_table(out, pair.g);
}

fordist::ForrelationPair read_pair(std::istream& in) {
  const int n = read_header(in, "FPR1");
  const double epsilon = read_f64(in);
  fordist::ForrelationParams params(n, epsilon);
  boolfn::TruthTable f = read_truth_table(in);
  boolfn::TruthTable g = read_truth_table(in);
  if (f.n != n || g.n != n) throw std::runtime_error("pair tables disagree with header");
  return fordist::ForrelationPair{std::move(f), std::move(g), params};
}

void write_state(std::ostream& out, const qstate::StateVector& state) {
  write_magic(out, "FSV1");
  write_u8(out, kVersion);
  write_u8(out, static_cast<std::uint8_t>(state.n));
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    write_f64(out, state.amplitudes[i].real());
    write_f64(out, state.amplitudes[i].imag());
  }
}

qstate::StateVector read_state(std::istream& in) {
  const int n = read_header(in, "FSV1");
  check_qubits(n);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(table_size(n)));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = read_f64(in);
    const double im = read_f64(in);
    amps[i] = {re, im};
  }
  return qstate::StateVector(n, std::move(amps));
}

void write_density(std::ostream& out, const qstate::DensityMatrix& density) {
  write_magic(out, "FDM1");
  write_u8(out, kVersion);
  write_u8(out, static_cast<std::uint8_t>(density.n));
  for (Eigen::Index r = 0; r < density.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < density.entries.cols(); ++c) {
      write_f64(out, density.entries(r, c).real());
      write_f64(out, density.entries(r, c).imag());
    }
  }
}

qstate::DensityMatrix read_density(std::istream& in) {
  const int n = read_header(in, "FDM1");
  check_qubits(n, kMaxDenseQubits);
  const auto dim = static_cast<Eigen::Index>(table_size(n));
  Eigen::MatrixXcd entries(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = read_f64(in);
      const double im = read_f64(in);
      entries(r, c) = {re, im};
    }
  }
  return qstate::DensityMatrix(n, std::move(entries));
}

void dump_ensemble(const std::filesystem::path& dir, const hybrids::KeyedEnsemble& ensemble) {
  std::filesystem::create_directories(dir);
  const auto& spec = ensemble.spec();
  nlohmann::json manifest{
      {"seed", spec.master_seed}, {"kappa", spec.kappa}, {"n", spec.n}, {"t", spec.t}};
  atomic_write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  for (std::uint64_t k = 0; k < ensemble.num_keys(); ++k) {
    for (int layer = 1; layer <= spec.t; ++layer) {
      std::ostringstream record;
      write_truth_table(record, ensemble.fn(k, layer));
      atomic_write_file(
          dir / ("key" + std::to_string(k) + "_f" + std::to_string(layer) + ".ttb"),
          record.str());
    }
  }
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (result.ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buffer.data(), result.ptr);
}

}  // namespace forrlab::io
