#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "forrlab/boolfn.hpp"
#include "forrlab/fordist.hpp"
#include "forrlab/hybrids.hpp"
#include "forrlab/qstate.hpp"

namespace forrlab::io {

// Binary layouts, all little-endian:
//   truth table    "TTB1" | version u8 | n u8 | ceil(2^n / 8) bytes, bit i of
//                  byte i/8 at position i%8, set bit = value -1
//   pair           "FPR1" | version u8 | n u8 | epsilon f64 | two tables
//   state vector   "FSV1" | version u8 | n u8 | 2^n pairs of f64 (re, im)
//   density matrix "FDM1" | version u8 | n u8 | row-major 2^n x 2^n pairs of f64

void write_truth_table(std::ostream& out, const boolfn::TruthTable& table);
boolfn::TruthTable read_truth_table(std::istream& in);

/// Debug text form: one '+' or '-' per entry.
std::string to_text(const boolfn::TruthTable& table);
boolfn::TruthTable from_text(const std::string& text);

void write_pair(std::ostream& out, const fordist::ForrelationPair& pair);
fordist::ForrelationPair read_pair(std::istream& in);

void write_state(std::ostream& out, const qstate::StateVector& state);
qstate::StateVector read_state(std::istream& in);

void write_density(std::ostream& out, const qstate::DensityMatrix& density);
qstate::DensityMatrix read_density(std::istream& in);

/// Writes manifest.json {seed, kappa, n, t} plus one truth-table file per
/// (key, layer) into the directory, creating it if needed.
void dump_ensemble(const std::filesystem::path& dir, const hybrids::KeyedEnsemble& ensemble);

/// Writes content to the path atomically (temp file, then rename).
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form of a double; stable across runs.
std::string format_double(double value);

}  // namespace forrlab::io
