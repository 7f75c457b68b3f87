#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mems/deflection.hpp"
#include "mems/mesh.hpp"

namespace mems {

// Round-trip decimal formatting; all text outputs use it so that runs
// with identical config and seed are byte-identical.
std::string format_double(double v);

// 16-digit lowercase hex of a config hash, as embedded in output files.
std::string hex_hash(std::uint64_t h);

// Writes via a temporary file in the same directory plus rename, so
// readers never observe partial files. Throws std::runtime_error.
void write_text_atomic(const std::string& path, const std::string& content);

// Minimal CSV builder: comment header with the config hash, one header
// row, then data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_text_row(const std::vector<std::string>& values);

  std::string to_string(std::uint64_t config_hash) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Plain-text structured-grid file: comment header with the config hash,
// then nx, nz, extents, then node values row-major (bottom row first,
// one mesh row per line).
std::string grid_file_string(const ReferenceMesh& mesh,
                             const std::vector<double>& values,
                             std::uint64_t config_hash);

// Deflection profile file: header line "L <L> H <H>", then rows
// "x u uprime". Readers also accept two-column (x, u) data and recover
// slopes by second-order differences.
std::string deflection_file_string(const DeflectionProfile& u, double H,
                                   std::uint64_t config_hash);

struct DeflectionFile {
  double L = 0.0;
  double H = 0.0;
  DeflectionProfile profile;
};

DeflectionFile read_deflection_file(const std::string& path, double gap_floor,
                                    BcMode bc = BcMode::clamped);

}  // namespace mems
