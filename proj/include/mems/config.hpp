#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mems/minimize.hpp"
#include "mems/params.hpp"
#include "mems/sparse.hpp"
#include "mems/traces.hpp"

namespace mems {

// Parse failure with the 1-based line it occurred on (0 when the error
// is not tied to a specific line, e.g. a missing file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line(line) {}
  int line = 0;
};

struct MeshConfig {
  int nx = 64;
  int nz1 = 32;
  int nz2 = 32;
};

enum class DeflectionSource { flat, file, catalogue };

struct DeflectionConfig {
  DeflectionSource source = DeflectionSource::flat;
  std::string file;             // source = file
  std::string shape = "quartic";  // source = catalogue
  double amplitude = -0.1;
  int n_cells = 0;  // 0: use mesh nx
};

struct SolveConfig {
  TraceMode trace_mode = TraceMode::extrapolated;
  SolverOptions::Kind solver = SolverOptions::Kind::automatic;
  double cg_tol = 1e-10;
};

struct VerifyConfig {
  // Subset of {derivative, mms, monotonicity, continuity}; may be empty.
  std::vector<std::string> probes{"derivative", "mms", "monotonicity",
                                  "continuity"};
  std::vector<double> fd_steps{1e-2, 5e-3, 2.5e-3};
  std::vector<int> mms_ladder{16, 32, 64, 128};
  double monotonicity_tol = 1e-10;
  int continuity_levels = 8;
  double continuity_delta0 = 0.2;
  double derivative_tol = 1e-2;
};

struct SweepConfig {
  std::vector<double> v_values{0.2, 0.4, 0.6, 0.8, 1.0};
};

// Full run description: every command reads the blocks it needs and
// ignores the rest. Unknown keys anywhere are a parse error.
struct RunConfig {
  PhysicalParams physical;
  std::string boundary = "model";  // "model" | "oneD"
  MeshConfig mesh;
  DeflectionConfig deflection;
  SolveConfig solve;
  MinimizeConfig minimize;
  VerifyConfig verify;
  SweepConfig sweep;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::uint64_t hash = 0;  // FNV-1a of the config text

  void validate() const;  // throws ConfigError
};

// FNV-1a 64-bit over raw bytes; stable provenance tag for outputs.
std::uint64_t fnv1a_hash(const std::string& text);

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace mems
