#include "mems/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mems {

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'", line);
  }
  if (pos != v.size())
    throw ConfigError("trailing characters after number '" + v + "'", line);
  return out;
}

int parse_int(const std::string& v, int line) {
  size_t pos = 0;
  long out;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + v + "'", line);
  }
  if (pos != v.size())
    throw ConfigError("trailing characters after integer '" + v + "'", line);
  return static_cast<int>(out);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'", line);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const std::string& item : split_list(v)) out.push_back(parse_double(item, line));
  return out;
}

std::vector<int> parse_int_list(const std::string& v, int line) {
  std::vector<int> out;
  for (const std::string& item : split_list(v)) out.push_back(parse_int(item, line));
  return out;
}

struct Parser {
  RunConfig cfg;

  void apply(const std::string& section, const std::string& key,
             const std::string& value, int line) {
    if (section == "physical") {
      physical(key, value, line);
    } else if (section == "mesh") {
      mesh(key, value, line);
    } else if (section == "deflection") {
      deflection(key, value, line);
    } else if (section == "solve") {
      solve(key, value, line);
    } else if (section == "minimize") {
      minimize(key, value, line);
    } else if (section == "verify") {
      verify(key, value, line);
    } else if (section == "sweep") {
      sweep(key, value, line);
    } else if (section == "output") {
      output(key, value, line);
    } else {
      throw ConfigError("unknown section [" + section + "]", line);
    }
  }

  void physical(const std::string& k, const std::string& v, int line) {
    PhysicalParams& p = cfg.physical;
    if (k == "L") p.L = parse_double(v, line);
    else if (k == "H") p.H = parse_double(v, line);
    else if (k == "d") p.d = parse_double(v, line);
    else if (k == "beta") p.beta = parse_double(v, line);
    else if (k == "tau") p.tau = parse_double(v, line);
    else if (k == "a") p.a = parse_double(v, line);
    else if (k == "sigma1") p.sigma1 = parse_double(v, line);
    else if (k == "sigma2") p.sigma2 = parse_double(v, line);
    else if (k == "V") p.V = parse_double(v, line);
    else if (k == "m") p.m = parse_double(v, line);
    else if (k == "boundary") {
      if (v != "model" && v != "oneD")
        throw ConfigError("boundary must be 'model' or 'oneD'", line);
      cfg.boundary = v;
    } else {
      throw ConfigError("unknown key '" + k + "' in [physical]", line);
    }
  }

  void mesh(const std::string& k, const std::string& v, int line) {
    if (k == "nx") cfg.mesh.nx = parse_int(v, line);
    else if (k == "nz1") cfg.mesh.nz1 = parse_int(v, line);
    else if (k == "nz2") cfg.mesh.nz2 = parse_int(v, line);
    else throw ConfigError("unknown key '" + k + "' in [mesh]", line);
  }

  void deflection(const std::string& k, const std::string& v, int line) {
    DeflectionConfig& d = cfg.deflection;
    if (k == "source") {
      if (v == "flat") d.source = DeflectionSource::flat;
      else if (v == "file") d.source = DeflectionSource::file;
      else if (v == "catalogue") d.source = DeflectionSource::catalogue;
      else throw ConfigError("source must be flat, file or catalogue", line);
    } else if (k == "file") d.file = v;
    else if (k == "shape") d.shape = v;
    else if (k == "amplitude") d.amplitude = parse_double(v, line);
    else if (k == "n_cells") d.n_cells = parse_int(v, line);
    else throw ConfigError("unknown key '" + k + "' in [deflection]", line);
  }

  void solve(const std::string& k, const std::string& v, int line) {
    SolveConfig& s = cfg.solve;
    if (k == "trace_mode") {
      if (v == "cell_center") s.trace_mode = TraceMode::cell_center;
      else if (v == "extrapolated") s.trace_mode = TraceMode::extrapolated;
      else throw ConfigError("trace_mode must be cell_center or extrapolated", line);
    } else if (k == "solver") {
      if (v == "automatic") s.solver = SolverOptions::Kind::automatic;
      else if (v == "cg") s.solver = SolverOptions::Kind::cg;
      else if (v == "cholesky") s.solver = SolverOptions::Kind::cholesky;
      else throw ConfigError("solver must be automatic, cg or cholesky", line);
    } else if (k == "cg_tol") s.cg_tol = parse_double(v, line);
    else throw ConfigError("unknown key '" + k + "' in [solve]", line);
  }

  void minimize(const std::string& k, const std::string& v, int line) {
    MinimizeConfig& m = cfg.minimize;
    if (k == "initial_step") m.initial_step = parse_double(v, line);
    else if (k == "backtrack") m.backtrack = parse_double(v, line);
    else if (k == "armijo_c") m.armijo_c = parse_double(v, line);
    else if (k == "max_backtracks") m.max_backtracks = parse_int(v, line);
    else if (k == "obstacle") {
      if (v == "projection") m.obstacle = MinimizeConfig::Obstacle::projection;
      else if (v == "penalty") m.obstacle = MinimizeConfig::Obstacle::penalty;
      else throw ConfigError("obstacle must be projection or penalty", line);
    } else if (k == "penalty_weight") m.penalty_weight = parse_double(v, line);
    else if (k == "penalty_growth") m.penalty_growth = parse_double(v, line);
    else if (k == "penalty_rounds") m.penalty_rounds = parse_int(v, line);
    else if (k == "cap_enabled") m.cap_enabled = parse_bool(v, line);
    else if (k == "cap_bound") m.cap_bound = parse_double(v, line);
    else if (k == "cap_weight") m.cap_weight = parse_double(v, line);
    else if (k == "tol_vi") m.tol_vi = parse_double(v, line);
    else if (k == "tol_step") m.tol_step = parse_double(v, line);
    else if (k == "max_iter") m.max_iter = parse_int(v, line);
    else if (k == "metric") {
      if (v == "mechanical") m.metric = MinimizeConfig::Metric::mechanical;
      else if (v == "euclidean") m.metric = MinimizeConfig::Metric::euclidean;
      else throw ConfigError("metric must be mechanical or euclidean", line);
    } else throw ConfigError("unknown key '" + k + "' in [minimize]", line);
  }

  void verify(const std::string& k, const std::string& v, int line) {
    VerifyConfig& vc = cfg.verify;
    if (k == "probes") {
      vc.probes = split_list(v);
      for (const std::string& pr : vc.probes)
        if (pr != "derivative" && pr != "mms" && pr != "monotonicity" &&
            pr != "continuity")
          throw ConfigError("unknown probe '" + pr + "'", line);
    } else if (k == "fd_steps") vc.fd_steps = parse_double_list(v, line);
    else if (k == "mms_ladder") vc.mms_ladder = parse_int_list(v, line);
    else if (k == "monotonicity_tol") vc.monotonicity_tol = parse_double(v, line);
    else if (k == "continuity_levels") vc.continuity_levels = parse_int(v, line);
    else if (k == "continuity_delta0") vc.continuity_delta0 = parse_double(v, line);
    else if (k == "derivative_tol") vc.derivative_tol = parse_double(v, line);
    else throw ConfigError("unknown key '" + k + "' in [verify]", line);
  }

  void sweep(const std::string& k, const std::string& v, int line) {
    if (k == "v_values") {
      cfg.sweep.v_values = parse_double_list(v, line);
      if (cfg.sweep.v_values.empty())
        throw ConfigError("v_values must not be empty", line);
    } else throw ConfigError("unknown key '" + k + "' in [sweep]", line);
  }

  void output(const std::string& k, const std::string& v, int line) {
    if (k == "dir") cfg.out_dir = v;
    else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(v, line));
    else throw ConfigError("unknown key '" + k + "' in [output]", line);
  }
};

}  // namespace

void RunConfig::validate() const {
  try {
    physical.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[physical] ") + e.what(), 0);
  }
  if (mesh.nx < 1 || mesh.nz1 < 1 || mesh.nz2 < 1)
    throw ConfigError("[mesh] cell counts must be positive", 0);
  if (deflection.source == DeflectionSource::file && deflection.file.empty())
    throw ConfigError("[deflection] source=file requires a file path", 0);
  if (deflection.n_cells < 0)
    throw ConfigError("[deflection] n_cells must be nonnegative", 0);
  try {
    minimize.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[minimize] ") + e.what(), 0);
  }
  if (solve.cg_tol <= 0.0) throw ConfigError("[solve] cg_tol must be positive", 0);
  for (size_t i = 1; i < verify.fd_steps.size(); ++i)
    if (verify.fd_steps[i] >= verify.fd_steps[i - 1])
      throw ConfigError("[verify] fd_steps must decrease strictly", 0);
  if (verify.fd_steps.empty())
    throw ConfigError("[verify] fd_steps must not be empty", 0);
  for (int nx : verify.mms_ladder)
    if (nx < 2 || nx % 2 != 0)
      throw ConfigError("[verify] mms_ladder entries must be even and >= 2", 0);
  if (verify.continuity_levels < 3)
    throw ConfigError("[verify] continuity_levels must be >= 3", 0);
}

RunConfig parse_config_text(const std::string& text) {
  Parser parser;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // Strip comments introduced by '#' or ';'.
    size_t cut = raw.find_first_of("#;");
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (section.empty())
      throw ConfigError("key '" + key + "' outside any section", line_no);
    parser.apply(section, key, value, line_no);
  }
  parser.cfg.hash = fnv1a_hash(text);
  parser.cfg.validate();
  return parser.cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mems
