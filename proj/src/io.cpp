#include "mems/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mems {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_double(v));
  add_text_row(row);
}

void CsvTable::add_text_row(const std::vector<std::string>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("csv row width does not match header");
  rows_.push_back(values);
}

std::string CsvTable::to_string(std::uint64_t config_hash) const {
  std::ostringstream out;
  out << "# config " << hex_hash(config_hash) << "\n";
  for (size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

std::string grid_file_string(const ReferenceMesh& mesh,
                             const std::vector<double>& values,
                             std::uint64_t config_hash) {
  if (static_cast<int>(values.size()) != mesh.num_nodes())
    throw std::invalid_argument("grid values do not match mesh size");
  std::ostringstream out;
  out << "# config " << hex_hash(config_hash) << "\n";
  out << "nx " << mesh.nx << "\n";
  out << "nz " << mesh.nz() << "\n";
  out << "x " << format_double(-mesh.L) << " " << format_double(mesh.L) << "\n";
  out << "z " << format_double(-mesh.H) << " " << format_double(mesh.d) << "\n";
  for (int j = 0; j <= mesh.nz(); ++j) {
    for (int i = 0; i <= mesh.nx; ++i) {
      out << (i ? " " : "") << format_double(values[mesh.node_id(i, j)]);
    }
    out << "\n";
  }
  return out.str();
}

std::string deflection_file_string(const DeflectionProfile& u, double H,
                                   std::uint64_t config_hash) {
  std::ostringstream out;
  out << "# config " << hex_hash(config_hash) << "\n";
  out << "L " << format_double(u.L()) << " H " << format_double(H) << "\n";
  const auto& x = u.x_nodes();
  const auto& v = u.u_values();
  const auto& s = u.du_values();
  for (size_t i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << " " << format_double(v[i]) << " "
        << format_double(s[i]) << "\n";
  return out.str();
}

DeflectionFile read_deflection_file(const std::string& path, double gap_floor,
                                    BcMode bc) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open deflection file '" + path + "'");

  double L = 0.0, H = 0.0;
  bool have_header = false;
  std::vector<double> xs, us, dus;
  bool has_slopes = true;

  std::string raw;
  while (std::getline(in, raw)) {
    size_t cut = raw.find('#');
    std::string line = cut == std::string::npos ? raw : raw.substr(0, cut);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      std::string htag;
      if (first != "L")
        throw std::runtime_error("deflection file: expected header 'L <L> H <H>'");
      if (!(ls >> L >> htag >> H) || htag != "H")
        throw std::runtime_error("deflection file: malformed header");
      have_header = true;
      continue;
    }
    double x, u, du;
    try {
      x = std::stod(first);
    } catch (const std::exception&) {
      throw std::runtime_error("deflection file: bad x value '" + first + "'");
    }
    if (!(ls >> u)) throw std::runtime_error("deflection file: missing u value");
    if (ls >> du) {
      dus.push_back(du);
    } else {
      has_slopes = false;
    }
    xs.push_back(x);
    us.push_back(u);
  }
  if (!have_header) throw std::runtime_error("deflection file: missing header");
  if (xs.size() < 2) throw std::runtime_error("deflection file: too few rows");
  if (has_slopes && dus.size() != xs.size())
    throw std::runtime_error("deflection file: inconsistent column counts");

  const int n = static_cast<int>(xs.size()) - 1;
  const double h = 2.0 * L / n;
  for (int i = 0; i <= n; ++i) {
    const double expect = -L + i * h;
    if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, L))
      throw std::runtime_error("deflection file: nodes must be uniform on [-L, L]");
  }

  std::vector<double> dofs(2 * (n + 1));
  for (int i = 0; i <= n; ++i) {
    dofs[2 * i] = us[i];
    if (has_slopes) {
      dofs[2 * i + 1] = dus[i];
    } else if (i == 0 || i == n) {
      dofs[2 * i + 1] = 0.0;  // clamped ends
    } else {
      dofs[2 * i + 1] = (us[i + 1] - us[i - 1]) / (2.0 * h);
    }
  }
  return DeflectionFile{L, H,
                        DeflectionProfile::from_coefficients(dofs, L, gap_floor, bc)};
}

}  // namespace mems
