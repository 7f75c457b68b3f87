#pragma once

#include <functional>
#include <vector>

namespace mems {

enum class BcMode { clamped, pinned };

// Plate deflection on a uniform grid over [-L, L], represented as a C1
// cubic Hermite function through nodal values and slopes. Profiles are
// immutable after construction; the constructor enforces u(+-L) = 0,
// the clamped slope conditions, and nodal admissibility u >= gap_floor.
class DeflectionProfile {
 public:
  using Fn = std::function<double(double)>;

  // Flat state u == 0.
  static DeflectionProfile flat(double L, int n_cells, double gap_floor,
                                BcMode bc = BcMode::clamped);

  // Samples value and slope of the given functions at the nodes.
  static DeflectionProfile from_function(const Fn& u, const Fn& du, double L,
                                         int n_cells, double gap_floor,
                                         BcMode bc = BcMode::clamped);

  // Assembles from interleaved Hermite coefficients (v0, s0, v1, s1, ...).
  static DeflectionProfile from_coefficients(const std::vector<double>& dofs,
                                             double L, double gap_floor,
                                             BcMode bc = BcMode::clamped);

  // u + t * theta on the common grid; throws std::domain_error when the
  // combination leaves the admissible set (used by perturbation probes).
  static DeflectionProfile linear_combination(const DeflectionProfile& u,
                                              double t,
                                              const DeflectionProfile& theta);

  double value(double x) const;
  double slope(double x) const;
  double curvature(double x) const;

  double L() const { return L_; }
  double gap_floor() const { return gap_floor_; }
  BcMode bc_mode() const { return bc_; }
  int n_cells() const { return static_cast<int>(u_.size()) - 1; }
  double dx() const { return dx_; }

  const std::vector<double>& x_nodes() const { return x_; }
  const std::vector<double>& u_values() const { return u_; }
  const std::vector<double>& du_values() const { return du_; }

  // Interleaved Hermite coefficient vector (v0, s0, v1, s1, ...).
  std::vector<double> coefficients() const;

  double min_value() const;
  bool is_flat() const;

 private:
  DeflectionProfile(std::vector<double> x, std::vector<double> u,
                    std::vector<double> du, double L, double gap_floor,
                    BcMode bc);
  void validate() const;
  int cell_of(double x) const;

  std::vector<double> x_, u_, du_;
  double L_ = 0.0;
  double dx_ = 0.0;
  double gap_floor_ = 0.0;
  BcMode bc_ = BcMode::clamped;
};

}  // namespace mems
