#pragma once

#include <vector>

#include "mems/deflection.hpp"
#include "mems/sparse.hpp"

namespace mems {

// Cubic Hermite finite-element space on the uniform grid over (-L, L)
// used for deflections. Degrees of freedom are interleaved per node as
// (value, slope); the slope coefficient is the physical derivative.
// Clamped boundary conditions fix value and slope at both ends, pinned
// only the values.
class HermiteSpace {
 public:
  HermiteSpace(double L, int n_cells, BcMode bc);

  double L() const { return L_; }
  int n_cells() const { return n_cells_; }
  double dx() const { return dx_; }
  int n_dofs() const { return 2 * (n_cells_ + 1); }
  BcMode bc() const { return bc_; }

  const std::vector<int>& fixed_dofs() const { return fixed_; }
  bool is_fixed(int dof) const { return fixed_mask_[dof] != 0; }

  // Gram matrices of the two mechanical forms, full dof set, band
  // width 3 (one-cell coupling): int u'' v'' and int u' v'.
  const BandMatrix& bending() const { return bending_; }
  const BandMatrix& stretch() const { return stretch_; }

  double bending_form(const std::vector<double>& d) const;  // d^T Kb d
  double stretch_form(const std::vector<double>& d) const;  // d^T Ks d

  // Load vector b_i = int f theta_i for f piecewise constant on the
  // given breakpoints (breaks.front() = -L, breaks.back() = L).
  std::vector<double> load_piecewise_constant(
      const std::vector<double>& breaks,
      const std::vector<double>& values) const;

  // Copy of M with the constrained rows/columns collapsed to the
  // identity, ready for factorisation.
  BandMatrix constrained_copy(const BandMatrix& M) const;

  // Zero out the fixed entries of a gradient-like vector in place.
  void zero_fixed(std::vector<double>& v) const;

  DeflectionProfile make_profile(const std::vector<double>& dofs,
                                 double gap_floor) const;

 private:
  double L_ = 0.0;
  int n_cells_ = 0;
  double dx_ = 0.0;
  BcMode bc_ = BcMode::clamped;
  std::vector<int> fixed_;
  std::vector<char> fixed_mask_;
  BandMatrix bending_;
  BandMatrix stretch_;
};

// int f(x) theta(x) dx for f piecewise constant on `breaks` and theta a
// Hermite profile on (-L, L); sub-segments are integrated with a Gauss
// rule that is exact for cubics.
double integrate_piecewise_constant(const std::vector<double>& breaks,
                                    const std::vector<double>& values,
                                    const DeflectionProfile& theta);

}  // namespace mems
