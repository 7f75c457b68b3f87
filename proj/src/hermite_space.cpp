#include "mems/hermite_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mems/hermite.hpp"

namespace mems {

namespace {

// Element matrices for the forms int u'' v'' and int u' v'' on a cell of
// width h, local dofs (v0, s0, v1, s1), slope coefficients unscaled.
void element_bending(double h, double ke[4][4]) {
  const double c = 1.0 / (h * h * h);
  const double h2 = h * h;
  const double m[4][4] = {{12.0, 6.0 * h, -12.0, 6.0 * h},
                          {6.0 * h, 4.0 * h2, -6.0 * h, 2.0 * h2},
                          {-12.0, -6.0 * h, 12.0, -6.0 * h},
                          {6.0 * h, 2.0 * h2, -6.0 * h, 4.0 * h2}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) ke[a][b] = c * m[a][b];
}

void element_stretch(double h, double ke[4][4]) {
  const double c = 1.0 / (30.0 * h);
  const double h2 = h * h;
  const double m[4][4] = {{36.0, 3.0 * h, -36.0, 3.0 * h},
                          {3.0 * h, 4.0 * h2, -3.0 * h, -h2},
                          {-36.0, -3.0 * h, 36.0, -3.0 * h},
                          {3.0 * h, -h2, -3.0 * h, 4.0 * h2}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) ke[a][b] = c * m[a][b];
}

BandMatrix assemble_band(int n_cells, double h,
                         void (*element)(double, double[4][4])) {
  BandMatrix M;
  M.n = 2 * (n_cells + 1);
  M.kd = 3;
  M.data.assign(static_cast<size_t>(M.n) * 4, 0.0);
  double ke[4][4];
  element(h, ke);
  for (int c = 0; c < n_cells; ++c) {
    const int base = 2 * c;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b <= a; ++b) {
        M.at(base + a, base + b) += ke[a][b];
      }
    }
  }
  return M;
}

}  // namespace

HermiteSpace::HermiteSpace(double L, int n_cells, BcMode bc)
    : L_(L), n_cells_(n_cells), bc_(bc) {
  if (L <= 0.0 || n_cells < 1)
    throw std::invalid_argument("HermiteSpace: bad extent or cell count");
  dx_ = 2.0 * L / n_cells;

  const int last = 2 * n_cells;
  if (bc == BcMode::clamped) {
    fixed_ = {0, 1, last, last + 1};
  } else {
    fixed_ = {0, last};
  }
  fixed_mask_.assign(n_dofs(), 0);
  for (int dof : fixed_) fixed_mask_[dof] = 1;

  bending_ = assemble_band(n_cells, dx_, element_bending);
  stretch_ = assemble_band(n_cells, dx_, element_stretch);
}

double HermiteSpace::bending_form(const std::vector<double>& d) const {
  std::vector<double> y;
  bending_.symmetric_multiply(d, y);
  return std::inner_product(d.begin(), d.end(), y.begin(), 0.0);
}

double HermiteSpace::stretch_form(const std::vector<double>& d) const {
  std::vector<double> y;
  stretch_.symmetric_multiply(d, y);
  return std::inner_product(d.begin(), d.end(), y.begin(), 0.0);
}

std::vector<double> HermiteSpace::load_piecewise_constant(
    const std::vector<double>& breaks, const std::vector<double>& values) const {
  if (breaks.size() != values.size() + 1 || values.empty())
    throw std::invalid_argument("load_piecewise_constant: size mismatch");

  std::vector<double> b(n_dofs(), 0.0);
  const GaussRule& g2 = GaussRule::points(2);  // exact for cubics
  for (size_t k = 0; k < values.size(); ++k) {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    if (hi <= lo) continue;
    int c0 = static_cast<int>(std::floor((lo + L_) / dx_));
    int c1 = static_cast<int>(std::floor((hi + L_) / dx_ - 1e-12));
    c0 = std::clamp(c0, 0, n_cells_ - 1);
    c1 = std::clamp(c1, 0, n_cells_ - 1);
    for (int c = c0; c <= c1; ++c) {
      const double a = -L_ + c * dx_;
      const double s_lo = std::max(lo, a);
      const double s_hi = std::min(hi, a + dx_);
      if (s_hi <= s_lo) continue;
      for (int q = 0; q < g2.n; ++q) {
        const double x = s_lo + g2.xi[q] * (s_hi - s_lo);
        const double w = g2.w[q] * (s_hi - s_lo) * values[k];
        const Hermite4 phi = hermite_values((x - a) / dx_, dx_);
        for (int j = 0; j < 4; ++j) b[2 * c + j] += w * phi[j];
      }
    }
  }
  return b;
}

BandMatrix HermiteSpace::constrained_copy(const BandMatrix& M) const {
  BandMatrix C = M;
  for (int dof : fixed_) {
    for (int j = std::max(0, dof - C.kd); j < dof; ++j) C.at(dof, j) = 0.0;
    for (int i = dof + 1; i <= std::min(C.n - 1, dof + C.kd); ++i)
      C.at(i, dof) = 0.0;
    C.at(dof, dof) = 1.0;
  }
  return C;
}

void HermiteSpace::zero_fixed(std::vector<double>& v) const {
  for (int dof : fixed_) v[dof] = 0.0;
}

DeflectionProfile HermiteSpace::make_profile(const std::vector<double>& dofs,
                                             double gap_floor) const {
  return DeflectionProfile::from_coefficients(dofs, L_, gap_floor, bc_);
}

double integrate_piecewise_constant(const std::vector<double>& breaks,
                                    const std::vector<double>& values,
                                    const DeflectionProfile& theta) {
  if (breaks.size() != values.size() + 1 || values.empty())
    throw std::invalid_argument("integrate_piecewise_constant: size mismatch");
  const double L = theta.L();
  const double h = theta.dx();
  const int n_cells = theta.n_cells();
  const GaussRule& g2 = GaussRule::points(2);

  double total = 0.0;
  for (size_t k = 0; k < values.size(); ++k) {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    if (hi <= lo || values[k] == 0.0) continue;
    int c0 = std::clamp(static_cast<int>(std::floor((lo + L) / h)), 0,
                        n_cells - 1);
    int c1 = std::clamp(static_cast<int>(std::floor((hi + L) / h - 1e-12)), 0,
                        n_cells - 1);
    for (int c = c0; c <= c1; ++c) {
      const double a = -L + c * h;
      const double s_lo = std::max(lo, a);
      const double s_hi = std::min(hi, a + h);
      if (s_hi <= s_lo) continue;
      for (int q = 0; q < g2.n; ++q) {
        const double x = s_lo + g2.xi[q] * (s_hi - s_lo);
        total += g2.w[q] * (s_hi - s_lo) * values[k] * theta.value(x);
      }
    }
  }
  return total;
}

}  // namespace mems
