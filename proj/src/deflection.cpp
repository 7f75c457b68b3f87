#include "mems/deflection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mems/hermite.hpp"

namespace mems {

namespace {
// Nodal values at the wall are pinned to exact zeros; anything beyond
// rounding noise in the inputs is a caller bug.
constexpr double kBcTol = 1e-14;
}  // namespace

DeflectionProfile::DeflectionProfile(std::vector<double> x,
                                     std::vector<double> u,
                                     std::vector<double> du, double L,
                                     double gap_floor, BcMode bc)
    : x_(std::move(x)),
      u_(std::move(u)),
      du_(std::move(du)),
      L_(L),
      gap_floor_(gap_floor),
      bc_(bc) {
  if (x_.size() < 2 || x_.size() != u_.size() || x_.size() != du_.size())
    throw std::invalid_argument("DeflectionProfile: inconsistent node data");
  dx_ = (2.0 * L_) / static_cast<double>(x_.size() - 1);
  validate();
}

void DeflectionProfile::validate() const {
  if (L_ <= 0.0) throw std::invalid_argument("DeflectionProfile: L must be positive");
  if (std::abs(u_.front()) > kBcTol || std::abs(u_.back()) > kBcTol)
    throw std::invalid_argument("DeflectionProfile: u(+-L) must vanish");
  if (bc_ == BcMode::clamped &&
      (std::abs(du_.front()) > kBcTol || std::abs(du_.back()) > kBcTol))
    throw std::invalid_argument(
        "DeflectionProfile: clamped profile needs du(+-L) = 0");
  for (double v : u_) {
    if (!(v >= gap_floor_))
      throw std::domain_error(
          "DeflectionProfile: nodal value " + std::to_string(v) +
          " below gap floor " + std::to_string(gap_floor_));
  }
}

DeflectionProfile DeflectionProfile::flat(double L, int n_cells,
                                          double gap_floor, BcMode bc) {
  if (n_cells < 1) throw std::invalid_argument("DeflectionProfile: n_cells < 1");
  std::vector<double> x(n_cells + 1), v(n_cells + 1, 0.0), s(n_cells + 1, 0.0);
  const double h = 2.0 * L / n_cells;
  for (int i = 0; i <= n_cells; ++i) x[i] = -L + i * h;
  x.back() = L;
  return DeflectionProfile(std::move(x), std::move(v), std::move(s), L,
                           gap_floor, bc);
}

DeflectionProfile DeflectionProfile::from_function(const Fn& u, const Fn& du,
                                                   double L, int n_cells,
                                                   double gap_floor, BcMode bc) {
  if (n_cells < 1) throw std::invalid_argument("DeflectionProfile: n_cells < 1");
  std::vector<double> x(n_cells + 1), v(n_cells + 1), s(n_cells + 1);
  const double h = 2.0 * L / n_cells;
  for (int i = 0; i <= n_cells; ++i) {
    x[i] = (i == n_cells) ? L : -L + i * h;
    v[i] = u(x[i]);
    s[i] = du(x[i]);
  }
  // Snap the endpoint constraints exactly; the sampled functions are
  // expected to satisfy them up to rounding.
  v.front() = v.back() = 0.0;
  if (bc == BcMode::clamped) s.front() = s.back() = 0.0;
  return DeflectionProfile(std::move(x), std::move(v), std::move(s), L,
                           gap_floor, bc);
}

DeflectionProfile DeflectionProfile::from_coefficients(
    const std::vector<double>& dofs, double L, double gap_floor, BcMode bc) {
  if (dofs.size() < 4 || dofs.size() % 2 != 0)
    throw std::invalid_argument("DeflectionProfile: bad coefficient vector");
  const int n_nodes = static_cast<int>(dofs.size()) / 2;
  std::vector<double> x(n_nodes), v(n_nodes), s(n_nodes);
  const double h = 2.0 * L / (n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) {
    x[i] = (i == n_nodes - 1) ? L : -L + i * h;
    v[i] = dofs[2 * i];
    s[i] = dofs[2 * i + 1];
  }
  return DeflectionProfile(std::move(x), std::move(v), std::move(s), L,
                           gap_floor, bc);
}

DeflectionProfile DeflectionProfile::linear_combination(
    const DeflectionProfile& u, double t, const DeflectionProfile& theta) {
  if (u.x_.size() != theta.x_.size() || u.L_ != theta.L_)
    throw std::invalid_argument("linear_combination: grids differ");
  std::vector<double> v(u.u_.size()), s(u.du_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = u.u_[i] + t * theta.u_[i];
    s[i] = u.du_[i] + t * theta.du_[i];
  }
  v.front() = v.back() = 0.0;
  if (u.bc_ == BcMode::clamped) s.front() = s.back() = 0.0;
  return DeflectionProfile(u.x_, std::move(v), std::move(s), u.L_,
                           u.gap_floor_, u.bc_);
}

int DeflectionProfile::cell_of(double x) const {
  const int n = n_cells();
  int i = static_cast<int>(std::floor((x + L_) / dx_));
  return std::clamp(i, 0, n - 1);
}

double DeflectionProfile::value(double x) const {
  const int i = cell_of(x);
  const double xi = (x - x_[i]) / dx_;
  const double c[4] = {u_[i], du_[i], u_[i + 1], du_[i + 1]};
  return hermite_combine(hermite_values(xi, dx_), c);
}

double DeflectionProfile::slope(double x) const {
  const int i = cell_of(x);
  const double xi = (x - x_[i]) / dx_;
  const double c[4] = {u_[i], du_[i], u_[i + 1], du_[i + 1]};
  return hermite_combine(hermite_d1(xi, dx_), c);
}

double DeflectionProfile::curvature(double x) const {
  const int i = cell_of(x);
  const double xi = (x - x_[i]) / dx_;
  const double c[4] = {u_[i], du_[i], u_[i + 1], du_[i + 1]};
  return hermite_combine(hermite_d2(xi, dx_), c);
}

std::vector<double> DeflectionProfile::coefficients() const {
  std::vector<double> c(2 * u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) {
    c[2 * i] = u_[i];
    c[2 * i + 1] = du_[i];
  }
  return c;
}

double DeflectionProfile::min_value() const {
  return *std::min_element(u_.begin(), u_.end());
}

bool DeflectionProfile::is_flat() const {
  for (double v : u_)
    if (v != 0.0) return false;
  for (double s : du_)
    if (s != 0.0) return false;
  return true;
}

}  // namespace mems
