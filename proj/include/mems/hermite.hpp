#pragma once

#include <array>
#include <cstddef>

namespace mems {

// Gauss-Legendre rule on [0,1]. Nodes/weights for up to 5 points; a
// 3-point rule integrates degree 5 exactly, which covers every
// polynomial integrand arising from cubic Hermite elements.
struct GaussRule {
  int n = 0;
  std::array<double, 5> xi{};
  std::array<double, 5> w{};

  static const GaussRule& points(int n);
};

// Cubic Hermite shape functions on a cell of width h, parametrised by
// xi in [0,1]. Coefficient order per cell: (value_left, slope_left,
// value_right, slope_right) with slopes in du/dx units; the slope
// basis functions carry the factor h.
using Hermite4 = std::array<double, 4>;

inline Hermite4 hermite_values(double xi, double h) {
  const double xi2 = xi * xi, xi3 = xi2 * xi;
  return {1.0 - 3.0 * xi2 + 2.0 * xi3, h * (xi - 2.0 * xi2 + xi3),
          3.0 * xi2 - 2.0 * xi3, h * (xi3 - xi2)};
}

inline Hermite4 hermite_d1(double xi, double h) {
  const double xi2 = xi * xi;
  return {(-6.0 * xi + 6.0 * xi2) / h, 1.0 - 4.0 * xi + 3.0 * xi2,
          (6.0 * xi - 6.0 * xi2) / h, 3.0 * xi2 - 2.0 * xi};
}

inline Hermite4 hermite_d2(double xi, double h) {
  return {(-6.0 + 12.0 * xi) / (h * h), (-4.0 + 6.0 * xi) / h,
          (6.0 - 12.0 * xi) / (h * h), (-2.0 + 6.0 * xi) / h};
}

inline double hermite_combine(const Hermite4& basis, const double* coeff) {
  return basis[0] * coeff[0] + basis[1] * coeff[1] + basis[2] * coeff[2] +
         basis[3] * coeff[3];
}

}  // namespace mems
