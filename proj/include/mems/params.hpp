#pragma once

namespace mems {

// Scalar constants of the plate model. Lengths: the strip D = (-L, L),
// the ground plate sits at z = -H, the moving plate has thickness d.
// sigma1/sigma2 are the permittivities below/inside the plate and V is
// the potential applied on top of it. m is the exponent of the
// boundary-data profile zeta.
struct PhysicalParams {
  double L = 1.0;
  double H = 1.0;
  double d = 1.0;
  double beta = 1.0;    // bending stiffness, > 0
  double tau = 0.0;     // linear stretching, >= 0
  double a = 0.0;       // nonlinear stretching, >= 0
  double sigma1 = 1.0;  // > 0
  double sigma2 = 2.0;  // > 0
  double V = 1.0;       // >= 0
  double m = 3.0;       // > 2

  // Permittivity jump [[sigma]] = sigma1 - sigma2 across the interface.
  // The force density is sign-definite exactly when this is negative.
  double sigma_jump() const { return sigma1 - sigma2; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Default admissibility floor for deflections: touchdown is excluded by
// keeping a residual gap of 1e-3 * H above the ground plate.
inline double default_gap_floor(const PhysicalParams& p) {
  return -p.H + 1e-3 * p.H;
}

}  // namespace mems
