#pragma once

#include <vector>

#include "mems/deflection.hpp"
#include "mems/params.hpp"
#include "mems/potential.hpp"
#include "mems/traces.hpp"

namespace mems {

// Electrostatic force density along the plate, sampled at the trace
// abscissae, with the three summands kept separately:
//   term_tang  = -[[sigma]] / (2 (1+u'^2)) * (dx psi2 + u' dz psi2)^2
//   term_norm  = -[[sigma]] sigma2 / (2 sigma1 (1+u'^2))
//                                  * (u' dx psi2 - dz psi2)^2
//   term_top   = (sigma2 / 2) |grad psi2|^2 at z = u + d
// all evaluated from the upper side. When sigma2 > sigma1 each summand
// is nonnegative.
struct ForceProfile {
  std::vector<double> x;
  std::vector<double> g;
  std::vector<double> term_tang;
  std::vector<double> term_norm;
  std::vector<double> term_top;
  // Column edges matching x, for piecewise-constant integration.
  std::vector<double> breaks;

  double min() const;
  double max() const;
};

ForceProfile electrostatic_force(const TraceData& traces,
                                 const DeflectionProfile& u,
                                 const PhysicalParams& p);

// Pre-simplification force form built from both one-sided traces:
//   -1/2 [[sigma (dx psi)^2 - sigma (dz psi)^2]]
//   - u' [[sigma dx psi dz psi]] + (sigma2/2) |grad psi2|^2 at the top,
// with [[q]] = q_lower - q_upper on the interface. Coincides with the
// one-sided form up to the interface jump residuals.
ForceProfile electrostatic_force_two_sided(const TraceData& traces,
                                           const DeflectionProfile& u,
                                           const PhysicalParams& p);

// L2-in-x norms of the discrete interface jumps of F = dx psi + u' dz psi
// and sigma G = sigma (dz psi - u' dx psi), plus the residuals of the
// three quadratic jump identities they imply:
//   [[sigma F^2]] = [[sigma]] F2^2,  [[sigma F G]] = 0,
//   [[sigma G^2]] = [[1/sigma]] sigma2^2 G2^2.
struct JumpResiduals {
  double jump_F = 0.0;
  double jump_sigmaG = 0.0;
  double quad_F = 0.0;
  double quad_FG = 0.0;
  double quad_G = 0.0;
};

JumpResiduals jump_residuals(const PotentialField& psi,
                             const DeflectionProfile& u,
                             const PhysicalParams& p,
                             TraceMode mode = TraceMode::cell_center);

JumpResiduals jump_residuals_from_traces(const TraceData& traces,
                                         const DeflectionProfile& u,
                                         const PhysicalParams& p);

}  // namespace mems
