#pragma once

#include <string>
#include <vector>

#include "mems/deflection.hpp"

namespace mems {

// Deterministic catalogue of clamped shapes used by the perturbation
// and monotonicity probes: every shape vanishes together with its
// derivative at x = +-L; listed ids:
//   quartic  (1-s^2)^2          nonnegative, symmetric
//   sextic   (1-s^2)^3          nonnegative, symmetric
//   plateau  (1-s^2)^4          nonnegative, flat top
//   tilted   (1-s^2)^2 (1+s/2)  nonnegative, asymmetric
//   asym     s (1-s^2)^2        sign-changing, antisymmetric
//   wiggle   (1-s^2)^2 sin(2 pi s)  sign-changing
// with s = x / L. The profile is the Hermite interpolant of
// amplitude * shape on the given grid.
std::vector<std::string> catalogue_ids();

// Shapes that are nonnegative pointwise (usable for ordered pairs).
std::vector<std::string> catalogue_nonnegative_ids();

DeflectionProfile catalogue_profile(const std::string& id, double amplitude,
                                    double L, int n_cells, double gap_floor,
                                    BcMode bc = BcMode::clamped);

}  // namespace mems
