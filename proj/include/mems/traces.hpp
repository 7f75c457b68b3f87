#pragma once

#include <vector>

#include "mems/potential.hpp"
#include "mems/transform.hpp"

namespace mems {

// How one-sided boundary gradients are recovered from the Q1 solution.
//   cell_center:  gradient at the centre of the cell row touching the
//                 face (first-order accurate on the face).
//   extrapolated: linear extrapolation from the first two cell-row
//                 centres onto the face, 1.5 g1 - 0.5 g2 (second order).
enum class TraceMode { cell_center, extrapolated };

// One-sided physical gradients of the potential along the interface
// z = u(x) (from below and above) and along the plate top z = u(x)+d
// (from below), sampled at the nx cell-centre abscissae.
struct TraceData {
  std::vector<double> x;
  std::vector<Vec2> grad_lower;
  std::vector<Vec2> grad_upper;
  std::vector<Vec2> grad_top;
  TraceMode mode = TraceMode::cell_center;
};

TraceData extract_traces(const PotentialField& psi,
                         const DeflectionProfile& u, const PhysicalParams& p,
                         TraceMode mode = TraceMode::cell_center);

}  // namespace mems
