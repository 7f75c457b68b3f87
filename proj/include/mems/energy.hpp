#pragma once

#include "mems/boundary.hpp"
#include "mems/deflection.hpp"
#include "mems/params.hpp"
#include "mems/potential.hpp"
#include "mems/traces.hpp"

namespace mems {

struct EnergyReport {
  double mechanical = 0.0;
  double electrostatic = 0.0;
  double penalty = 0.0;  // obstacle / coercivity-cap contributions
  double total = 0.0;    // mechanical + electrostatic + penalty
  SolveInfo solve_info;
};

// E_m = (beta/2) ||u''||^2 + (tau/2 + (a/4) ||u'||^2) ||u'||^2,
// integrated cell by cell with Gauss rules exact for the cubic
// representation.
double mechanical_energy(const DeflectionProfile& u, const PhysicalParams& p);

// Everything a repeated energy/gradient evaluation needs besides the
// deflection: the reference mesh, the boundary data and solver knobs.
struct SolveContext {
  MeshPtr mesh;
  BoundaryData bdata;
  SolverOptions solver;
  TraceMode trace_mode = TraceMode::extrapolated;
};

SolveContext make_context(const PhysicalParams& p, int nx, int nz1, int nz2);

// One potential solve; fills mechanical, electrostatic and total
// (penalty stays 0 here -- the minimizer adds its own terms).
EnergyReport total_energy(const DeflectionProfile& u, const PhysicalParams& p,
                          const SolveContext& ctx);

}  // namespace mems
