#pragma once

#include <vector>

#include "mems/assemble.hpp"
#include "mems/boundary.hpp"
#include "mems/deflection.hpp"
#include "mems/mesh.hpp"
#include "mems/params.hpp"
#include "mems/sparse.hpp"

namespace mems {

// Nodal values of the transformed potential psi-tilde = psi o Theta on
// the reference mesh, together with solver diagnostics.
struct PotentialField {
  MeshPtr mesh;
  std::vector<double> values;
  SolveInfo info;
};

// Solve the transmission problem for the deflection u: assemble the
// transformed coefficients on the reference rectangle, apply the
// Dirichlet data and solve. Throws DegenerateGeometryError when the
// gap under u is too small and SolverError on solver failure.
PotentialField solve_potential(const DeflectionProfile& u,
                               const PhysicalParams& p, MeshPtr mesh,
                               const BoundaryData& bdata,
                               const SolverOptions& opts = {});

// Electrostatic energy -1/2 int_{Omega(u)} sigma |grad psi|^2, computed
// on the reference domain with the assembly quadrature (so it equals
// -1/2 psi^T K psi for the assembled stiffness matrix K).
double electrostatic_energy(const PotentialField& psi,
                            const DeflectionProfile& u,
                            const PhysicalParams& p);

}  // namespace mems
