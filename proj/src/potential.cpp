#include "mems/potential.hpp"

namespace mems {

PotentialField solve_potential(const DeflectionProfile& u,
                               const PhysicalParams& p, MeshPtr mesh,
                               const BoundaryData& bdata,
                               const SolverOptions& opts) {
  const std::vector<QuadPoint> qpts = cell_gauss_points(*mesh);
  const CoefficientField field(u, p, qpts);
  const SparseSystem sys = assemble_system(*mesh, field, bdata, u);

  PotentialField out;
  out.mesh = mesh;
  out.values = solve_system(sys, opts, &out.info);
  return out;
}

double electrostatic_energy(const PotentialField& psi,
                            const DeflectionProfile& u,
                            const PhysicalParams& p) {
  const ReferenceMesh& mesh = *psi.mesh;
  const std::vector<QuadPoint> qpts = cell_gauss_points(mesh);
  const CoefficientField field(u, p, qpts);
  return -0.5 * stiffness_energy(mesh, field, psi.values);
}

}  // namespace mems
