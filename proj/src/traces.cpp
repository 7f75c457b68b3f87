#include "mems/traces.hpp"

#include <stdexcept>

namespace mems {

namespace {

// Gradient of the bilinear solution at the centre of cell (ci, cj) in
// reference coordinates.
Vec2 ref_gradient_at_cell(const ReferenceMesh& mesh,
                          const std::vector<double>& psi, int ci, int cj) {
  const auto n = mesh.cell_nodes(ci, cj);
  const double dx = mesh.dx();
  const double dz = mesh.dz_row(cj);
  Vec2 g;
  g.x = ((psi[n[1]] - psi[n[0]]) + (psi[n[3]] - psi[n[2]])) / (2.0 * dx);
  g.z = ((psi[n[2]] - psi[n[0]]) + (psi[n[3]] - psi[n[1]])) / (2.0 * dz);
  return g;
}

// Physical gradient at the centre of cell (ci, cj).
Vec2 phys_gradient_at_cell(const ReferenceMesh& mesh,
                           const std::vector<double>& psi,
                           const DeflectionProfile& u, const PhysicalParams& p,
                           int ci, int cj) {
  const Vec2 gref = ref_gradient_at_cell(mesh, psi, ci, cj);
  const double xc = mesh.x_coord(ci) + 0.5 * mesh.dx();
  const double zc = mesh.z_coord(cj) + 0.5 * mesh.dz_row(cj);
  return physical_gradient(u, p, {xc, zc}, mesh.cell_region(cj), gref);
}

Vec2 extrapolate(Vec2 g1, Vec2 g2) {
  return {1.5 * g1.x - 0.5 * g2.x, 1.5 * g1.z - 0.5 * g2.z};
}

}  // namespace

TraceData extract_traces(const PotentialField& psi,
                         const DeflectionProfile& u, const PhysicalParams& p,
                         TraceMode mode) {
  const ReferenceMesh& mesh = *psi.mesh;
  if (mode == TraceMode::extrapolated && (mesh.nz1 < 2 || mesh.nz2 < 2)) {
    throw std::invalid_argument(
        "extract_traces: extrapolated mode needs at least two cell rows on "
        "each side of the interface");
  }

  TraceData t;
  t.mode = mode;
  t.x.resize(mesh.nx);
  t.grad_lower.resize(mesh.nx);
  t.grad_upper.resize(mesh.nx);
  t.grad_top.resize(mesh.nx);

  const int jl = mesh.nz1 - 1;  // cell row under the interface
  const int ju = mesh.nz1;      // cell row above the interface
  const int jt = mesh.nz() - 1;  // cell row under the top

  for (int ci = 0; ci < mesh.nx; ++ci) {
    t.x[ci] = mesh.x_coord(ci) + 0.5 * mesh.dx();
    const Vec2 lower1 = phys_gradient_at_cell(mesh, psi.values, u, p, ci, jl);
    const Vec2 upper1 = phys_gradient_at_cell(mesh, psi.values, u, p, ci, ju);
    const Vec2 top1 = phys_gradient_at_cell(mesh, psi.values, u, p, ci, jt);
    if (mode == TraceMode::cell_center) {
      t.grad_lower[ci] = lower1;
      t.grad_upper[ci] = upper1;
      t.grad_top[ci] = top1;
    } else {
      const Vec2 lower2 =
          phys_gradient_at_cell(mesh, psi.values, u, p, ci, jl - 1);
      const Vec2 upper2 =
          phys_gradient_at_cell(mesh, psi.values, u, p, ci, ju + 1);
      const Vec2 top2 = phys_gradient_at_cell(mesh, psi.values, u, p, ci, jt - 1);
      t.grad_lower[ci] = extrapolate(lower1, lower2);
      t.grad_upper[ci] = extrapolate(upper1, upper2);
      t.grad_top[ci] = extrapolate(top1, top2);
    }
  }
  return t;
}

}  // namespace mems
