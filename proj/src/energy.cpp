#include "mems/energy.hpp"

#include "mems/hermite.hpp"

namespace mems {

double mechanical_energy(const DeflectionProfile& u, const PhysicalParams& p) {
  // u'' is linear per cell and u' quadratic, so a 3-point rule is exact
  // for both squared integrands.
  const GaussRule& g3 = GaussRule::points(3);
  const double h = u.dx();
  const std::vector<double>& x = u.x_nodes();

  double bend = 0.0, stretch = 0.0;
  for (int c = 0; c < u.n_cells(); ++c) {
    for (int q = 0; q < g3.n; ++q) {
      const double xq = x[c] + g3.xi[q] * h;
      const double w = g3.w[q] * h;
      const double d1 = u.slope(xq);
      const double d2 = u.curvature(xq);
      bend += w * d2 * d2;
      stretch += w * d1 * d1;
    }
  }
  return 0.5 * p.beta * bend + (0.5 * p.tau + 0.25 * p.a * stretch) * stretch;
}

SolveContext make_context(const PhysicalParams& p, int nx, int nz1, int nz2) {
  SolveContext ctx{build_mesh(p.L, p.H, p.d, nx, nz1, nz2),
                   BoundaryData::model(p), SolverOptions{},
                   TraceMode::extrapolated};
  return ctx;
}

EnergyReport total_energy(const DeflectionProfile& u, const PhysicalParams& p,
                          const SolveContext& ctx) {
  EnergyReport r;
  r.mechanical = mechanical_energy(u, p);
  const PotentialField psi = solve_potential(u, p, ctx.mesh, ctx.bdata,
                                             ctx.solver);
  r.electrostatic = electrostatic_energy(psi, u, p);
  r.solve_info = psi.info;
  r.total = r.mechanical + r.electrostatic;
  return r;
}

}  // namespace mems
