#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "mems/assemble.hpp"
#include "mems/boundary.hpp"
#include "mems/catalogue.hpp"
#include "mems/deflection.hpp"
#include "mems/mesh.hpp"
#include "mems/params.hpp"
#include "mems/potential.hpp"

using namespace mems;

namespace {

// Layered one-dimensional solution for the flat plate: constant
// vertical flux through both media makes the potential piecewise
// linear in z with slope flux/sigma per layer.
BoundaryData layered_boundary(const PhysicalParams& p) {
  const double flux = p.V / (p.H / p.sigma1 + p.d / p.sigma2);
  return BoundaryData::custom(p, [p, flux](double, double zbar) {
    if (zbar <= 0.0) return flux * (zbar + p.H) / p.sigma1;
    return flux * p.H / p.sigma1 + flux * zbar / p.sigma2;
  });
}

double layered_value(const PhysicalParams& p, double z) {
  const double flux = p.V / (p.H / p.sigma1 + p.d / p.sigma2);
  if (z <= 0.0) return flux * (z + p.H) / p.sigma1;
  return flux * p.H / p.sigma1 + flux * z / p.sigma2;
}

}  // namespace

TEST_CASE("layered oracle: nodal exactness and E_e = -2/3") {
  PhysicalParams p;  // L = H = d = 1, sigma1 = 1, sigma2 = 2, V = 1
  const DeflectionProfile u = DeflectionProfile::flat(1.0, 32, -0.999);
  const MeshPtr mesh = build_mesh(p.L, p.H, p.d, 32, 16, 16);

  SolverOptions opts;
  opts.kind = SolverOptions::Kind::cholesky;
  const PotentialField psi =
      solve_potential(u, p, mesh, layered_boundary(p), opts);
  REQUIRE(psi.info.converged);

  // Piecewise linear in z with the interface on a mesh line: the Q1
  // space contains the exact solution, so nodes match to solver
  // precision.
  const int cols = mesh->nx + 1;
  double worst = 0.0;
  for (int n = 0; n < mesh->num_nodes(); ++n) {
    const double z = mesh->z_coord(n / cols);
    worst = std::max(worst, std::abs(psi.values[n] - layered_value(p, z)));
  }
  CHECK(worst <= 1e-11);

  // Flux matching gives E_e = -1/2 (sigma1 (2/3)^2 + sigma2 (1/3)^2) * 2
  // = -2/3 for the default constants.
  CHECK(electrostatic_energy(psi, u, p) ==
        doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("discrete maximum principle holds on flat and curved states") {
  PhysicalParams p;
  const BoundaryData bdata = BoundaryData::model(p);
  const MeshPtr mesh = build_mesh(p.L, p.H, p.d, 32, 16, 16);

  for (double amp : {0.0, -0.25}) {
    const DeflectionProfile u =
        amp == 0.0 ? DeflectionProfile::flat(1.0, 32, -0.999)
                   : catalogue_profile("quartic", amp, 1.0, 32, -0.999);
    const PotentialField psi = solve_potential(u, p, mesh, bdata);
    REQUIRE(psi.info.converged);
    const auto [lo, hi] = std::minmax_element(psi.values.begin(),
                                              psi.values.end());
    CHECK(*lo >= -1e-13);
    CHECK(*hi <= p.V + 1e-13);
  }
}

TEST_CASE("dirichlet rows carry the boundary data exactly") {
  PhysicalParams p;
  const BoundaryData bdata = BoundaryData::model(p);
  const DeflectionProfile u =
      catalogue_profile("sextic", -0.15, 1.0, 16, -0.999);
  const MeshPtr mesh = build_mesh(p.L, p.H, p.d, 16, 8, 8);

  const PotentialField psi = solve_potential(u, p, mesh, bdata);
  const std::vector<double> data = dirichlet_values(*mesh, bdata, u);
  for (int n = 0; n < mesh->num_nodes(); ++n)
    if (mesh->is_boundary(n)) CHECK(psi.values[n] == data[n]);
}

TEST_CASE("automatic solver kind picks the direct branch on small systems") {
  PhysicalParams p;
  const DeflectionProfile u = DeflectionProfile::flat(1.0, 8, -0.999);
  const MeshPtr mesh = build_mesh(p.L, p.H, p.d, 8, 4, 4);
  const BoundaryData bdata = BoundaryData::model(p);

  const PotentialField direct = solve_potential(u, p, mesh, bdata);
  CHECK(direct.info.method == "cholesky");

  SolverOptions opts;
  opts.direct_limit = 10;  // force the iterative branch
  const PotentialField iterative = solve_potential(u, p, mesh, bdata, opts);
  CHECK(iterative.info.method == "cg");
  CHECK(iterative.info.converged);
  CHECK(iterative.info.rel_residual <= opts.cg_tol);
}

TEST_CASE("zero voltage yields the zero potential") {
  PhysicalParams p;
  p.V = 0.0;
  const DeflectionProfile u =
      catalogue_profile("quartic", -0.2, 1.0, 16, -0.999);
  const MeshPtr mesh = build_mesh(p.L, p.H, p.d, 16, 8, 8);
  const PotentialField psi = solve_potential(u, p, mesh, BoundaryData::model(p));
  for (double v : psi.values) CHECK(v == 0.0);
  CHECK(electrostatic_energy(psi, u, p) == 0.0);
}
