#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "mems/catalogue.hpp"
#include "mems/deflection.hpp"
#include "mems/energy.hpp"
#include "mems/hermite_space.hpp"
#include "mems/minimize.hpp"
#include "mems/params.hpp"

using namespace mems;

namespace {

double pair_with(const std::vector<double>& G, const DeflectionProfile& theta) {
  const std::vector<double> t = theta.coefficients();
  double acc = 0.0;
  for (size_t i = 0; i < G.size(); ++i) acc += G[i] * t[i];
  return acc;
}

double sup_distance(const DeflectionProfile& a, const DeflectionProfile& b,
                    int samples = 513) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -a.L() + 2.0 * a.L() * i / (samples - 1);
    worst = std::max(worst, std::abs(a.value(x) - b.value(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("energy gradient matches richardson finite differences") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u =
      catalogue_profile("quartic", -0.12, 1.0, 32, default_gap_floor(p));
  const DeflectionProfile theta =
      catalogue_profile("sextic", 0.07, 1.0, 32, -2.0);

  const double pairing = pair_with(energy_gradient(u, p, ctx), theta);

  auto energy_at = [&](double t) {
    return total_energy(DeflectionProfile::linear_combination(u, t, theta), p,
                        ctx)
        .total;
  };
  const double t1 = 1e-3, t2 = 5e-4;
  const double q1 = (energy_at(t1) - energy_at(-t1)) / (2.0 * t1);
  const double q2 = (energy_at(t2) - energy_at(-t2)) / (2.0 * t2);
  const double fd = (4.0 * q2 - q1) / 3.0;

  CHECK(std::abs(fd - pairing) <= 1e-8 * std::abs(pairing));
}

TEST_CASE("zero voltage: zero gradient, zero vi, trivial minimizer") {
  PhysicalParams p;
  p.V = 0.0;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u0 =
      DeflectionProfile::flat(1.0, 32, default_gap_floor(p));

  for (double g : energy_gradient(u0, p, ctx)) CHECK(g == 0.0);
  CHECK(vi_residual(u0, p, ctx) == 0.0);

  const MinimizationState st =
      minimize_total_energy(p, MinimizeConfig{}, u0, ctx);
  CHECK(st.converged);
  CHECK(st.iterations == 0);
  CHECK(st.message == "converged");
  CHECK(st.u.is_flat());
  CHECK(st.energy.total == 0.0);
}

TEST_CASE("gradient pairing with upward directions is positive") {
  // sigma2 > sigma1 makes g >= 0, so moving the plate up raises the
  // electrostatic energy: <grad E, theta> = int g theta > 0 for
  // nonnegative directions at the flat state.
  PhysicalParams p;
  p.V = 0.5;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u0 =
      DeflectionProfile::flat(1.0, 32, default_gap_floor(p));
  const std::vector<double> G = energy_gradient(u0, p, ctx);

  for (const char* id : {"quartic", "sextic", "tilted"})
    CHECK(pair_with(G, catalogue_profile(id, 1.0, 1.0, 32, -2.0)) > 0.0);
}

TEST_CASE("minimizer converges with monotone energy and stays feasible") {
  PhysicalParams p;
  p.V = 0.5;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const double floor = default_gap_floor(p);
  const DeflectionProfile u0 = DeflectionProfile::flat(1.0, 32, floor);

  const MinimizationState st =
      minimize_total_energy(p, MinimizeConfig{}, u0, ctx);
  REQUIRE(st.converged);
  CHECK(st.vi_residual <= 1e-8);
  CHECK(st.iterations <= 30);

  REQUIRE(st.history.size() >= 2);
  for (size_t k = 1; k < st.history.size(); ++k)
    CHECK(st.history[k].e_total <= st.history[k - 1].e_total + 1e-12);
  for (const IterationRecord& row : st.history)
    CHECK(row.min_u >= floor - 1e-12);

  // Negative-jump sign property: the minimizer hangs below zero.
  CHECK(*std::max_element(st.u.u_values().begin(), st.u.u_values().end()) <=
        1e-12);
  CHECK(st.u.min_value() < 0.0);

  // Recomputing the stationarity measure reproduces the converged one.
  CHECK(vi_residual(st.u, p, ctx) <= 1e-8);

  // Perturbing an interior coefficient breaks stationarity.
  const HermiteSpace space(1.0, 32, BcMode::clamped);
  std::vector<double> d = st.u.coefficients();
  d[space.n_dofs() / 2] += 1e-3;
  const DeflectionProfile moved = space.make_profile(d, floor);
  CHECK(vi_residual(moved, p, ctx) > 100.0 * std::max(st.vi_residual, 1e-10));
}

TEST_CASE("small-voltage minimizer matches the linearized bending solve") {
  // At V = 0.2 the deflection is ~2e-3, so u* should agree with the
  // solution of (beta Kb) w = -grad E_e(0) to a few percent.
  PhysicalParams p;
  p.V = 0.2;
  const SolveContext ctx = make_context(p, 64, 32, 32);
  const double floor = default_gap_floor(p);
  const DeflectionProfile u0 = DeflectionProfile::flat(1.0, 64, floor);

  const MinimizationState st =
      minimize_total_energy(p, MinimizeConfig{}, u0, ctx);
  REQUIRE(st.converged);

  const HermiteSpace space(1.0, 64, BcMode::clamped);
  std::vector<double> rhs = energy_gradient(u0, p, ctx);
  for (double& v : rhs) v = -v;
  BandMatrix M = space.bending();
  for (double& v : M.data) v *= p.beta;
  M = space.constrained_copy(M);
  M.cholesky_factor();
  M.cholesky_solve(rhs);
  const DeflectionProfile w = space.make_profile(rhs, floor);

  CHECK(w.min_value() < -1e-4);
  CHECK(std::abs(st.u.min_value() - w.min_value()) <=
        0.05 * std::abs(w.min_value()));
  CHECK(sup_distance(st.u, w) <= 0.05 * std::abs(w.min_value()));
}

TEST_CASE("projection and penalty agree without contact") {
  PhysicalParams p;
  p.V = 0.5;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u0 =
      DeflectionProfile::flat(1.0, 32, default_gap_floor(p));

  MinimizeConfig proj;
  MinimizeConfig pen;
  pen.obstacle = MinimizeConfig::Obstacle::penalty;
  const MinimizationState a = minimize_total_energy(p, proj, u0, ctx);
  const MinimizationState b = minimize_total_energy(p, pen, u0, ctx);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(!a.obstacle_contact);

  const std::vector<double> da = a.u.coefficients();
  const std::vector<double> db = b.u.coefficients();
  for (size_t i = 0; i < da.size(); ++i)
    CHECK(std::abs(da[i] - db[i]) <= 1e-12);
}

TEST_CASE("obstacle contact: projection pins nodes, penalty cross-validates") {
  PhysicalParams p;  // V = 1 against a raised floor forces contact
  const SolveContext ctx = make_context(p, 64, 32, 32);
  const double floor = -0.03;
  const DeflectionProfile u0 = DeflectionProfile::flat(1.0, 64, floor);

  MinimizeConfig proj;
  const MinimizationState a = minimize_total_energy(p, proj, u0, ctx);
  REQUIRE(a.converged);
  CHECK(a.obstacle_contact);
  CHECK(!a.active_set.empty());
  CHECK(a.u.min_value() >= floor - 1e-12);
  CHECK(a.u.min_value() <= floor + 1e-9);

  MinimizeConfig pen;
  pen.obstacle = MinimizeConfig::Obstacle::penalty;
  const MinimizationState b = minimize_total_energy(p, pen, u0, ctx);
  REQUIRE(b.converged);
  // Finite weight leaves an O(load / weight) floor violation.
  CHECK(b.u.min_value() >= floor - 1e-4);
  CHECK(sup_distance(a.u, b.u) <= 1e-4);
}

TEST_CASE("coercivity precondition: a = 0 with nonnegative jump needs the cap") {
  PhysicalParams p;
  p.sigma1 = 2.0;
  p.sigma2 = 1.0;  // jump > 0: force can point upward
  p.V = 0.5;
  const SolveContext ctx = make_context(p, 16, 8, 8);
  const DeflectionProfile u0 =
      DeflectionProfile::flat(1.0, 16, default_gap_floor(p));

  CHECK_THROWS_AS(minimize_total_energy(p, MinimizeConfig{}, u0, ctx),
                  std::invalid_argument);

  // Either stretching coercivity or the cap restores well-posedness.
  PhysicalParams pa = p;
  pa.a = 1.0;
  const MinimizationState sa =
      minimize_total_energy(pa, MinimizeConfig{}, u0, ctx);
  CHECK(sa.converged);
  CHECK(sa.u.min_value() >= default_gap_floor(pa) - 1e-12);

  MinimizeConfig capped;
  capped.cap_enabled = true;
  capped.cap_bound = 0.5;
  const MinimizationState sc = minimize_total_energy(p, capped, u0, ctx);
  CHECK(sc.converged);
  CHECK(*std::max_element(sc.u.u_values().begin(), sc.u.u_values().end()) <
        capped.cap_bound);
  CHECK(sc.energy.penalty == 0.0);
}
