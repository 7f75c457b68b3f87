#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "mems/catalogue.hpp"
#include "mems/deflection.hpp"
#include "mems/energy.hpp"
#include "mems/params.hpp"
#include "mems/verify.hpp"

using namespace mems;

TEST_CASE("loglog_slope recovers an exact power law") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 * std::pow(xi, -1.7));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.7).epsilon(1e-12));

  // Degenerate inputs give a neutral slope instead of NaN.
  CHECK(loglog_slope({4.0}, {1.0}) == 0.0);
  CHECK(loglog_slope({1.0, 2.0}, {1.0, 0.0}) == 0.0);
}

TEST_CASE("fd derivative probe validates its step ladder") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 16, 8, 8);
  const DeflectionProfile u =
      DeflectionProfile::flat(1.0, 16, default_gap_floor(p));
  const DeflectionProfile theta =
      catalogue_profile("quartic", 1.0, 1.0, 16, -2.0);

  CHECK_THROWS_AS(
      fd_directional_derivative(u, theta, p, ctx, {}, "quartic"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fd_directional_derivative(u, theta, p, ctx, {1e-2, 1e-2}, "quartic"),
      std::invalid_argument);
}

TEST_CASE("fd derivative probe names steps that leave the admissible set") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 16, 8, 8);
  const DeflectionProfile u =
      catalogue_profile("quartic", -0.9, 1.0, 16, default_gap_floor(p));
  const DeflectionProfile theta =
      catalogue_profile("quartic", -15.0, 1.0, 16, -20.0);

  try {
    fd_directional_derivative(u, theta, p, ctx, {1e-2}, "quartic");
    FAIL("expected a domain_error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("0.01") != std::string::npos);
    CHECK(msg.find("admissible") != std::string::npos);
  }
}

TEST_CASE("fd derivative probe matches the force pairing at desk scale") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u =
      DeflectionProfile::flat(1.0, 32, default_gap_floor(p));
  const DeflectionProfile theta =
      catalogue_profile("quartic", 1.0, 1.0, 32, -2.0);

  const DerivativeReport rep =
      fd_directional_derivative(u, theta, p, ctx, {1e-2, 5e-3, 2.5e-3}, "quartic");
  CHECK(rep.direction_id == "quartic");
  CHECK(rep.steps.size() == 3);
  CHECK(rep.quotients.size() == 3);
  CHECK(rep.g_pairing > 0.0);  // upward motion raises E_e when g >= 0
  CHECK(rep.mismatch_rel <= 1e-2);
}

TEST_CASE("mms ladder delivers second-order L2 and first-order H1") {
  PhysicalParams p;
  const MmsReport rep = mms_convergence(p, {8, 16, 32});
  REQUIRE(rep.levels.size() == 3);
  CHECK(rep.order_l2 >= 1.9);
  CHECK(rep.order_h1 >= 0.95);
  for (size_t k = 1; k < rep.levels.size(); ++k) {
    CHECK(rep.levels[k].err_l2 < rep.levels[k - 1].err_l2);
    CHECK(rep.levels[k].err_h1 < rep.levels[k - 1].err_h1);
    CHECK(rep.levels[k].flux_jump < rep.levels[k - 1].flux_jump);
  }

  CHECK_THROWS_AS(mms_convergence(p, {7, 14}), std::invalid_argument);
}

TEST_CASE("monotonicity probe orders twenty deterministic pairs") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const MonotonicityReport rep = monotonicity_probe(p, ctx, 1e-10);
  CHECK(rep.cases.size() == 20);
  CHECK(rep.all_ok);
  CHECK(rep.worst_violation <= 1e-10);
  for (const MonotonicityCase& c : rep.cases) CHECK(!c.label.empty());

  PhysicalParams bad = p;
  bad.sigma1 = 2.0;
  bad.sigma2 = 1.0;  // needs a negative permittivity jump
  CHECK_THROWS_AS(monotonicity_probe(bad, ctx, 1e-10), std::invalid_argument);
}

TEST_CASE("continuity probe decays linearly in the perturbation size") {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 32, 16, 16);
  const DeflectionProfile u =
      DeflectionProfile::flat(1.0, 32, default_gap_floor(p));
  const DeflectionProfile bump =
      catalogue_profile("quartic", -0.5, 1.0, 32, -2.0);

  const ContinuityReport rep = continuity_probe(u, bump, p, ctx, 5, 0.2);
  REQUIRE(rep.levels.size() == 5);
  CHECK(rep.slope_trace_l2 <= -0.9);
  CHECK(rep.slope_energy <= -0.9);
  CHECK(rep.slope_field_h1 <= -0.9);
  CHECK(rep.tail_monotone);

  // Hoelder ordering of the discrete trace norms on |D| = 2.
  const double root2 = std::sqrt(2.0);
  for (const ContinuityLevel& lvl : rep.levels) {
    CHECK(lvl.trace_l1 <= root2 * lvl.trace_l2 + 1e-12);
    CHECK(lvl.trace_l2 <= std::pow(2.0, 0.25) * lvl.trace_l4 + 1e-12);
  }

  CHECK_THROWS_AS(continuity_probe(u, bump, p, ctx, 2, 0.2),
                  std::invalid_argument);
}
