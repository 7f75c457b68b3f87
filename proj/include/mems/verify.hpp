#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mems/energy.hpp"
#include "mems/force.hpp"
#include "mems/minimize.hpp"

namespace mems {

// ---------------------------------------------------------------------------
// Finite-difference check of the electrostatic shape derivative:
// central quotients of E_e at u +- t theta, Richardson-extrapolated,
// against the force pairing int g(u) theta dx.
struct DerivativeReport {
  std::string direction_id;
  std::vector<double> steps;
  std::vector<double> quotients;  // central FD per step
  double fd_extrapolated = 0.0;
  double g_pairing = 0.0;
  // |fd - pairing| relative to max(|fd|, |pairing|), floored at
  // 1e-9 * max(1, |E_e|) so that directions with vanishing derivative
  // are judged against FD roundoff scale instead of 0/0.
  double mismatch_rel = 0.0;
};

DerivativeReport fd_directional_derivative(
    const DeflectionProfile& u, const DeflectionProfile& theta,
    const PhysicalParams& p, const SolveContext& ctx,
    const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3},
    const std::string& direction_id = "");

// ---------------------------------------------------------------------------
// Manufactured transmission solution on the flat state: piecewise
// harmonic, continuous with continuous flux across z = 0, imposed as
// custom Dirichlet data. Reports discretization error norms per mesh
// level and least-squares convergence orders.
struct MmsLevel {
  int nx = 0;
  double err_l2 = 0.0;
  double err_h1 = 0.0;
  double flux_jump = 0.0;  // L2-in-x interface jump sigma dz(psi_h)
};

struct MmsReport {
  std::vector<MmsLevel> levels;
  double order_l2 = 0.0;
  double order_h1 = 0.0;
};

MmsReport mms_convergence(const PhysicalParams& p,
                          const std::vector<int>& ladder = {16, 32, 64, 128});

// ---------------------------------------------------------------------------
// Energy monotonicity along ordered deflections (requires jump < 0,
// i.e. sigma2 > sigma1): E_e(u0) <= E_e(u1) + tol whenever u0 <= u1.
struct MonotonicityCase {
  std::string label;
  double e_lower = 0.0;  // E_e(u0)
  double e_upper = 0.0;  // E_e(u1)
  bool ok = false;
};

struct MonotonicityReport {
  std::vector<MonotonicityCase> cases;
  bool all_ok = false;
  // max of E_e(u0) - E_e(u1) over cases; negative = margin, positive =
  // violation of the ordering.
  double worst_violation = -std::numeric_limits<double>::infinity();
};

// Twenty deterministic nonnegative-gap pairs built from the catalogue.
MonotonicityReport monotonicity_probe(const PhysicalParams& p,
                                      const SolveContext& ctx,
                                      double tol = 1e-10);

// ---------------------------------------------------------------------------
// Continuity of the solution map: along u_n = u + (delta0/n) bump the
// trace distances, the energy gap and the transformed-field H1 distance
// must decay like 1/n; slopes are least-squares fits of log(dist)
// against log(n).
struct ContinuityLevel {
  double delta = 0.0;
  double trace_l1 = 0.0;  // interface upper-trace distances
  double trace_l2 = 0.0;
  double trace_l4 = 0.0;
  double top_l2 = 0.0;
  double energy_gap = 0.0;
  double field_h1 = 0.0;
};

struct ContinuityReport {
  std::vector<ContinuityLevel> levels;
  double slope_trace_l2 = 0.0;
  double slope_energy = 0.0;
  double slope_field_h1 = 0.0;
  bool tail_monotone = false;
};

ContinuityReport continuity_probe(const DeflectionProfile& u,
                                  const DeflectionProfile& bump,
                                  const PhysicalParams& p,
                                  const SolveContext& ctx, int n_levels = 8,
                                  double delta0 = 0.2);

// Least-squares slope of log(y) against log(x); helper shared by the
// probes and the acceptance suite.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mems
