// Acceptance suite: end-to-end checks of the solver against closed-form
// oracles and the analytic identities the discretization must reproduce.
// Each criterion prints one PASS/FAIL line with its measured margins;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mems/catalogue.hpp"
#include "mems/energy.hpp"
#include "mems/force.hpp"
#include "mems/minimize.hpp"
#include "mems/potential.hpp"
#include "mems/traces.hpp"
#include "mems/verify.hpp"

using namespace mems;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// L2-in-x distance between two force profiles on the same breaks.
double force_l2_distance(const ForceProfile& a, const ForceProfile& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.g.size(); ++i) {
    const double w = a.breaks[i + 1] - a.breaks[i];
    const double d = a.g[i] - b.g[i];
    s += w * d * d;
  }
  return std::sqrt(s);
}

// 1. Two-layer stack with a closed-form potential: the discrete solution
// must reproduce the exact nodal values and the exact field energy.
Outcome layered_oracle(double budget_s) {
  const auto t0 = Clock::now();
  PhysicalParams p;
  const double flux = p.V / (p.H / p.sigma1 + p.d / p.sigma2);
  const auto exact = [&p, flux](double zbar) {
    return zbar <= 0.0 ? flux * (zbar + p.H) / p.sigma1
                       : flux * p.H / p.sigma1 + flux * zbar / p.sigma2;
  };

  SolveContext ctx{build_mesh(p.L, p.H, p.d, 128, 64, 64),
                   BoundaryData::custom(
                       p, [exact](double, double zbar) { return exact(zbar); }),
                   SolverOptions{}, TraceMode::extrapolated};
  const DeflectionProfile u =
      DeflectionProfile::flat(p.L, 128, default_gap_floor(p));
  const PotentialField psi =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);

  double nodal = 0.0;
  for (int j = 0; j <= ctx.mesh->nz(); ++j) {
    const double ref = exact(ctx.mesh->z_coord(j));
    for (int i = 0; i <= ctx.mesh->nx; ++i) {
      nodal = std::max(
          nodal, std::abs(psi.values[ctx.mesh->node_id(i, j)] - ref));
    }
  }

  const double e = electrostatic_energy(psi, u, p);
  const double e_exact = -flux * p.V * p.L;  // = -2/3 at the defaults
  const double e_rel = std::abs(e - e_exact) / std::abs(e_exact);
  const double secs = seconds_since(t0);

  Outcome o;
  o.pass = e_rel <= 1e-3 && nodal <= 1e-9 && secs < budget_s;
  o.detail = "energy rel " + fmt(e_rel) + " (tol 1e-3), nodal " + fmt(nodal) +
             " (tol 1e-9)";
  return o;
}

// 2. Manufactured piecewise-harmonic solution: L2 order >= 1.9 and
// H1 order >= 0.9 across the mesh ladder.
Outcome manufactured_orders(double budget_s) {
  const auto t0 = Clock::now();
  PhysicalParams p;
  const MmsReport rep = mms_convergence(p, {16, 32, 64, 128});
  const double secs = seconds_since(t0);

  Outcome o;
  o.pass = rep.order_l2 >= 1.9 && rep.order_h1 >= 0.9 && secs < budget_s;
  o.detail = "L2 order " + fmt(rep.order_l2) + " (min 1.9), H1 order " +
             fmt(rep.order_h1) + " (min 0.9)";
  return o;
}

// 3. Richardson finite differences of the field energy against the
// assembled force pairing, for every catalogue direction at the flat
// state and at a curved state.
Outcome shape_derivative() {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 128, 64, 64);
  const double floor = default_gap_floor(p);

  std::vector<std::pair<std::string, DeflectionProfile>> states;
  states.emplace_back("flat", DeflectionProfile::flat(p.L, 128, floor));
  states.emplace_back("curved",
                      catalogue_profile("quartic", -0.15, p.L, 128, floor));

  double worst = 0.0;
  std::string worst_id = "-";
  int count = 0;
  for (const auto& [state, u] : states) {
    for (const std::string& id : catalogue_ids()) {
      const DeflectionProfile theta =
          catalogue_profile(id, 0.1, p.L, 128, floor);
      const DerivativeReport rep =
          fd_directional_derivative(u, theta, p, ctx, {1e-2, 5e-3, 2.5e-3}, id);
      ++count;
      if (rep.mismatch_rel > worst) {
        worst = rep.mismatch_rel;
        worst_id = state + "/" + id;
      }
    }
  }

  Outcome o;
  o.pass = worst <= 1e-2;
  o.detail = std::to_string(count) + " directions, worst rel mismatch " +
             fmt(worst) + " at " + worst_id + " (tol 1e-2)";
  return o;
}

// 4. Interface-trace consistency: the discrete jumps of F and sigma G
// vanish at first order under refinement, and the two force forms agree
// within the bound implied by the quadratic jump residuals.
Outcome jump_consistency() {
  PhysicalParams p;
  const double floor = default_gap_floor(p);

  std::vector<double> ns, jf, jg;
  for (int nx : {16, 32, 64, 128}) {
    const SolveContext ctx = make_context(p, nx, nx / 2, nx / 2);
    const DeflectionProfile u =
        catalogue_profile("quartic", -0.2, p.L, nx, floor);
    const PotentialField psi =
        solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
    const JumpResiduals jr =
        jump_residuals(psi, u, p, TraceMode::cell_center);
    ns.push_back(nx);
    jf.push_back(jr.jump_F);
    jg.push_back(jr.jump_sigmaG);
  }
  const double order_f = -loglog_slope(ns, jf);
  const double order_g = -loglog_slope(ns, jg);

  // Force-form agreement on the finest mesh, both trace recoveries.
  const SolveContext ctx = make_context(p, 128, 64, 64);
  const DeflectionProfile u =
      catalogue_profile("quartic", -0.2, p.L, 128, floor);
  const PotentialField psi =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);

  bool agree = true;
  double worst_ratio = 0.0;
  for (TraceMode mode : {TraceMode::cell_center, TraceMode::extrapolated}) {
    const TraceData traces = extract_traces(psi, u, p, mode);
    const ForceProfile one_sided = electrostatic_force(traces, u, p);
    const ForceProfile two_sided =
        electrostatic_force_two_sided(traces, u, p);
    const JumpResiduals jr = jump_residuals_from_traces(traces, u, p);
    double max_slope = 0.0;
    for (double x : traces.x) max_slope = std::max(max_slope, std::abs(u.slope(x)));
    const double bound =
        0.5 * (jr.quad_F + jr.quad_G) + max_slope * jr.quad_FG;
    const double dist = force_l2_distance(one_sided, two_sided);
    agree = agree && dist <= bound;
    worst_ratio = std::max(worst_ratio, dist / bound);
  }

  Outcome o;
  o.pass = order_f >= 0.9 && order_g >= 0.9 && agree;
  o.detail = "jump orders " + fmt(order_f) + "/" + fmt(order_g) +
             " (min 0.9), force-form distance/bound " + fmt(worst_ratio) +
             " (max 1)";
  return o;
}

// 5. With sigma2 > sigma1 the force density is nonnegative sample by
// sample, and every converged minimizer stays at or below the flat state.
Outcome force_sign_and_flat_limit() {
  const double floor_amp[] = {-0.15, -0.1, -0.12, 0.05, -0.05};
  const char* shapes[] = {"quartic", "sextic", "tilted", "wiggle", "wiggle"};

  double min_g = 0.0;
  for (double V : {0.5, 1.0}) {
    PhysicalParams p;
    p.V = V;
    const SolveContext ctx = make_context(p, 64, 32, 32);
    const double floor = default_gap_floor(p);

    std::vector<DeflectionProfile> us;
    us.push_back(DeflectionProfile::flat(p.L, 64, floor));
    for (int k = 0; k < 5; ++k)
      us.push_back(catalogue_profile(shapes[k], floor_amp[k], p.L, 64, floor));

    for (const DeflectionProfile& u : us) {
      const PotentialField psi =
          solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
      for (TraceMode mode :
           {TraceMode::cell_center, TraceMode::extrapolated}) {
        const TraceData traces = extract_traces(psi, u, p, mode);
        min_g = std::min(min_g, electrostatic_force(traces, u, p).min());
      }
    }
  }

  bool all_converged = true;
  double worst_max = -1.0;
  for (double V : {0.2, 0.5, 1.0}) {
    PhysicalParams p;
    p.V = V;
    const SolveContext ctx = make_context(p, 64, 32, 32);
    const DeflectionProfile u0 =
        DeflectionProfile::flat(p.L, 64, default_gap_floor(p));
    const MinimizationState st =
        minimize_total_energy(p, MinimizeConfig{}, u0, ctx);
    all_converged = all_converged && st.converged;
    for (double v : st.u.u_values()) worst_max = std::max(worst_max, v);
  }

  Outcome o;
  o.pass = min_g >= -1e-12 && all_converged && worst_max <= 1e-8;
  o.detail = "min force sample " + fmt(min_g) +
             " (min -1e-12), max minimizer node " + fmt(worst_max) +
             " (max 1e-8)";
  return o;
}

// 6. Field-energy monotonicity along ordered deflection pairs.
Outcome energy_monotonicity() {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 64, 32, 32);
  const MonotonicityReport rep = monotonicity_probe(p, ctx, 1e-10);

  Outcome o;
  o.pass = rep.all_ok && rep.cases.size() == 20;
  o.detail = std::to_string(rep.cases.size()) + " pairs, worst gap " +
             fmt(rep.worst_violation) + " (tol 1e-10)";
  return o;
}

// 7. Obstacle minimizer: converged stationarity, non-increasing and
// feasible iterates, and mesh-refinement stability of the minimizer.
Outcome minimizer_convergence(double budget_s) {
  bool pass = true;
  std::ostringstream detail;
  detail << "sup(h vs h/2): ";
  for (double V : {0.2, 0.5, 1.0}) {
    const auto t0 = Clock::now();
    PhysicalParams p;
    p.V = V;
    const double floor = default_gap_floor(p);

    const SolveContext coarse = make_context(p, 64, 32, 32);
    const MinimizationState a = minimize_total_energy(
        p, MinimizeConfig{}, DeflectionProfile::flat(p.L, 64, floor), coarse);
    const SolveContext fine = make_context(p, 128, 64, 64);
    const MinimizationState b = minimize_total_energy(
        p, MinimizeConfig{}, DeflectionProfile::flat(p.L, 128, floor), fine);

    bool monotone = true;
    bool feasible = true;
    for (size_t k = 0; k < a.history.size(); ++k) {
      if (k > 0 &&
          a.history[k].e_total > a.history[k - 1].e_total + 1e-10)
        monotone = false;
      if (a.history[k].min_u < floor - 1e-12) feasible = false;
    }

    double sup = 0.0;
    for (int k = 0; k <= 1024; ++k) {
      const double x = -p.L + 2.0 * p.L * k / 1024.0;
      sup = std::max(sup, std::abs(a.u.value(x) - b.u.value(x)));
    }
    const double secs = seconds_since(t0);

    pass = pass && a.converged && b.converged && a.vi_residual <= 1e-6 &&
           b.vi_residual <= 1e-6 && monotone && feasible && sup <= 5e-3 &&
           secs < budget_s;
    detail << "V=" << V << " " << fmt(sup) << " ";
  }
  detail << "(max 5e-3)";
  return {pass, detail.str()};
}

// 8. Continuity of the solution map in the deflection: trace and energy
// distances decay at least linearly along a shrinking perturbation.
Outcome data_continuity() {
  PhysicalParams p;
  const SolveContext ctx = make_context(p, 64, 32, 32);
  const double floor = default_gap_floor(p);
  const DeflectionProfile u = DeflectionProfile::flat(p.L, 64, floor);
  const DeflectionProfile bump =
      catalogue_profile("quartic", -0.5, p.L, 64, floor);
  const ContinuityReport rep = continuity_probe(u, bump, p, ctx, 8, 0.2);

  Outcome o;
  o.pass = rep.slope_trace_l2 <= -0.9 && rep.slope_energy <= -0.9;
  o.detail = "trace slope " + fmt(rep.slope_trace_l2) + ", energy slope " +
             fmt(rep.slope_energy) + " (max -0.9), field H1 slope " +
             fmt(rep.slope_field_h1);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  int index = 0;
  const auto run_one = [&](const char* name, const std::function<Outcome()>& f) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    std::printf("[%s] %d %-28s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL",
                ++index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  run_one("layered-stack oracle", [] { return layered_oracle(5.0); });
  run_one("manufactured-solution orders",
          [] { return manufactured_orders(120.0); });
  run_one("shape-derivative identity", [] { return shape_derivative(); });
  run_one("interface-jump consistency", [] { return jump_consistency(); });
  run_one("force sign and flat limit",
          [] { return force_sign_and_flat_limit(); });
  run_one("energy monotonicity", [] { return energy_monotonicity(); });
  run_one("minimizer convergence",
          [] { return minimizer_convergence(300.0); });
  run_one("data continuity", [] { return data_continuity(); });

  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
