#include "mems/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mems/assemble.hpp"
#include "mems/catalogue.hpp"
#include "mems/hermite.hpp"
#include "mems/hermite_space.hpp"

namespace mems {

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) continue;  // exact zeros carry no slope
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

namespace {

double electrostatic_energy_of(const DeflectionProfile& u,
                               const PhysicalParams& p,
                               const SolveContext& ctx) {
  const PotentialField psi =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  return electrostatic_energy(psi, u, p);
}

}  // namespace

DerivativeReport fd_directional_derivative(const DeflectionProfile& u,
                                           const DeflectionProfile& theta,
                                           const PhysicalParams& p,
                                           const SolveContext& ctx,
                                           const std::vector<double>& steps,
                                           const std::string& direction_id) {
  if (steps.empty())
    throw std::invalid_argument("fd probe: need at least one step size");
  for (size_t i = 1; i < steps.size(); ++i)
    if (steps[i] >= steps[i - 1])
      throw std::invalid_argument("fd probe: steps must decrease strictly");

  DerivativeReport rep;
  rep.direction_id = direction_id;
  rep.steps = steps;

  for (double t : steps) {
    DeflectionProfile up = [&] {
      try {
        return DeflectionProfile::linear_combination(u, t, theta);
      } catch (const std::domain_error& e) {
        throw std::domain_error("fd probe: step t = " + std::to_string(t) +
                                " leaves the admissible set: " + e.what());
      }
    }();
    DeflectionProfile um = [&] {
      try {
        return DeflectionProfile::linear_combination(u, -t, theta);
      } catch (const std::domain_error& e) {
        throw std::domain_error("fd probe: step t = -" + std::to_string(t) +
                                " leaves the admissible set: " + e.what());
      }
    }();
    const double ep = electrostatic_energy_of(up, p, ctx);
    const double em = electrostatic_energy_of(um, p, ctx);
    rep.quotients.push_back((ep - em) / (2.0 * t));
  }

  // Richardson step on the two finest quotients; central differences
  // carry an O(t^2) error term.
  const size_t n = rep.quotients.size();
  if (n >= 2) {
    const double r = steps[n - 2] / steps[n - 1];
    rep.fd_extrapolated =
        (r * r * rep.quotients[n - 1] - rep.quotients[n - 2]) / (r * r - 1.0);
  } else {
    rep.fd_extrapolated = rep.quotients.front();
  }

  const PotentialField psi =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  const TraceData traces = extract_traces(psi, u, p, ctx.trace_mode);
  const ForceProfile force = electrostatic_force(traces, u, p);
  rep.g_pairing =
      integrate_piecewise_constant(force.breaks, force.g, theta);

  // FD roundoff on E_e limits how small a genuinely zero derivative can
  // come out; floor the denominator at that scale.
  const double e0 = std::abs(electrostatic_energy(psi, u, p));
  const double floor = 1e-9 * std::max(1.0, e0);
  rep.mismatch_rel =
      std::abs(rep.fd_extrapolated - rep.g_pairing) /
      std::max({std::abs(rep.g_pairing), std::abs(rep.fd_extrapolated), floor});
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Piecewise harmonic manufactured solution with matched value and flux
// across z = 0; vanishes on x = +-L when k = pi/L.
struct MmsSolution {
  PhysicalParams p;
  double k = 0.0;

  double value(double x, double z) const {
    if (z < 0.0) return std::sin(k * x) * std::sinh(k * (z + p.H));
    return std::sin(k * x) *
           (std::sinh(k * p.H) * std::cosh(k * z) +
            (p.sigma1 / p.sigma2) * std::cosh(k * p.H) * std::sinh(k * z));
  }

  Vec2 grad(double x, double z) const {
    if (z < 0.0) {
      return {k * std::cos(k * x) * std::sinh(k * (z + p.H)),
              k * std::sin(k * x) * std::cosh(k * (z + p.H))};
    }
    const double cz = std::cosh(k * z), sz = std::sinh(k * z);
    const double sH = std::sinh(k * p.H), cH = std::cosh(k * p.H);
    const double ratio = p.sigma1 / p.sigma2;
    return {k * std::cos(k * x) * (sH * cz + ratio * cH * sz),
            k * std::sin(k * x) * (sH * sz + ratio * cH * cz)};
  }
};

// L2 / H1 errors of the bilinear solution against a smooth reference,
// integrated with a 3x3 Gauss rule per cell.
void q1_error_norms(const ReferenceMesh& mesh, const std::vector<double>& psi,
                    const MmsSolution& exact, double* err_l2, double* err_h1) {
  const GaussRule& g3 = GaussRule::points(3);
  double l2 = 0.0, h1s = 0.0;
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double dz = mesh.dz_row(cj);
    const double z0 = mesh.z_coord(cj);
    for (int ci = 0; ci < mesh.nx; ++ci) {
      const auto nodes = mesh.cell_nodes(ci, cj);
      const double x0 = mesh.x_coord(ci);
      const double v[4] = {psi[nodes[0]], psi[nodes[1]], psi[nodes[2]],
                           psi[nodes[3]]};
      for (int qa = 0; qa < g3.n; ++qa) {
        for (int qb = 0; qb < g3.n; ++qb) {
          const double xi = g3.xi[qa], eta = g3.xi[qb];
          const double w = g3.w[qa] * g3.w[qb] * mesh.dx() * dz;
          const double x = x0 + xi * mesh.dx();
          const double z = z0 + eta * dz;
          const double vh = v[0] * (1 - xi) * (1 - eta) + v[1] * xi * (1 - eta) +
                            v[2] * (1 - xi) * eta + v[3] * xi * eta;
          const double gxh =
              ((v[1] - v[0]) * (1 - eta) + (v[3] - v[2]) * eta) / mesh.dx();
          const double gzh = ((v[2] - v[0]) * (1 - xi) + (v[3] - v[1]) * xi) / dz;
          // Evaluate the exact branch matching the cell's region.
          const double zq = (cj < mesh.nz1) ? std::min(z, -1e-300) : z;
          const double e = vh - exact.value(x, zq);
          const Vec2 ge = exact.grad(x, zq);
          l2 += w * e * e;
          h1s += w * ((gxh - ge.x) * (gxh - ge.x) + (gzh - ge.z) * (gzh - ge.z));
        }
      }
    }
  }
  *err_l2 = std::sqrt(l2);
  *err_h1 = std::sqrt(l2 + h1s);
}

}  // namespace

MmsReport mms_convergence(const PhysicalParams& p,
                          const std::vector<int>& ladder) {
  MmsReport rep;
  const MmsSolution exact{p, M_PI / p.L};
  const BoundaryData bdata = BoundaryData::custom(
      p, [&exact](double x, double z) { return exact.value(x, z); });

  std::vector<double> nxs, l2s, h1s;
  for (int nx : ladder) {
    if (nx < 2 || nx % 2 != 0)
      throw std::invalid_argument("mms_convergence: ladder entries must be even");
    const MeshPtr mesh = build_mesh(p.L, p.H, p.d, nx, nx / 2, nx / 2);
    const DeflectionProfile u =
        DeflectionProfile::flat(p.L, nx, default_gap_floor(p));
    const PotentialField psi = solve_potential(u, p, mesh, bdata, {});

    MmsLevel level;
    level.nx = nx;
    q1_error_norms(*mesh, psi.values, exact, &level.err_l2, &level.err_h1);

    const TraceData traces = extract_traces(psi, u, p, TraceMode::cell_center);
    double fj = 0.0;
    for (size_t i = 0; i < traces.x.size(); ++i) {
      const double jump = p.sigma2 * traces.grad_upper[i].z -
                          p.sigma1 * traces.grad_lower[i].z;
      fj += jump * jump * mesh->dx();
    }
    level.flux_jump = std::sqrt(fj);

    rep.levels.push_back(level);
    nxs.push_back(nx);
    l2s.push_back(level.err_l2);
    h1s.push_back(level.err_h1);
  }

  // err ~ nx^-order, so the log-log slope against nx is -order.
  rep.order_l2 = -loglog_slope(nxs, l2s);
  rep.order_h1 = -loglog_slope(nxs, h1s);
  return rep;
}

// ---------------------------------------------------------------------------

MonotonicityReport monotonicity_probe(const PhysicalParams& p,
                                      const SolveContext& ctx, double tol) {
  if (p.sigma_jump() >= 0.0)
    throw std::invalid_argument(
        "monotonicity_probe: requires sigma2 > sigma1");

  const std::vector<std::string> shapes = catalogue_nonnegative_ids();
  // Gap shapes need a pointwise-nonnegative interpolant, which rules
  // out 'plateau': its quartic touch at +-L makes the end-cell cubic
  // change sign. The remaining nonnegative shapes interpolate to
  // provably nonnegative cubics on every cell.
  const std::vector<std::string> gap_shapes = {"quartic", "sextic", "tilted"};
  const double floor = default_gap_floor(p);
  const int n_cells = ctx.mesh->nx;
  const double upper_amp[5] = {0.0, 0.04, 0.08, 0.12, 0.16};
  const double gap_amp[4] = {0.05, 0.08, 0.11, 0.14};

  MonotonicityReport rep;
  rep.all_ok = true;
  for (int i = 0; i < 20; ++i) {
    const std::string& id_upper = shapes[i % shapes.size()];
    const std::string& id_gap = gap_shapes[(i / 4) % gap_shapes.size()];
    const double a = upper_amp[i % 5];
    const double b = gap_amp[i % 4];

    const DeflectionProfile u1 =
        catalogue_profile(id_upper, -a, p.L, n_cells, floor);
    const DeflectionProfile gap =
        catalogue_profile(id_gap, 1.0, p.L, n_cells, -2.0 * p.H);
    const DeflectionProfile u0 = DeflectionProfile::linear_combination(u1, -b, gap);

    // The ordering must hold for the interpolants themselves, not just
    // at the nodes; sample densely and fail loudly if construction is
    // ever wrong.
    for (int s = 0; s <= 10 * n_cells; ++s) {
      const double x = -p.L + 2.0 * p.L * s / (10.0 * n_cells);
      if (u0.value(x) > u1.value(x) + 1e-14)
        throw std::logic_error("monotonicity_probe: pair is not ordered");
    }

    MonotonicityCase c;
    c.label = id_upper + "-" + std::to_string(a) + "|" + id_gap + "-" +
              std::to_string(b);
    c.e_lower = electrostatic_energy_of(u0, p, ctx);
    c.e_upper = electrostatic_energy_of(u1, p, ctx);
    c.ok = c.e_lower <= c.e_upper + tol;
    rep.worst_violation =
        std::max(rep.worst_violation, c.e_lower - c.e_upper);
    rep.all_ok = rep.all_ok && c.ok;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

double h1_field_distance(const ReferenceMesh& mesh,
                         const std::vector<double>& a,
                         const std::vector<double>& b) {
  std::vector<double> diff(a.size());
  for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  const GaussRule& g2 = GaussRule::points(2);
  double acc = 0.0;
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double dz = mesh.dz_row(cj);
    for (int ci = 0; ci < mesh.nx; ++ci) {
      const auto nodes = mesh.cell_nodes(ci, cj);
      const double v[4] = {diff[nodes[0]], diff[nodes[1]], diff[nodes[2]],
                           diff[nodes[3]]};
      for (int qa = 0; qa < g2.n; ++qa) {
        for (int qb = 0; qb < g2.n; ++qb) {
          const double xi = g2.xi[qa], eta = g2.xi[qb];
          const double w = g2.w[qa] * g2.w[qb] * mesh.dx() * dz;
          const double vh = v[0] * (1 - xi) * (1 - eta) + v[1] * xi * (1 - eta) +
                            v[2] * (1 - xi) * eta + v[3] * xi * eta;
          const double gx =
              ((v[1] - v[0]) * (1 - eta) + (v[3] - v[2]) * eta) / mesh.dx();
          const double gz = ((v[2] - v[0]) * (1 - xi) + (v[3] - v[1]) * xi) / dz;
          acc += w * (vh * vh + gx * gx + gz * gz);
        }
      }
    }
  }
  return std::sqrt(acc);
}

double lp_trace_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                         double dx, double pexp) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double dxv = a[i].x - b[i].x;
    const double dzv = a[i].z - b[i].z;
    const double mag = std::sqrt(dxv * dxv + dzv * dzv);
    acc += std::pow(mag, pexp) * dx;
  }
  return std::pow(acc, 1.0 / pexp);
}

}  // namespace

ContinuityReport continuity_probe(const DeflectionProfile& u,
                                  const DeflectionProfile& bump,
                                  const PhysicalParams& p,
                                  const SolveContext& ctx, int n_levels,
                                  double delta0) {
  if (n_levels < 3)
    throw std::invalid_argument("continuity_probe: need at least 3 levels");

  const PotentialField psi0 =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  const double e0 = electrostatic_energy(psi0, u, p);
  const TraceData t0 = extract_traces(psi0, u, p, ctx.trace_mode);
  const double dx = ctx.mesh->dx();

  ContinuityReport rep;
  std::vector<double> ns, d_tr2, d_en, d_h1;
  for (int n = 1; n <= n_levels; ++n) {
    const double delta = delta0 / n;
    const DeflectionProfile un =
        DeflectionProfile::linear_combination(u, delta, bump);
    const PotentialField psin =
        solve_potential(un, p, ctx.mesh, ctx.bdata, ctx.solver);
    const TraceData tn = extract_traces(psin, un, p, ctx.trace_mode);

    ContinuityLevel lvl;
    lvl.delta = delta;
    lvl.trace_l1 = lp_trace_distance(tn.grad_upper, t0.grad_upper, dx, 1.0);
    lvl.trace_l2 = lp_trace_distance(tn.grad_upper, t0.grad_upper, dx, 2.0);
    lvl.trace_l4 = lp_trace_distance(tn.grad_upper, t0.grad_upper, dx, 4.0);
    lvl.top_l2 = lp_trace_distance(tn.grad_top, t0.grad_top, dx, 2.0);
    lvl.energy_gap = std::abs(electrostatic_energy(psin, un, p) - e0);
    lvl.field_h1 = h1_field_distance(*ctx.mesh, psin.values, psi0.values);
    rep.levels.push_back(lvl);

    ns.push_back(n);
    d_tr2.push_back(lvl.trace_l2);
    d_en.push_back(lvl.energy_gap);
    d_h1.push_back(lvl.field_h1);
  }

  rep.slope_trace_l2 = loglog_slope(ns, d_tr2);
  rep.slope_energy = loglog_slope(ns, d_en);
  rep.slope_field_h1 = loglog_slope(ns, d_h1);

  rep.tail_monotone = true;
  for (size_t i = 1; i < rep.levels.size(); ++i) {
    const ContinuityLevel& prev = rep.levels[i - 1];
    const ContinuityLevel& cur = rep.levels[i];
    const double slack = 1e-13;
    if (cur.trace_l2 > prev.trace_l2 + slack ||
        cur.energy_gap > prev.energy_gap + slack ||
        cur.field_h1 > prev.field_h1 + slack)
      rep.tail_monotone = false;
  }
  return rep;
}

}  // namespace mems
