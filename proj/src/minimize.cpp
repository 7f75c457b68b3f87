#include "mems/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mems/assemble.hpp"
#include "mems/hermite.hpp"
#include "mems/hermite_space.hpp"
#include "mems/transform.hpp"

namespace mems {

void MinimizeConfig::validate() const {
  if (initial_step <= 0.0) throw std::invalid_argument("minimize: initial_step must be positive");
  if (backtrack <= 0.0 || backtrack >= 1.0)
    throw std::invalid_argument("minimize: backtrack factor must lie in (0,1)");
  if (armijo_c <= 0.0 || armijo_c >= 1.0)
    throw std::invalid_argument("minimize: armijo constant must lie in (0,1)");
  if (max_backtracks < 1 || max_iter < 1)
    throw std::invalid_argument("minimize: iteration limits must be >= 1");
  if (penalty_weight <= 0.0 || penalty_growth <= 1.0 || penalty_rounds < 1)
    throw std::invalid_argument("minimize: penalty schedule must be positive");
  if (cap_enabled && (cap_weight <= 0.0 || cap_bound <= 0.0))
    throw std::invalid_argument("minimize: cap penalty parameters must be positive");
  if (tol_vi <= 0.0 || tol_step <= 0.0)
    throw std::invalid_argument("minimize: tolerances must be positive");
}

namespace {

struct PenaltySpec {
  double obs_weight = 0.0;  // quadratic penalty below obs_floor (0 = off)
  double obs_floor = 0.0;
  double cap_weight = 0.0;  // quadratic penalty above cap_bound (0 = off)
  double cap_bound = 0.0;
};

double penalty_value(const DeflectionProfile& u, const PenaltySpec& spec) {
  if (spec.obs_weight == 0.0 && spec.cap_weight == 0.0) return 0.0;
  const GaussRule& g5 = GaussRule::points(5);
  const double h = u.dx();
  double total = 0.0;
  for (int c = 0; c < u.n_cells(); ++c) {
    const double a = u.x_nodes()[c];
    for (int q = 0; q < g5.n; ++q) {
      const double x = a + g5.xi[q] * h;
      const double w = g5.w[q] * h;
      const double v = u.value(x);
      if (spec.obs_weight > 0.0) {
        const double def = std::max(0.0, spec.obs_floor - v);
        total += spec.obs_weight * w * def * def;
      }
      if (spec.cap_weight > 0.0) {
        const double exc = std::max(0.0, v - spec.cap_bound);
        total += spec.cap_weight * w * exc * exc;
      }
    }
  }
  return total;
}

void add_penalty_gradient(const HermiteSpace& space, const DeflectionProfile& u,
                          const PenaltySpec& spec, std::vector<double>& G) {
  if (spec.obs_weight == 0.0 && spec.cap_weight == 0.0) return;
  const GaussRule& g5 = GaussRule::points(5);
  const double h = space.dx();
  for (int c = 0; c < space.n_cells(); ++c) {
    const double a = -space.L() + c * h;
    for (int q = 0; q < g5.n; ++q) {
      const double x = a + g5.xi[q] * h;
      const double w = g5.w[q] * h;
      const double v = u.value(x);
      double coeff = 0.0;
      if (spec.obs_weight > 0.0)
        coeff -= 2.0 * spec.obs_weight * std::max(0.0, spec.obs_floor - v);
      if (spec.cap_weight > 0.0)
        coeff += 2.0 * spec.cap_weight * std::max(0.0, v - spec.cap_bound);
      if (coeff == 0.0) continue;
      const Hermite4 phi = hermite_values(g5.xi[q], h);
      for (int j = 0; j < 4; ++j) G[2 * c + j] += w * coeff * phi[j];
    }
  }
}

// Gauss-Newton Hessian of the quadratic penalties: 2w times a mass
// matrix restricted to the violating region, assembled with the same
// rule as the gradient. Folding it into the metric keeps the search
// direction sane once the weight schedule grows large.
BandMatrix penalty_hessian(const HermiteSpace& space, const DeflectionProfile& u,
                           const PenaltySpec& spec) {
  BandMatrix Hp;
  Hp.n = space.n_dofs();
  Hp.kd = 3;
  Hp.data.assign(static_cast<size_t>(Hp.n) * 4, 0.0);
  if (spec.obs_weight == 0.0 && spec.cap_weight == 0.0) return Hp;
  const GaussRule& g5 = GaussRule::points(5);
  const double h = space.dx();
  for (int c = 0; c < space.n_cells(); ++c) {
    const double a = -space.L() + c * h;
    for (int q = 0; q < g5.n; ++q) {
      const double x = a + g5.xi[q] * h;
      const double w = g5.w[q] * h;
      const double v = u.value(x);
      double curv = 0.0;
      if (spec.obs_weight > 0.0 && v < spec.obs_floor)
        curv += 2.0 * spec.obs_weight;
      if (spec.cap_weight > 0.0 && v > spec.cap_bound)
        curv += 2.0 * spec.cap_weight;
      if (curv == 0.0) continue;
      const Hermite4 phi = hermite_values(g5.xi[q], h);
      const int base = 2 * c;
      for (int ia = 0; ia < 4; ++ia)
        for (int ib = 0; ib <= ia; ++ib)
          Hp.at(base + ia, base + ib) += w * curv * phi[ia] * phi[ib];
    }
  }
  return Hp;
}

std::vector<double> mechanical_gradient(const HermiteSpace& space,
                                        const std::vector<double>& d,
                                        const PhysicalParams& p) {
  std::vector<double> gb, gs;
  space.bending().symmetric_multiply(d, gb);
  space.stretch().symmetric_multiply(d, gs);
  const double stretch_sq =
      std::inner_product(d.begin(), d.end(), gs.begin(), 0.0);
  const double cs = p.tau + p.a * stretch_sq;
  std::vector<double> G(d.size());
  for (size_t i = 0; i < d.size(); ++i) G[i] = p.beta * gb[i] + cs * gs[i];
  return G;
}

// Exact derivative of the discrete electrostatic energy: for every
// assembly Gauss point the coefficient tensor depends on u and u'
// through closed-form matrices, so
//   dE_e/d(dof_i) = -1/2 sum_q w_q [ Qu(q) phi_i(x_q) + Qw(q) phi_i'(x_q) ]
// with Qu = grad^T (dA/du) grad and Qw = grad^T (dA/du') grad at the
// reference gradient of psi.
std::vector<double> electrostatic_gradient(const HermiteSpace& space,
                                           const DeflectionProfile& u,
                                           const PhysicalParams& p,
                                           const ReferenceMesh& mesh,
                                           const std::vector<double>& psi) {
  const std::vector<QuadPoint> qpts = cell_gauss_points(mesh);
  const std::vector<Vec2> grads = gauss_point_gradients(mesh, psi);

  std::vector<double> G(space.n_dofs(), 0.0);
  const double H = p.H;
  const double hx = space.dx();
  for (size_t q = 0; q < qpts.size(); ++q) {
    const double x = qpts[q].x;
    const double z = qpts[q].z;
    const double gx = grads[q].x;
    const double gz = grads[q].z;

    double qu = 0.0, qw = 0.0;
    if (z < 0.0) {
      const double uv = u.value(x);
      const double us = u.slope(x);
      const double jac = (H + uv) / H;
      const double wpar = (z + H) * us / H;
      qu = p.sigma1 *
           (gx * gx / H - (wpar * wpar + 1.0) / (jac * jac * H) * gz * gz);
      qw = p.sigma1 * 2.0 * (z + H) / H * gz * (wpar * gz / jac - gx);
    } else {
      const double us = u.slope(x);
      qw = 2.0 * p.sigma2 * gz * (us * gz - gx);
    }

    const double scale = -0.5 * qpts[q].w;
    int c = static_cast<int>(std::floor((x + space.L()) / hx));
    c = std::clamp(c, 0, space.n_cells() - 1);
    const double xi = (x - (-space.L() + c * hx)) / hx;
    const Hermite4 phi = hermite_values(xi, hx);
    const Hermite4 dphi = hermite_d1(xi, hx);
    for (int j = 0; j < 4; ++j)
      G[2 * c + j] += scale * (qu * phi[j] + qw * dphi[j]);
  }
  return G;
}

std::vector<double> full_gradient(const HermiteSpace& space,
                                  const DeflectionProfile& u,
                                  const PhysicalParams& p,
                                  const ReferenceMesh& mesh,
                                  const std::vector<double>& psi,
                                  const PenaltySpec& spec) {
  const std::vector<double> d = u.coefficients();
  std::vector<double> G = mechanical_gradient(space, d, p);
  const std::vector<double> Ge =
      electrostatic_gradient(space, u, p, mesh, psi);
  for (size_t i = 0; i < G.size(); ++i) G[i] += Ge[i];
  add_penalty_gradient(space, u, spec, G);
  space.zero_fixed(G);
  return G;
}

void project_floor(const HermiteSpace& space, double floor,
                   std::vector<double>& d) {
  for (int i = 0; i < space.n_dofs(); i += 2) d[i] = std::max(d[i], floor);
}

// Value dofs sitting on the floor whose gradient points into the
// obstacle; the metric solve pins these so the direction does not fight
// the projection (projected-Newton active-set rule).
std::vector<char> obstacle_active_mask(const HermiteSpace& space,
                                       const std::vector<double>& d,
                                       const std::vector<double>& G,
                                       double floor) {
  const double atol = 1e-12 * std::max(1.0, std::abs(floor));
  std::vector<char> mask(space.n_dofs(), 0);
  for (int i = 0; i < space.n_dofs(); i += 2)
    if (!space.is_fixed(i) && d[i] <= floor + atol && G[i] >= 0.0) mask[i] = 1;
  return mask;
}

// Solve (beta Kb + (tau + a ||u'||^2) Ks [+ penalty Hessian]) p = -G on
// the free dofs, optionally also pinning an obstacle active set.
std::vector<double> metric_direction(const HermiteSpace& space,
                                     const std::vector<double>& d,
                                     const PhysicalParams& p,
                                     const std::vector<double>& G,
                                     const std::vector<char>* pinned = nullptr,
                                     const BandMatrix* extra = nullptr) {
  BandMatrix M = space.bending();
  const double cs = p.tau + p.a * space.stretch_form(d);
  const BandMatrix& Ks = space.stretch();
  for (size_t k = 0; k < M.data.size(); ++k)
    M.data[k] = p.beta * M.data[k] + cs * Ks.data[k];
  if (extra)
    for (size_t k = 0; k < M.data.size(); ++k) M.data[k] += extra->data[k];
  M = space.constrained_copy(M);
  std::vector<double> dir(G.size());
  for (size_t i = 0; i < G.size(); ++i) dir[i] = -G[i];
  if (pinned) {
    for (int dof = 0; dof < M.n; ++dof) {
      if (!(*pinned)[dof]) continue;
      for (int j = std::max(0, dof - M.kd); j < dof; ++j) M.at(dof, j) = 0.0;
      for (int i = dof + 1; i <= std::min(M.n - 1, dof + M.kd); ++i)
        M.at(i, dof) = 0.0;
      M.at(dof, dof) = 1.0;
      dir[dof] = 0.0;
    }
  }
  M.cholesky_factor();
  M.cholesky_solve(dir);
  return dir;
}

struct Evaluation {
  DeflectionProfile u;
  PotentialField psi;
  EnergyReport energy;
};

std::optional<Evaluation> evaluate(const std::vector<double>& d,
                                   const HermiteSpace& space, double build_floor,
                                   const PhysicalParams& p,
                                   const SolveContext& ctx,
                                   const PenaltySpec& spec) {
  try {
    DeflectionProfile u = space.make_profile(d, build_floor);
    PotentialField psi = solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
    EnergyReport e;
    e.mechanical = mechanical_energy(u, p);
    e.electrostatic = electrostatic_energy(psi, u, p);
    e.penalty = penalty_value(u, spec);
    e.total = e.mechanical + e.electrostatic + e.penalty;
    e.solve_info = psi.info;
    return Evaluation{std::move(u), std::move(psi), e};
  } catch (const DegenerateGeometryError&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

double vi_from_gradient(const HermiteSpace& space,
                        const std::vector<double>& d,
                        const std::vector<double>& G, double floor,
                        bool constrained, const PhysicalParams& p) {
  const double atol = 1e-12 * std::max(1.0, std::abs(floor));
  double worst = 0.0;
  for (int i = 0; i < space.n_dofs(); ++i) {
    if (space.is_fixed(i)) continue;
    const bool active =
        constrained && (i % 2 == 0) && d[i] <= floor + atol;
    const double viol = active ? std::max(0.0, -G[i]) : std::abs(G[i]);
    worst = std::max(worst, viol);
  }

  // Obstacle-projected (metric) gradient probe.
  std::vector<double> trial = d;
  std::vector<char> mask;
  if (constrained) mask = obstacle_active_mask(space, d, G, floor);
  const std::vector<double> dir =
      metric_direction(space, d, p, G, constrained ? &mask : nullptr);
  for (size_t i = 0; i < trial.size(); ++i) trial[i] += dir[i];
  if (constrained) project_floor(space, floor, trial);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < trial.size(); ++i) {
    const double delta = trial[i] - d[i];
    num += G[i] * delta;
    den += delta * delta;
  }
  if (den > 0.0) worst = std::max(worst, std::max(0.0, -num / std::sqrt(den)));
  return worst;
}

}  // namespace

std::vector<double> energy_gradient(const DeflectionProfile& u,
                                    const PhysicalParams& p,
                                    const SolveContext& ctx,
                                    const PotentialField& psi) {
  const HermiteSpace space(u.L(), u.n_cells(), u.bc_mode());
  return full_gradient(space, u, p, *ctx.mesh, psi.values, PenaltySpec{});
}

std::vector<double> energy_gradient(const DeflectionProfile& u,
                                    const PhysicalParams& p,
                                    const SolveContext& ctx) {
  const PotentialField psi =
      solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  return energy_gradient(u, p, ctx, psi);
}

double vi_residual(const DeflectionProfile& u, const PhysicalParams& p,
                   const SolveContext& ctx) {
  const HermiteSpace space(u.L(), u.n_cells(), u.bc_mode());
  const std::vector<double> G =
      energy_gradient(u, p, ctx);
  return vi_from_gradient(space, u.coefficients(), G, u.gap_floor(), true, p);
}

MinimizationState minimize_total_energy(const PhysicalParams& p,
                                        const MinimizeConfig& cfg,
                                        const DeflectionProfile& u0,
                                        const SolveContext& ctx) {
  cfg.validate();
  p.validate();
  const HermiteSpace space(u0.L(), u0.n_cells(), u0.bc_mode());
  const double floor = u0.gap_floor();
  const bool projection = (cfg.obstacle == MinimizeConfig::Obstacle::projection);

  // Penalty mode steers iterates with a quadratic penalty toward the
  // true floor while only hard-projecting onto a slightly relaxed one
  // (keeps the pullback safely non-degenerate during the search).
  const double relaxed_floor = projection
                                   ? floor
                                   : floor - 0.9 * (floor + p.H);
  PenaltySpec spec;
  if (!projection) {
    spec.obs_weight = cfg.penalty_weight;
    spec.obs_floor = floor;
  }
  if (cfg.cap_enabled) {
    spec.cap_weight = cfg.cap_weight;
    spec.cap_bound = cfg.cap_bound;
  }
  if (p.a == 0.0 && !cfg.cap_enabled && p.sigma_jump() >= 0.0) {
    throw std::invalid_argument(
        "minimize: a = 0 with non-negative permittivity jump needs the "
        "coercivity cap enabled");
  }

  std::vector<double> d = u0.coefficients();
  project_floor(space, relaxed_floor, d);
  std::optional<Evaluation> cur =
      evaluate(d, space, relaxed_floor, p, ctx, spec);
  if (!cur.has_value())
    throw std::invalid_argument("minimize: initial state is not evaluable");

  MinimizationState st(cur->u);
  const int rounds = projection ? 1 : cfg.penalty_rounds;
  int iter_total = 0;
  bool stalled = false;
  double last_step = 0.0;

  for (int round = 0; round < rounds; ++round) {
    if (!projection && round > 0) {
      spec.obs_weight *= cfg.penalty_growth;
      cur = evaluate(d, space, relaxed_floor, p, ctx, spec);
    }
    for (; iter_total < cfg.max_iter; ++iter_total) {
      std::vector<double> G =
          full_gradient(space, cur->u, p, *ctx.mesh, cur->psi.values, spec);
      const double vi =
          vi_from_gradient(space, d, G, projection ? floor : relaxed_floor,
                           projection, p);
      double gnorm = 0.0;
      for (double gi : G) gnorm += gi * gi;
      gnorm = std::sqrt(gnorm);

      if (cfg.record_history) {
        IterationRecord row;
        row.iteration = iter_total;
        row.e_mech = cur->energy.mechanical;
        row.e_elec = cur->energy.electrostatic;
        row.e_penalty = cur->energy.penalty;
        row.e_total = cur->energy.total;
        row.vi_residual = vi;
        row.step = last_step;
        row.min_u = cur->u.min_value();
        row.grad_norm = gnorm;
        st.history.push_back(row);
      }
      st.vi_residual = vi;
      st.direction_norm = gnorm;

      if (vi <= cfg.tol_vi) {
        st.converged = true;
        break;
      }
      if (stalled) {
        st.message = "step size underflow before reaching the VI tolerance";
        break;
      }

      bool accepted = false;
      std::vector<double> d_new;
      std::optional<Evaluation> next;
      for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
        std::vector<double> dir;
        if (attempt == 0 && cfg.metric == MinimizeConfig::Metric::mechanical) {
          const std::vector<char> mask =
              obstacle_active_mask(space, d, G, relaxed_floor);
          const BandMatrix Hp = penalty_hessian(space, cur->u, spec);
          dir = metric_direction(space, d, p, G, &mask, &Hp);
        } else {
          dir.resize(G.size());
          for (size_t i = 0; i < G.size(); ++i) dir[i] = -G[i];
        }
        space.zero_fixed(dir);

        double t = cfg.initial_step;
        for (int bt = 0; bt < cfg.max_backtracks; ++bt, t *= cfg.backtrack) {
          d_new = d;
          for (size_t i = 0; i < d.size(); ++i) d_new[i] += t * dir[i];
          project_floor(space, relaxed_floor, d_new);
          double pred = 0.0, dn = 0.0;
          for (size_t i = 0; i < d.size(); ++i) {
            const double delta = d_new[i] - d[i];
            pred += G[i] * delta;
            dn = std::max(dn, std::abs(delta));
          }
          if (dn == 0.0 || pred >= 0.0) continue;
          next = evaluate(d_new, space, relaxed_floor, p, ctx, spec);
          if (!next.has_value()) continue;
          if (next->energy.total <= cur->energy.total + cfg.armijo_c * pred) {
            accepted = true;
            last_step = t;
            break;
          }
        }
        if (attempt == 0 && cfg.metric != MinimizeConfig::Metric::mechanical)
          break;  // euclidean already tried
      }

      if (!accepted) {
        st.message = "line search failed to find a descent step";
        break;
      }

      double dn = 0.0;
      for (size_t i = 0; i < d.size(); ++i)
        dn = std::max(dn, std::abs(d_new[i] - d[i]));
      if (dn <= cfg.tol_step) stalled = true;

      d = std::move(d_new);
      cur = std::move(next);
    }
    if (!st.converged && !st.message.empty()) break;
    if (iter_total >= cfg.max_iter && !st.converged) {
      st.message = "iteration cap reached";
      break;
    }
    if (st.converged && round + 1 < rounds) st.converged = false;
  }

  st.u = cur->u;
  st.energy = cur->energy;
  st.iterations = iter_total;
  st.step_size = last_step;

  const double atol = 1e-12 * std::max(1.0, std::abs(floor));
  const std::vector<double>& uv = st.u.u_values();
  for (size_t i = 0; i < uv.size(); ++i)
    if (uv[i] <= floor + atol) st.active_set.push_back(static_cast<int>(i));
  st.obstacle_contact = !st.active_set.empty();
  if (st.converged && st.message.empty()) st.message = "converged";
  return st;
}

}  // namespace mems
