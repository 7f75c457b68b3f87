#pragma once

#include <string>
#include <vector>

#include "mems/energy.hpp"

namespace mems {

struct MinimizeConfig {
  // Armijo backtracking line search.
  double initial_step = 1.0;
  double backtrack = 0.5;
  double armijo_c = 1e-4;
  int max_backtracks = 40;

  // Obstacle handling: nodal projection (default) or a quadratic
  // penalty with an escalating weight (cross-validation mode).
  enum class Obstacle { projection, penalty };
  Obstacle obstacle = Obstacle::projection;
  double penalty_weight = 1e4;
  double penalty_growth = 10.0;
  int penalty_rounds = 4;

  // Coercivity-cap penalty cap_weight * int max(0, u - cap_bound)^2;
  // needed when a = 0 and the permittivity jump is not negative.
  bool cap_enabled = false;
  double cap_bound = 1.0;
  double cap_weight = 1e4;

  // Stopping rules.
  double tol_vi = 1e-8;
  double tol_step = 1e-13;
  int max_iter = 300;

  // Descent metric: preconditioning by the mechanical operator
  // (beta Kb + (tau + a ||u'||^2) Ks) or plain coefficient space.
  enum class Metric { mechanical, euclidean };
  Metric metric = Metric::mechanical;

  bool record_history = true;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double e_mech = 0.0;
  double e_elec = 0.0;
  double e_penalty = 0.0;
  double e_total = 0.0;
  double vi_residual = 0.0;
  double step = 0.0;
  double min_u = 0.0;
  double grad_norm = 0.0;
};

struct MinimizationState {
  explicit MinimizationState(DeflectionProfile u0) : u(std::move(u0)) {}

  DeflectionProfile u;
  EnergyReport energy;
  double direction_norm = 0.0;
  double step_size = 0.0;
  double vi_residual = 0.0;
  std::vector<int> active_set;  // node indices pinned at the gap floor
  int iterations = 0;
  bool converged = false;
  bool obstacle_contact = false;
  std::string message;
  std::vector<IterationRecord> history;
};

// Exact gradient of the discrete total energy with respect to the
// Hermite coefficients of u: the mechanical part differentiates the
// quadratic/quartic forms, the electrostatic part is the discrete
// shape derivative -1/2 psi^T (dK/du) psi (exact because the nodal
// Dirichlet data of the transformed problem does not depend on u).
// Pairing it with a direction profile realises int g(u) theta up to
// the trace-consistency error checked by the derivative-identity
// probes. Fixed (clamped) coefficients are zeroed.
std::vector<double> energy_gradient(const DeflectionProfile& u,
                                    const PhysicalParams& p,
                                    const SolveContext& ctx);

// Same, reusing an already computed potential for the iterate.
std::vector<double> energy_gradient(const DeflectionProfile& u,
                                    const PhysicalParams& p,
                                    const SolveContext& ctx,
                                    const PotentialField& psi);

// Stationarity measure of the discrete obstacle problem: largest
// violation of <grad E, w - u> >= 0 over the feasible test family
// (signed coefficient directions plus the obstacle-projected gradient
// direction), each normalised in the coefficient norm.
double vi_residual(const DeflectionProfile& u, const PhysicalParams& p,
                   const SolveContext& ctx);

MinimizationState minimize_total_energy(const PhysicalParams& p,
                                        const MinimizeConfig& cfg,
                                        const DeflectionProfile& u0,
                                        const SolveContext& ctx);

}  // namespace mems
