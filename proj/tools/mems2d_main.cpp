// mems2d: transmission solver, force evaluation and energy minimization
// for the electrostatically actuated plate model on the strip (-L, L).

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mems/catalogue.hpp"
#include "mems/config.hpp"
#include "mems/energy.hpp"
#include "mems/force.hpp"
#include "mems/io.hpp"
#include "mems/minimize.hpp"
#include "mems/verify.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string config_path;
  std::string out_override;
  bool serial = false;
  long long seed = -1;  // -1: keep the config value
};

mems::RunConfig load_config(const GlobalOpts& opts) {
  mems::RunConfig cfg = mems::parse_config_file(opts.config_path);
  if (!opts.out_override.empty()) cfg.out_dir = opts.out_override;
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  return cfg;
}

mems::BoundaryData make_boundary(const mems::RunConfig& cfg) {
  const mems::PhysicalParams p = cfg.physical;
  if (cfg.boundary == "oneD") {
    // Layered closed form for a flat plate: constant vertical flux
    // through both media, potential piecewise linear in z.
    const double flux = p.V / (p.H / p.sigma1 + p.d / p.sigma2);
    return mems::BoundaryData::custom(p, [p, flux](double, double zbar) {
      if (zbar <= 0.0) return flux * (zbar + p.H) / p.sigma1;
      return flux * p.H / p.sigma1 + flux * zbar / p.sigma2;
    });
  }
  return mems::BoundaryData::model(p);
}

mems::SolveContext make_run_context(const mems::RunConfig& cfg) {
  mems::SolverOptions solver;
  solver.kind = cfg.solve.solver;
  solver.cg_tol = cfg.solve.cg_tol;
  return mems::SolveContext{
      mems::build_mesh(cfg.physical.L, cfg.physical.H, cfg.physical.d,
                       cfg.mesh.nx, cfg.mesh.nz1, cfg.mesh.nz2),
      make_boundary(cfg), solver, cfg.solve.trace_mode};
}

mems::DeflectionProfile make_deflection(const mems::RunConfig& cfg) {
  const mems::PhysicalParams& p = cfg.physical;
  const double floor = mems::default_gap_floor(p);
  const int n = cfg.deflection.n_cells > 0 ? cfg.deflection.n_cells : cfg.mesh.nx;
  switch (cfg.deflection.source) {
    case mems::DeflectionSource::flat:
      return mems::DeflectionProfile::flat(p.L, n, floor);
    case mems::DeflectionSource::catalogue:
      return mems::catalogue_profile(cfg.deflection.shape,
                                     cfg.deflection.amplitude, p.L, n, floor);
    case mems::DeflectionSource::file: {
      mems::DeflectionFile f =
          mems::read_deflection_file(cfg.deflection.file, floor);
      if (std::abs(f.L - p.L) > 1e-9 * std::max(1.0, p.L))
        throw mems::ConfigError("deflection file half-width L = " +
                                    mems::format_double(f.L) +
                                    " does not match [physical] L",
                                0);
      return f.profile;
    }
  }
  throw std::logic_error("unreachable deflection source");
}

std::string out_path(const mems::RunConfig& cfg, const std::string& name) {
  return cfg.out_dir + "/" + name;
}

json solver_json(const mems::SolveInfo& info) {
  return {{"converged", info.converged},
          {"iterations", info.iterations},
          {"rel_residual", info.rel_residual},
          {"method", info.method}};
}

json mesh_json(const mems::RunConfig& cfg) {
  return {{"nx", cfg.mesh.nx},
          {"nz1", cfg.mesh.nz1},
          {"nz2", cfg.mesh.nz2},
          {"nodes", (cfg.mesh.nx + 1) * (cfg.mesh.nz1 + cfg.mesh.nz2 + 1)}};
}

void write_json_file(const mems::RunConfig& cfg, const std::string& name,
                     json j) {
  j["config_hash"] = mems::hex_hash(cfg.hash);
  j["seed"] = cfg.seed;
  mems::write_text_atomic(out_path(cfg, name), j.dump(2) + "\n");
}

// --------------------------------------------------------------------------

int cmd_solve(const mems::RunConfig& cfg) {
  const mems::PhysicalParams& p = cfg.physical;
  const mems::SolveContext ctx = make_run_context(cfg);
  const mems::DeflectionProfile u = make_deflection(cfg);

  const mems::PotentialField psi =
      mems::solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  mems::write_text_atomic(out_path(cfg, "potential.grid"),
                          mems::grid_file_string(*ctx.mesh, psi.values, cfg.hash));

  const mems::TraceData traces =
      mems::extract_traces(psi, u, p, ctx.trace_mode);
  mems::CsvTable table({"x", "lower_dx", "lower_dz", "upper_dx", "upper_dz",
                        "top_dx", "top_dz"});
  for (size_t i = 0; i < traces.x.size(); ++i)
    table.add_row({traces.x[i], traces.grad_lower[i].x, traces.grad_lower[i].z,
                   traces.grad_upper[i].x, traces.grad_upper[i].z,
                   traces.grad_top[i].x, traces.grad_top[i].z});
  mems::write_text_atomic(out_path(cfg, "traces.csv"),
                          table.to_string(cfg.hash));

  const double e_elec = mems::electrostatic_energy(psi, u, p);
  const double e_mech = mems::mechanical_energy(u, p);
  write_json_file(cfg, "energy.json",
                  {{"command", "solve"},
                   {"e_elec", e_elec},
                   {"e_mech", e_mech},
                   {"e_total", e_elec + e_mech},
                   {"min_u", u.min_value()},
                   {"mesh", mesh_json(cfg)},
                   {"solver", solver_json(psi.info)}});
  return 0;
}

int cmd_energy(const mems::RunConfig& cfg) {
  const mems::SolveContext ctx = make_run_context(cfg);
  const mems::DeflectionProfile u = make_deflection(cfg);
  const mems::EnergyReport rep = mems::total_energy(u, cfg.physical, ctx);
  write_json_file(cfg, "energy.json",
                  {{"command", "energy"},
                   {"e_elec", rep.electrostatic},
                   {"e_mech", rep.mechanical},
                   {"e_penalty", rep.penalty},
                   {"e_total", rep.total},
                   {"min_u", u.min_value()},
                   {"mesh", mesh_json(cfg)},
                   {"solver", solver_json(rep.solve_info)}});
  return 0;
}

int cmd_force(const mems::RunConfig& cfg) {
  const mems::PhysicalParams& p = cfg.physical;
  const mems::SolveContext ctx = make_run_context(cfg);
  const mems::DeflectionProfile u = make_deflection(cfg);

  const mems::PotentialField psi =
      mems::solve_potential(u, p, ctx.mesh, ctx.bdata, ctx.solver);
  const mems::TraceData traces =
      mems::extract_traces(psi, u, p, ctx.trace_mode);
  const mems::ForceProfile force = mems::electrostatic_force(traces, u, p);
  const mems::JumpResiduals jumps =
      mems::jump_residuals(psi, u, p, ctx.trace_mode);

  mems::CsvTable table({"x", "g", "term_tang", "term_norm", "term_top"});
  for (size_t i = 0; i < force.x.size(); ++i)
    table.add_row({force.x[i], force.g[i], force.term_tang[i],
                   force.term_norm[i], force.term_top[i]});
  mems::write_text_atomic(out_path(cfg, "force.csv"), table.to_string(cfg.hash));

  write_json_file(cfg, "force.json",
                  {{"command", "force"},
                   {"min_g", force.min()},
                   {"max_g", force.max()},
                   {"jump_F", jumps.jump_F},
                   {"jump_sigmaG", jumps.jump_sigmaG},
                   {"quad_F", jumps.quad_F},
                   {"quad_FG", jumps.quad_FG},
                   {"quad_G", jumps.quad_G},
                   {"solver", solver_json(psi.info)}});
  return 0;
}

int cmd_minimize(const mems::RunConfig& cfg) {
  const mems::PhysicalParams& p = cfg.physical;
  const mems::SolveContext ctx = make_run_context(cfg);
  const mems::DeflectionProfile u0 = make_deflection(cfg);

  const mems::MinimizationState state =
      mems::minimize_total_energy(p, cfg.minimize, u0, ctx);

  mems::CsvTable table({"iteration", "e_mech", "e_elec", "e_penalty", "e_total",
                        "vi_residual", "step", "min_u", "grad_norm"});
  for (const mems::IterationRecord& r : state.history)
    table.add_row({static_cast<double>(r.iteration), r.e_mech, r.e_elec,
                   r.e_penalty, r.e_total, r.vi_residual, r.step, r.min_u,
                   r.grad_norm});
  mems::write_text_atomic(out_path(cfg, "iterates.csv"),
                          table.to_string(cfg.hash));
  mems::write_text_atomic(out_path(cfg, "final_state.dat"),
                          mems::deflection_file_string(state.u, p.H, cfg.hash));

  const auto& uv = state.u.u_values();
  write_json_file(
      cfg, "minimize.json",
      {{"command", "minimize"},
       {"converged", state.converged},
       {"iterations", state.iterations},
       {"message", state.message},
       {"e_total", state.energy.total},
       {"e_elec", state.energy.electrostatic},
       {"e_mech", state.energy.mechanical},
       {"e_penalty", state.energy.penalty},
       {"vi_residual", state.vi_residual},
       {"min_u", state.u.min_value()},
       {"max_u", *std::max_element(uv.begin(), uv.end())},
       {"active_set_size", state.active_set.size()},
       {"obstacle_contact", state.obstacle_contact}});
  if (!state.converged)
    std::cerr << "minimize: not converged: " << state.message << "\n";
  return state.converged ? 0 : 1;
}

int cmd_sweep(const mems::RunConfig& cfg) {
  std::vector<double> vs = cfg.sweep.v_values;
  std::sort(vs.begin(), vs.end());

  mems::CsvTable table({"V", "converged", "iterations", "e_total", "min_u",
                        "max_u", "vi_residual"});
  json runs = json::array();
  bool all_converged = true;
  bool monotone = true;
  double prev_min = 1.0;
  for (size_t i = 0; i < vs.size(); ++i) {
    mems::RunConfig run_cfg = cfg;
    run_cfg.physical.V = vs[i];
    const mems::SolveContext ctx = make_run_context(run_cfg);
    const mems::DeflectionProfile u0 = make_deflection(run_cfg);
    const mems::MinimizationState state =
        mems::minimize_total_energy(run_cfg.physical, run_cfg.minimize, u0, ctx);

    const auto& uv = state.u.u_values();
    const double max_u = *std::max_element(uv.begin(), uv.end());
    table.add_row({vs[i], state.converged ? 1.0 : 0.0,
                   static_cast<double>(state.iterations), state.energy.total,
                   state.u.min_value(), max_u, state.vi_residual});
    runs.push_back({{"V", vs[i]},
                    {"converged", state.converged},
                    {"iterations", state.iterations},
                    {"e_total", state.energy.total},
                    {"min_u", state.u.min_value()},
                    {"vi_residual", state.vi_residual}});
    all_converged = all_converged && state.converged;
    if (i > 0 && state.u.min_value() > prev_min + 1e-12) monotone = false;
    prev_min = state.u.min_value();
  }
  mems::write_text_atomic(out_path(cfg, "sweep.csv"), table.to_string(cfg.hash));
  write_json_file(cfg, "sweep.json",
                  {{"command", "sweep"},
                   {"runs", runs},
                   {"all_converged", all_converged},
                   {"monotone_deepening", monotone}});
  if (!all_converged) std::cerr << "sweep: at least one run did not converge\n";
  return all_converged ? 0 : 1;
}

// --------------------------------------------------------------------------

struct ProbeOutcome {
  std::string name;
  bool pass = false;
};

ProbeOutcome run_derivative_probe(const mems::RunConfig& cfg,
                                  const mems::SolveContext& ctx,
                                  const mems::DeflectionProfile& u) {
  const mems::PhysicalParams& p = cfg.physical;
  const size_t n_steps = cfg.verify.fd_steps.size();
  std::vector<std::string> cols{"direction"};
  for (size_t s = 0; s < n_steps; ++s) cols.push_back("q" + std::to_string(s + 1));
  cols.insert(cols.end(), {"fd_extrapolated", "g_pairing", "mismatch_rel"});
  mems::CsvTable table(cols);

  bool pass = true;
  double worst = 0.0;
  for (const std::string& id : mems::catalogue_ids()) {
    const mems::DeflectionProfile theta =
        mems::catalogue_profile(id, 1.0, p.L, u.n_cells(), -2.0 * p.H);
    const mems::DerivativeReport rep = mems::fd_directional_derivative(
        u, theta, p, ctx, cfg.verify.fd_steps, id);

    std::vector<std::string> row{id};
    for (double q : rep.quotients) row.push_back(mems::format_double(q));
    row.push_back(mems::format_double(rep.fd_extrapolated));
    row.push_back(mems::format_double(rep.g_pairing));
    row.push_back(mems::format_double(rep.mismatch_rel));
    table.add_text_row(row);

    worst = std::max(worst, rep.mismatch_rel);
    pass = pass && rep.mismatch_rel <= cfg.verify.derivative_tol;
  }
  mems::write_text_atomic(out_path(cfg, "verify_derivative.csv"),
                          table.to_string(cfg.hash));
  write_json_file(cfg, "verify_derivative.json",
                  {{"probe", "derivative"},
                   {"worst_mismatch", worst},
                   {"tolerance", cfg.verify.derivative_tol},
                   {"pass", pass}});
  return {"derivative", pass};
}

ProbeOutcome run_mms_probe(const mems::RunConfig& cfg) {
  const mems::MmsReport rep =
      mems::mms_convergence(cfg.physical, cfg.verify.mms_ladder);
  mems::CsvTable table({"nx", "err_l2", "err_h1", "flux_jump"});
  for (const mems::MmsLevel& lvl : rep.levels)
    table.add_row({static_cast<double>(lvl.nx), lvl.err_l2, lvl.err_h1,
                   lvl.flux_jump});
  mems::write_text_atomic(out_path(cfg, "verify_mms.csv"),
                          table.to_string(cfg.hash));
  const bool pass = rep.order_l2 >= 1.9 && rep.order_h1 >= 0.9;
  write_json_file(cfg, "verify_mms.json",
                  {{"probe", "mms"},
                   {"order_l2", rep.order_l2},
                   {"order_h1", rep.order_h1},
                   {"pass", pass}});
  return {"mms", pass};
}

ProbeOutcome run_monotonicity_probe(const mems::RunConfig& cfg,
                                    const mems::SolveContext& ctx) {
  const mems::MonotonicityReport rep = mems::monotonicity_probe(
      cfg.physical, ctx, cfg.verify.monotonicity_tol);
  mems::CsvTable table({"label", "e_lower", "e_upper", "gap", "ok"});
  for (const mems::MonotonicityCase& c : rep.cases)
    table.add_text_row({c.label, mems::format_double(c.e_lower),
                        mems::format_double(c.e_upper),
                        mems::format_double(c.e_upper - c.e_lower),
                        c.ok ? "1" : "0"});
  mems::write_text_atomic(out_path(cfg, "verify_monotonicity.csv"),
                          table.to_string(cfg.hash));
  write_json_file(cfg, "verify_monotonicity.json",
                  {{"probe", "monotonicity"},
                   {"worst_violation", rep.worst_violation},
                   {"tolerance", cfg.verify.monotonicity_tol},
                   {"pass", rep.all_ok}});
  return {"monotonicity", rep.all_ok};
}

ProbeOutcome run_continuity_probe(const mems::RunConfig& cfg,
                                  const mems::SolveContext& ctx,
                                  const mems::DeflectionProfile& u) {
  const mems::PhysicalParams& p = cfg.physical;
  const mems::DeflectionProfile bump =
      mems::catalogue_profile("quartic", -0.5, p.L, u.n_cells(), -2.0 * p.H);
  const mems::ContinuityReport rep =
      mems::continuity_probe(u, bump, p, ctx, cfg.verify.continuity_levels,
                             cfg.verify.continuity_delta0);

  mems::CsvTable table({"delta", "trace_l1", "trace_l2", "trace_l4", "top_l2",
                        "energy_gap", "field_h1"});
  for (const mems::ContinuityLevel& lvl : rep.levels)
    table.add_row({lvl.delta, lvl.trace_l1, lvl.trace_l2, lvl.trace_l4,
                   lvl.top_l2, lvl.energy_gap, lvl.field_h1});
  mems::write_text_atomic(out_path(cfg, "verify_continuity.csv"),
                          table.to_string(cfg.hash));

  const bool pass = rep.slope_trace_l2 <= -0.9 && rep.slope_energy <= -0.9;
  write_json_file(cfg, "verify_continuity.json",
                  {{"probe", "continuity"},
                   {"slope_trace_l2", rep.slope_trace_l2},
                   {"slope_energy", rep.slope_energy},
                   {"slope_field_h1", rep.slope_field_h1},
                   {"tail_monotone", rep.tail_monotone},
                   {"pass", pass}});
  return {"continuity", pass};
}

int cmd_verify(const mems::RunConfig& cfg) {
  if (cfg.verify.probes.empty()) {
    std::cerr << "verify: no probes selected; nothing to do\n";
    write_json_file(cfg, "verify.json",
                    {{"command", "verify"},
                     {"probes", json::array()},
                     {"pass", true}});
    return 0;
  }

  const mems::SolveContext ctx = make_run_context(cfg);
  const mems::DeflectionProfile u = make_deflection(cfg);

  std::vector<ProbeOutcome> outcomes;
  for (const std::string& probe : cfg.verify.probes) {
    if (probe == "derivative") outcomes.push_back(run_derivative_probe(cfg, ctx, u));
    else if (probe == "mms") outcomes.push_back(run_mms_probe(cfg));
    else if (probe == "monotonicity") outcomes.push_back(run_monotonicity_probe(cfg, ctx));
    else if (probe == "continuity") outcomes.push_back(run_continuity_probe(cfg, ctx, u));
  }

  bool all_pass = true;
  json probes = json::array();
  for (const ProbeOutcome& o : outcomes) {
    probes.push_back({{"name", o.name}, {"pass", o.pass}});
    all_pass = all_pass && o.pass;
    std::cout << "probe " << o.name << ": " << (o.pass ? "pass" : "FAIL")
              << "\n";
  }
  write_json_file(cfg, "verify.json",
                  {{"command", "verify"}, {"probes", probes}, {"pass", all_pass}});
  return all_pass ? 0 : 1;
}

// --------------------------------------------------------------------------

int dispatch(const std::string& name, const GlobalOpts& opts) {
  mems::RunConfig cfg;
  try {
    cfg = load_config(opts);
  } catch (const mems::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (name == "solve") return cmd_solve(cfg);
    if (name == "energy") return cmd_energy(cfg);
    if (name == "force") return cmd_force(cfg);
    if (name == "minimize") return cmd_minimize(cfg);
    if (name == "sweep") return cmd_sweep(cfg);
    if (name == "verify") return cmd_verify(cfg);
  } catch (const mems::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "unknown command '" << name << "'\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-D transmission solver and plate-energy minimizer"};
  app.require_subcommand(1);

  GlobalOpts opts;
  const std::vector<std::string> names = {"solve",    "energy", "force",
                                          "minimize", "sweep",  "verify"};
  const std::vector<std::string> descs = {
      "solve the potential on a fixed deflection",
      "evaluate mechanical + electrostatic energy",
      "evaluate the interface force density g(u)",
      "minimize the total energy over the admissible set",
      "run the minimizer over a ladder of voltages",
      "run analytic verification probes"};
  for (size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", opts.config_path, "configuration file")
        ->required();
    sub->add_option("--out", opts.out_override, "output directory override");
    sub->add_flag("--serial", opts.serial,
                  "force deterministic single-threaded execution");
    sub->add_option("--seed", opts.seed, "seed recorded in outputs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  return dispatch(app.get_subcommands().front()->get_name(), opts);
}
