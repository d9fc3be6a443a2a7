// gat: command line front end.
//
//   gat <subcommand> [--config FILE] [--out DIR] [--seed N] [--emit-plots]
//
// Subcommands: design, simulate, optimize, disorder, scaling, dispersion-scan,
// appendix-a. Exit status 0 on success, 2 for configuration errors, 3 for
// numerical failures.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gat/delay_model.hpp"
#include "gat/design.hpp"
#include "gat/dynamics.hpp"
#include "gat/errors.hpp"
#include "gat/io.hpp"
#include "gat/optimize.hpp"
#include "gat/studies.hpp"
#include "gat/units.hpp"

namespace fs = std::filesystem;
using namespace gat;
using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

struct Ctx {
  Config cfg;
  fs::path out;
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool plots = false;
  double omega_q = 50.0;

  std::string path(const std::string& name) const { return (out / name).string(); }
  std::uint64_t rng_seed() const { return seed_given ? seed : std::uint64_t(cfg.get_int("opt.seed", 1)); }
};

Dispersion make_dispersion(const Ctx& c) {
  const std::string v = c.cfg.get_string("dispersion.variant", "linear_chiral");
  if (v == "linear_chiral") return Dispersion(LinearChiral{});
  if (v == "linear_bidirectional") return Dispersion(LinearBidirectional{});
  if (v == "sinusoidal") return Dispersion(Sinusoidal{c.omega_q, c.cfg.get_double("dispersion.W_tau", 10.0), 1.0});
  if (v == "cosine")
    return Dispersion(CosineBand{c.cfg.get_double("dispersion.omega_r_tau", c.omega_q),
                                 c.cfg.get_double("dispersion.J_tau", 10.0),
                                 c.cfg.get_double("dispersion.a_over_vgtau", 0.05)});
  fail(ErrorKind::InvalidConfig, "unknown dispersion.variant " + v);
}

DecayLaw make_decay(const Ctx& c) {
  const std::string v = c.cfg.get_string("decay.variant", "exponential");
  if (v == "exponential") return DecayLaw(Exponential{c.cfg.get_double("decay.gamma_tau", 2.0)});
  if (v == "gaussian") return DecayLaw(Gaussian{c.cfg.get_double("decay.tau", 1.0)});
  fail(ErrorKind::InvalidConfig, "unknown decay.variant " + v);
}

ModeGrid make_grid(const Ctx& c, const Dispersion& disp) {
  const double k_q = disp.k_of_omega(c.omega_q);
  const double K = c.cfg.get_double("grid.K", 150.0);
  const Eigen::Index n = c.cfg.get_int("grid.n_modes", 4096);
  ModeGrid g = disp.is_chiral() || c.cfg.get_string("sim.chiral_mode", "") == "assume_chiral"
                   ? chiral_grid(k_q, K, n)
                   : bidirectional_grid(k_q, K, n);
  if (!disp.is_linear()) g = clip_to_band(g, disp);
  return g;
}

double distance(const Ctx& c) { return c.cfg.get_double("pair.distance_over_vgtau", 30.0); }

void emit_plot(const Ctx& c, const std::string& name, const std::string& body) {
  if (c.plots) write_text(c.path(name + ".gp"), body);
}

void print_json(const Ctx& c, const std::string& name, const json& j) {
  write_text(c.path(name), j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
}

int cmd_design(const Ctx& c) {
  const Dispersion disp = make_dispersion(c);
  const DecayLaw decay = make_decay(c);
  const double d = distance(c);
  const double T = c.cfg.get_double("design.T_over_tau", d / disp.v_max());
  const double eps = c.cfg.get_double("design.eps", 0.01);
  const SampledCoupling g = design_continuum(decay, disp, c.omega_q, make_grid(c, disp), d, T, eps);
  write_design_csv(c.path("design.csv"), g);
  ProfileOptions po;
  po.include_carrier = false;
  const SpatialProfile p = spatial_profile(g, c.cfg.get_double("design.x_lo", -5.0),
                                           c.cfg.get_double("design.x_hi", 0.5 * d),
                                           c.cfg.get_int("design.n_x", 2000), po);
  write_profile_csv(c.path("profile.csv"), p);
  emit_plot(c, "design",
            "set datafile separator ','\nset xlabel 'k'\nplot 'design.csv' u 1:2 w l t 'Re g', '' u 1:3 w l t 'Im g'\n");
  emit_plot(c, "profile",
            "set datafile separator ','\nset xlabel 'x'\nplot 'profile.csv' u 1:(sqrt($2**2+$3**2)) w l t '|g(x)|'\n");
  print_json(c, "design.json", {{"decay", decay.name()}, {"dispersion", disp.name()}, {"d", d}, {"T", T},
                                {"n_modes", g.grid.size()}, {"eps", eps}});
  return 0;
}

int cmd_simulate(const Ctx& c) {
  const Dispersion disp = make_dispersion(c);
  const double d = distance(c);
  SimOptions so;
  so.t_max = c.cfg.get_double("sim.t_max_over_tau", 0.0);
  so.n_times = c.cfg.get_int("sim.n_times", 2000);
  TrajectoryResult tr;
  const double k_q = disp.k_of_omega(c.omega_q);
  if (c.cfg.has("legs.file")) {
    SystemSpec spec;
    spec.pair = GiantAtomPair{read_legs_csv(c.cfg.get_string("legs.file", ""), 2 * pi / k_q), d};
    spec.disp = disp;
    spec.omega_q = c.omega_q;
    spec.grid = make_grid(c, disp);
    spec.chiral_mode = c.cfg.get_string("sim.chiral_mode", disp.is_chiral() ? "assume_chiral" : "bidirectional") ==
                               "assume_chiral"
                           ? ChiralMode::AssumeChiral
                           : ChiralMode::Bidirectional;
    tr = simulate(spec, so);
  } else {
    const DecayLaw decay = make_decay(c);
    const double T = c.cfg.get_double("design.T_over_tau", d / disp.v_max());
    const SampledCoupling g1 =
        design_continuum(decay, disp, c.omega_q, make_grid(c, disp), d, T, c.cfg.get_double("design.eps", 0.01));
    tr = simulate_gk(g1, mirror_coupling(g1, d), disp, c.omega_q, so);
  }
  write_trajectory_csv(c.path("trajectory.csv"), tr);
  write_field_csv(c.path("field.csv"), tr);
  emit_plot(c, "trajectory",
            "set datafile separator ','\nset xlabel 't/tau'\nplot 'trajectory.csv' u 1:2 w l t '|c1|^2', '' u 1:3 w l "
            "t '|c2|^2'\n");
  print_json(c, "simulate.json",
             {{"p2_max", tr.p2_max}, {"t_star", tr.t_star}, {"norm_error", tr.norm_error},
              {"left_population", left_moving_population(tr)}});
  return 0;
}

PulseTarget make_target(const Ctx& c) {
  const std::string kind = c.cfg.get_string("pulse.target", "gaussian");
  if (kind != "gaussian" && kind != "exponential") fail(ErrorKind::InvalidConfig, "pulse.target must be gaussian or exponential");
  const DecayLaw decay = kind == "gaussian" ? DecayLaw(Gaussian{1.0}) : DecayLaw(Exponential{2.0});
  const int n_legs = int(c.cfg.get_int("opt.n_legs", 3));
  const double L = c.cfg.get_double("opt.window_over_vgtau", 2.0 * n_legs);
  return design_pulse_target(decay, c.cfg.get_double("pulse.K", 12.0), c.cfg.get_int("pulse.n_k", 481), 0.5 * L);
}

int cmd_optimize(const Ctx& c) {
  const std::string mode = c.cfg.get_string("opt.mode", "fidelity");
  const double k_q = c.omega_q;
  if (mode == "fidelity") {
    FidelityProblem p;
    p.n_legs = int(c.cfg.get_int("opt.n_legs", 2));
    p.n_starts = int(c.cfg.get_int("opt.n_starts", 50));
    p.rng_seed = c.rng_seed();
    p.window = c.cfg.get_double("opt.window_over_vgtau", 0.0);
    p.disp = make_dispersion(c);
    p.omega_q = c.omega_q;
    p.d = distance(c);
    p.dt = c.cfg.get_double("opt.dt", 5e-3);
    p.max_iters = int(c.cfg.get_int("opt.max_iters", 400));
    p.grid_K = c.cfg.get_double("grid.K", 150.0);
    p.grid_n = c.cfg.get_int("grid.n_modes", 2048);
    const OptimResult r = optimize_fidelity(p);
    write_legs_csv(c.path("legs.csv"), r.best);
    json iters = json::array();
    for (const auto& h : r.history) iters.push_back(h.n_iters);
    json objs = json::array();
    for (const auto& h : r.history) objs.push_back(h.objective);
    print_json(c, "optimize.json", {{"mode", mode}, {"n_legs", p.n_legs}, {"p2_max", r.p2_max}, {"t_star", r.t_star},
                                    {"seed", p.rng_seed}, {"n_iters", iters}, {"objective", objs}});
    return 0;
  }
  if (mode == "pulse") {
    PulseProblem p;
    p.target = make_target(c);
    p.n_legs = int(c.cfg.get_int("opt.n_legs", 3));
    p.n_starts = int(c.cfg.get_int("opt.n_starts", 20));
    p.rng_seed = c.rng_seed();
    p.window = c.cfg.get_double("opt.window_over_vgtau", 0.0);
    p.max_iters = int(c.cfg.get_int("opt.max_iters", 400));
    const PulseResult r = optimize_pulse_shape(p);
    write_legs_csv(c.path("legs.csv"), from_tilde(r.best, k_q));
    json iters = json::array();
    for (const auto& h : r.history) iters.push_back(h.n_iters);
    const double p2 = fidelity_of_target_pulses(r.best, distance(c));
    print_json(c, "optimize.json", {{"mode", mode}, {"n_legs", p.n_legs}, {"f_target", r.f_target}, {"p2_max", p2},
                                    {"seed", p.rng_seed}, {"n_iters", iters}});
    return 0;
  }
  fail(ErrorKind::InvalidConfig, "opt.mode must be fidelity or pulse");
}

LegSet legs_or_optimum(const Ctx& c, int default_n) {
  const double k_q = c.omega_q;
  if (c.cfg.has("legs.file")) return read_legs_csv(c.cfg.get_string("legs.file", ""), 2 * pi / k_q);
  FidelityProblem p;
  p.omega_q = c.omega_q;
  p.d = distance(c);
  p.n_starts = int(c.cfg.get_int("opt.n_starts", 50));
  p.rng_seed = c.rng_seed();
  p.dt = c.cfg.get_double("opt.dt", 5e-3);
  const int n = int(c.cfg.get_int("opt.n_legs", default_n));
  return optimize_ladder(p, 1, n).back().best;
}

void write_report(const Ctx& c, const std::string& name, const StudyReport& rep) {
  write_table_csv(c.path(name + ".csv"), rep);
  const std::string js = report_json(rep);
  write_text(c.path(name + ".json"), js + "\n");
  std::cout << js << "\n";
}

int cmd_disorder(const Ctx& c) {
  const Dispersion disp = make_dispersion(c);
  const LegSet base = legs_or_optimum(c, 6);
  const double lambda_q = 2 * pi / disp.k_of_omega(c.omega_q);
  DisorderStudy s;
  s.base = base;
  s.sigma = c.cfg.get_double("disorder.sigma_over_lambda", 0.05) * lambda_q;
  s.n_samples = int(c.cfg.get_int("disorder.n_samples", 200));
  s.seed = c.rng_seed();
  StudyReport rep = disorder_sweep(s, disp, c.omega_q, distance(c));
  rep.config_hash = config_hash(c.cfg.canonical() + "seed=" + std::to_string(s.seed));
  write_report(c, "disorder", rep);
  emit_plot(c, "disorder",
            "set datafile separator ','\nset xlabel 'P2'\nbin(x)=0.005*floor(x/0.005)\nset style fill solid\n"
            "plot 'disorder.csv' every ::1 u (bin($2)):($4) smooth freq w boxes t 'samples'\n");
  return 0;
}

int cmd_scaling(const Ctx& c) {
  FidelityProblem p;
  p.omega_q = c.omega_q;
  p.d = distance(c);
  p.n_starts = int(c.cfg.get_int("opt.n_starts", 50));
  p.rng_seed = c.rng_seed();
  p.dt = c.cfg.get_double("opt.dt", 5e-3);
  p.window = c.cfg.get_double("opt.window_over_vgtau", 0.0);
  const int lo = int(c.cfg.get_int("opt.n_min", 1));
  const int hi = int(c.cfg.get_int("opt.n_max", 13));
  ScalingResult r = scaling_study(p, lo, hi);
  r.report.config_hash = config_hash(c.cfg.canonical() + "seed=" + std::to_string(p.rng_seed));
  write_report(c, "scaling", r.report);
  for (const auto& o : r.optima)
    write_legs_csv(c.path("legs_N" + std::to_string(o.best_tilde.size()) + ".csv"), o.best);
  emit_plot(c, "scaling",
            "set datafile separator ','\nset xlabel 'N'\nset ylabel '1/(1-P2)'\nplot 'scaling.csv' every ::1 u 1:3 w lp "
            "t 'optimum'\n");
  return 0;
}

int cmd_dispersion_scan(const Ctx& c) {
  const LegSet legs = legs_or_optimum(c, 5);
  FidelityProblem p;
  p.omega_q = c.omega_q;
  p.n_starts = 1;
  p.rng_seed = c.rng_seed();
  p.grid_K = c.cfg.get_double("grid.K", 150.0);
  p.grid_n = c.cfg.get_int("grid.n_modes", 2048);
  p.max_iters = int(c.cfg.get_int("opt.max_iters", 200));
  const auto W = c.cfg.get_list("scan.W_tau_list", {2.0, 5.0});
  const auto d = c.cfg.get_list("scan.d_list", {10.0, 20.0, 30.0, 40.0});
  StudyReport rep = dispersion_scan(reparametrize_tilde(legs, c.omega_q), W, d, c.cfg.get_bool("scan.reoptimize", false), p);
  rep.config_hash = config_hash(c.cfg.canonical() + "seed=" + std::to_string(p.rng_seed));
  write_report(c, "dispersion_scan", rep);
  emit_plot(c, "dispersion_scan",
            "set datafile separator ','\nset xlabel 'd'\nplot 'dispersion_scan.csv' every ::1 u 2:3 w p t 'fixed legs', "
            "'' every ::1 u 2:4 w p t 're-optimized'\n");
  return 0;
}

int cmd_appendix_a(const Ctx& c) {
  AppendixAOptions o;
  o.omega_q = c.omega_q;
  o.n_legs = int(c.cfg.get_int("appendix.n_legs", 10));
  o.extent = c.cfg.get_double("appendix.extent_over_vgtau", 5.0);
  o.d = distance(c);
  o.K = c.cfg.get_double("grid.K", 40.0);
  o.n_modes = c.cfg.get_int("grid.n_modes", 4096);
  StudyReport rep = appendix_a_pipeline(o);
  write_report(c, "appendix_a", rep);
  emit_plot(c, "appendix_a",
            "set datafile separator ','\nset xlabel 'x'\nplot 'appendix_a.csv' every ::1 u 1:2:3 w impulses lc "
            "palette t '|g|'\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"giant-atom state transfer: design, simulation, optimization"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  bool plots = false;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_flag("--emit-plots", plots, "write gnuplot scripts next to the data");

  const std::pair<const char*, int (*)(const Ctx&)> cmds[] = {
      {"design", cmd_design},       {"simulate", cmd_simulate}, {"optimize", cmd_optimize},
      {"disorder", cmd_disorder},   {"scaling", cmd_scaling},   {"dispersion-scan", cmd_dispersion_scan},
      {"appendix-a", cmd_appendix_a}};
  for (const auto& [name, fn] : cmds) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Ctx c;
    if (!config_path.empty()) c.cfg = Config::load(config_path);
    c.out = out_dir;
    fs::create_directories(c.out);
    c.seed = seed;
    c.seed_given = seed_opt->count() > 0;
    c.plots = plots;
    c.omega_q = c.cfg.get_double("units.omega_q_tau", 50.0);
    validate(Units(1.0, 1.0, c.omega_q));
    for (const auto& [name, fn] : cmds)
      if (app.got_subcommand(name)) return fn(c);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidConfig ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
