// stripshear: command-line front end over the C API.
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "report.hpp"
#include "stripshear/stripshear.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace stripshear::cli;

namespace {

constexpr int kExitOk = 0, kExitValidation = 1, kExitSolver = 2, kExitVerifyFail = 3;

struct RunError : std::runtime_error {
  RunError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void check(stripshear_status s, const std::string& context) {
  if (s == STRIPSHEAR_OK) return;
  const int code = (s == STRIPSHEAR_INVALID_ARGUMENT || s == STRIPSHEAR_DOMAIN_ERROR)
                       ? kExitValidation
                       : kExitSolver;
  throw RunError(code, context + ": " + stripshear_status_name(s) + ": " + stripshear_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ProfilePtr =
    std::unique_ptr<stripshear_profile, Deleter<stripshear_profile, stripshear_profile_destroy>>;
using TrajectoryPtr = std::unique_ptr<stripshear_trajectory,
                                      Deleter<stripshear_trajectory, stripshear_trajectory_destroy>>;
using ViscoPtr = std::unique_ptr<stripshear_visco_run,
                                 Deleter<stripshear_visco_run, stripshear_visco_run_destroy>>;

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw RunError(kExitValidation, key + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw RunError(kExitValidation, key + ": empty list");
  return out;
}

// Names accept both hyphen and underscore spellings so config keys can use either.
std::string names(const std::string& key) {
  std::string alt = key;
  for (char& c : alt) c = c == '-' ? '_' : c;
  return alt == key ? "--" + key : "--" + key + ",--" + alt;
}

struct SolverFlags {
  stripshear_solver_options opts{};
  SolverFlags() { stripshear_default_solver_options(&opts); }
  void add(CLI::App* app) {
    app->add_option(names("newton-tol"), opts.newton_tol, "final-level Newton tolerance")
        ->capture_default_str();
    app->add_option(names("epsilon-start"), opts.epsilon_start, "first smoothing level")
        ->capture_default_str();
    app->add_option(names("epsilon-end"), opts.epsilon_end, "last smoothing level (<= 1e-8)")
        ->capture_default_str();
    app->add_option(names("max-newton-iters"), opts.max_newton_iters)->capture_default_str();
    app->add_option(names("stability-tol"), opts.stability_tol)->capture_default_str();
    app->add_option(names("yield-tol"), opts.yield_tol, "max-norm of gamma declaring flow")
        ->capture_default_str();
  }
};

// ---- yield-curve ----

struct YieldCurveArgs {
  double lambda_min = 1e-2, lambda_max = 10.0;
  int points = 40;
  int variational_cells = 512;
  std::string out_dir = ".";
  SolverFlags solver;
};

int run_yield_curve(const YieldCurveArgs& a) {
  if (!(a.lambda_min > 0.0 && a.lambda_max > a.lambda_min))
    throw RunError(kExitValidation, "lambda-min/lambda-max: need 0 < lambda-min < lambda-max");
  if (a.points < 2) throw RunError(kExitValidation, "points: need at least 2");
  if (a.variational_cells != 0 && (a.variational_cells < 2 || a.variational_cells % 2))
    throw RunError(kExitValidation, "variational-cells: must be 0 (off) or even and >= 2");
  const auto n = static_cast<std::size_t>(a.points);

  struct Row {
    double lambda, formula, variational, bound, small, large;
  };
  std::vector<Row> rows(n);
  std::vector<std::string> errors(n);
  std::vector<int> codes(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      Row& r = rows[k];
      r.lambda = std::exp(std::log(a.lambda_min) + (std::log(a.lambda_max) - std::log(a.lambda_min)) *
                                                      static_cast<double>(k) /
                                                      static_cast<double>(n - 1));
      if (k == 0) r.lambda = a.lambda_min;
      if (k + 1 == n) r.lambda = a.lambda_max;
      try {
        check(stripshear_theta_of_lambda(r.lambda, &r.formula), "theta_of_lambda");
        r.variational = std::nan("");
        if (a.variational_cells > 0) {
          stripshear_variational_result v;
          check(stripshear_yield_variational(r.lambda, static_cast<size_t>(a.variational_cells),
                                             &a.solver.opts, &v),
                "yield_variational");
          r.variational = v.theta_Y;
        }
        check(stripshear_asymptotic_theta(r.lambda, &r.small, &r.large), "asymptotic_theta");
        r.bound = 1.0 + r.lambda;
      } catch (const RunError& e) {
        errors[k] = e.what();
        codes[k] = e.code;
      }
    }
  };
  const unsigned threads = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < n; ++k)
    if (codes[k]) throw RunError(codes[k], "lambda point " + std::to_string(k) + ": " + errors[k]);

  CsvWriter csv(out_path(a.out_dir, "yield_curve.csv"),
                {"lambda", "theta_formula", "theta_variational", "theta_bound_1_plus_lambda",
                 "small_asym", "large_asym"});
  Plot plot{"Renormalized yield stress", "lambda = ell / h", "theta_Y = tau_Y / S0", true, {}};
  Series formula{"theta_Y (formula)", {}, {}, "#1f4e9c"};
  Series bound{"1 + lambda", {}, {}, "#555555", true};
  Series variational{"variational", {}, {}, "#c0392b", false, true};
  std::size_t violations = 0;
  double worst_rel = 0.0;
  for (const Row& r : rows) {
    csv.row({r.lambda, r.formula, r.variational, r.bound, r.small, r.large});
    formula.x.push_back(r.lambda), formula.y.push_back(r.formula);
    bound.x.push_back(r.lambda), bound.y.push_back(r.bound);
    if (std::isfinite(r.variational)) {
      variational.x.push_back(r.lambda), variational.y.push_back(r.variational);
      worst_rel = std::max(worst_rel, std::abs(r.variational - r.formula) / r.formula);
    }
    if (!(r.formula > 1.0 && r.formula < r.bound)) ++violations;
  }
  csv.close();
  plot.series = {formula, bound};
  if (!variational.x.empty()) plot.series.push_back(variational);
  write_svg(out_path(a.out_dir, "yield_curve.svg"), plot);

  ordered_json j;
  j["command"] = "yield-curve";
  j["points"] = n;
  j["lambda_min"] = a.lambda_min;
  j["lambda_max"] = a.lambda_max;
  j["variational_cells"] = a.variational_cells;
  j["bound_violations"] = violations;
  if (a.variational_cells > 0) j["max_rel_error_variational"] = worst_rel;
  write_json(out_path(a.out_dir, "yield_curve.json"), j);
  std::cout << "yield-curve: " << n << " points, " << violations << " bound violations\n";
  return kExitOk;
}

// ---- profile ----

struct ProfileArgs {
  double lambda = 0.0;
  int samples = 2000;
  std::string out_dir = ".";
};

int run_profile(const ProfileArgs& a) {
  if (a.samples < 2) throw RunError(kExitValidation, "samples: need at least 2");
  stripshear_profile* raw = nullptr;
  check(stripshear_profile_create(a.lambda, static_cast<size_t>(a.samples), &raw), "profile");
  const ProfilePtr prof(raw);
  stripshear_profile_summary s;
  check(stripshear_profile_get_summary(prof.get(), &s), "profile summary");
  std::vector<double> r(s.n_samples), zeta(s.n_samples), phi(s.n_samples);
  check(stripshear_profile_get_samples(prof.get(), r.data(), zeta.data(), phi.data(), s.n_samples),
        "profile samples");

  CsvWriter csv(out_path(a.out_dir, "profile.csv"), {"r", "zeta", "phi"});
  for (std::size_t i = 0; i < s.n_samples; ++i) csv.row({r[i], zeta[i], phi[i]});
  csv.close();

  Series full{"phi_Y (unit mass)", {}, {}, "#1f4e9c"};
  for (std::size_t i = s.n_samples; i-- > 1;) full.x.push_back(-r[i]), full.y.push_back(phi[i]);
  for (std::size_t i = 0; i < s.n_samples; ++i) full.x.push_back(r[i]), full.y.push_back(phi[i]);
  Series z{"zeta(r)", r, zeta, "#c0392b", true};
  write_svg(out_path(a.out_dir, "profile.svg"),
            Plot{"Relaxed minimizer profile", "r = y / h", "value", false, {full, z}});

  ordered_json j;
  j["command"] = "profile";
  j["lambda"] = s.lambda;
  j["theta_Y"] = s.theta_Y;
  j["jump_ratio"] = s.jump_ratio;
  j["jump_ratio_expected"] = (s.theta_Y - 1.0) / s.theta_Y;
  j["relaxed_dissipation"] = s.relaxed_dissipation;
  j["mass"] = s.mass;
  j["samples"] = s.n_samples;
  write_json(out_path(a.out_dir, "profile.json"), j);
  std::cout << "profile: theta_Y " << format_double(s.theta_Y) << ", jump_ratio "
            << format_double(s.jump_ratio) << "\n";
  return kExitOk;
}

// ---- simulate ----

struct SimulateArgs {
  stripshear_nondim_params p{0.0, 1.0, 1.0};
  double theta_max = 0.0;
  int steps = 0;
  int cells = 256;
  std::string out_dir = ".";
  SolverFlags solver;
};

int run_simulate(const SimulateArgs& a) {
  if (a.steps < 1) throw RunError(kExitValidation, "steps: need at least 1");
  stripshear_trajectory* raw = nullptr;
  check(stripshear_evolve(&a.p, static_cast<size_t>(std::max(a.cells, 0)), a.theta_max,
                          static_cast<size_t>(a.steps), &a.solver.opts, &raw),
        "evolve");
  const TrajectoryPtr traj(raw);
  const size_t n = stripshear_trajectory_step_count(traj.get());

  CsvWriter csv(out_path(a.out_dir, "simulate.csv"),
                {"theta", "gamma_max", "gamma_mass", "dissipation_cum", "energy",
                 "stability_residual"});
  Series gmax{"max |gamma|", {}, {}, "#1f4e9c"};
  double cum = 0.0, worst_stab = 0.0;
  for (size_t k = 0; k < n; ++k) {
    stripshear_step_info s;
    check(stripshear_trajectory_step(traj.get(), k, &s), "trajectory step");
    double stab = 0.0;
    check(stripshear_trajectory_stability_residual(traj.get(), k, &a.solver.opts, &stab),
          "stability residual at step " + std::to_string(k));
    cum += s.dissipation_increment;
    worst_stab = std::max(worst_stab, stab);
    csv.row({s.theta, s.gamma_max, s.gamma_mass, cum, s.total_energy, stab});
    gmax.x.push_back(s.theta), gmax.y.push_back(s.gamma_max);
  }
  csv.close();
  write_svg(out_path(a.out_dir, "simulate.svg"),
            Plot{"Incremental evolution", "theta = tau / S0", "max |gamma|", false, {gmax}});

  stripshear_yield_detection det;
  check(stripshear_trajectory_detect_yield(traj.get(), &a.solver.opts, &det), "detect_yield");
  double balance = 0.0, formula = 0.0;
  check(stripshear_trajectory_energy_balance(traj.get(), &balance), "energy balance");
  check(stripshear_theta_of_lambda(a.p.lambda, &formula), "theta_of_lambda");

  ordered_json j;
  j["command"] = "simulate";
  j["lambda"] = a.p.lambda;
  j["Lambda"] = a.p.Lambda;
  j["kappa"] = a.p.kappa;
  j["cells"] = a.cells;
  j["theta_max"] = a.theta_max;
  j["steps"] = a.steps;
  j["detected_yield"] = {{"theta", det.theta},
                         {"uncertainty", det.uncertainty},
                         {"yielded", det.yielded != 0},
                         {"step", det.step}};
  if (!det.yielded) j["detected_yield"]["note"] = "no yield observed";
  j["theta_Y_formula"] = formula;
  j["energy_balance_residual"] = balance;
  j["max_stability_residual"] = worst_stab;
  write_json(out_path(a.out_dir, "simulate.json"), j);
  std::cout << "simulate: " << (det.yielded ? "yield detected at theta " : "no yield observed up to ")
            << format_double(det.theta) << " (+- " << format_double(det.uncertainty)
            << "), formula " << format_double(formula) << "\n";
  return kExitOk;
}

// ---- visco ----

struct ViscoArgs {
  stripshear_visco_params p{};
  std::string hardening = "zero";
  int cells = 256;
  std::string load;       // "t:tau,t:tau,..."
  std::string load_file;  // CSV with t,tau
  double tau_max = 2.0, t_end = 1.0;
  int load_steps = 100;
  std::string m_list;     // optional limit study
  std::string out_dir = ".";
  stripshear_visco_options opts{};
  ViscoArgs() {
    stripshear_default_physical_params(&p.base);
    p.base.m_rate = 0.05;
    stripshear_default_visco_options(&opts);
  }
};

void read_load(const ViscoArgs& a, std::vector<double>& t, std::vector<double>& tau) {
  if (!a.load.empty() && !a.load_file.empty())
    throw RunError(kExitValidation, "load and load-file are mutually exclusive");
  auto parse_pair = [](const std::string& item, const std::string& key, double& x, double& y) {
    const auto c = item.find_first_of(":,");
    try {
      if (c == std::string::npos) throw std::invalid_argument("");
      x = std::stod(item.substr(0, c));
      y = std::stod(item.substr(c + 1));
    } catch (const std::exception&) {
      throw RunError(kExitValidation, key + ": cannot parse '" + item + "' as t:tau");
    }
  };
  if (!a.load.empty()) {
    std::stringstream ss(a.load);
    std::string item;
    while (std::getline(ss, item, ',')) {
      double x, y;
      parse_pair(item, "load", x, y);
      t.push_back(x), tau.push_back(y);
    }
  } else if (!a.load_file.empty()) {
    std::ifstream in(a.load_file);
    if (!in) throw RunError(kExitValidation, "load-file: cannot open '" + a.load_file + "'");
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (first && line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') {
        first = false;  // header row
        continue;
      }
      first = false;
      double x, y;
      parse_pair(line, "load-file", x, y);
      t.push_back(x), tau.push_back(y);
    }
  } else {
    if (a.load_steps < 1) throw RunError(kExitValidation, "load-steps: need at least 1");
    for (int k = 0; k <= a.load_steps; ++k) {
      const double f = static_cast<double>(k) / a.load_steps;
      t.push_back(a.t_end * f), tau.push_back(a.tau_max * f);
    }
  }
  if (t.size() < 2) throw RunError(kExitValidation, "load: need at least two points");
}

int run_visco(ViscoArgs a) {
  if (a.hardening == "zero") a.p.hardening = STRIPSHEAR_HARDENING_ZERO;
  else if (a.hardening == "linear") a.p.hardening = STRIPSHEAR_HARDENING_LINEAR;
  else if (a.hardening == "saturating") a.p.hardening = STRIPSHEAR_HARDENING_SATURATING;
  else throw RunError(kExitValidation, "hardening: expected zero, linear or saturating");
  if (!a.m_list.empty() && a.p.hardening != STRIPSHEAR_HARDENING_ZERO)
    throw RunError(kExitValidation, "m-list: the limit study requires --hardening zero");
  std::vector<double> t, tau;
  read_load(a, t, tau);

  stripshear_visco_run* raw = nullptr;
  check(stripshear_visco_simulate(&a.p, static_cast<size_t>(std::max(a.cells, 0)), t.data(),
                                  tau.data(), t.size(), &a.opts, &raw),
        "simulate_visco");
  const ViscoPtr run(raw);
  const size_t n_states = stripshear_visco_state_count(run.get());
  const size_t n_nodes = stripshear_visco_node_count(run.get());

  CsvWriter csv(out_path(a.out_dir, "visco.csv"),
                {"t", "tau", "gamma_max", "gamma_mean", "S_min", "S_max", "dissipated"});
  Series gmax{"max |gamma|", {}, {}, "#1f4e9c"};
  stripshear_visco_state_info s{};
  for (size_t k = 0; k < n_states; ++k) {
    check(stripshear_visco_state(run.get(), k, &s), "visco state");
    csv.row({s.t, tau[k], s.gamma_max, s.gamma_mean, s.S_min, s.S_max, s.dissipated});
    gmax.x.push_back(s.t), gmax.y.push_back(s.gamma_max);
  }
  csv.close();

  std::vector<double> y(n_nodes), g(n_nodes), u(n_nodes);
  check(stripshear_visco_nodes(run.get(), y.data(), n_nodes), "visco nodes");
  check(stripshear_visco_gamma(run.get(), n_states - 1, g.data(), n_nodes), "visco gamma");
  check(stripshear_visco_displacement(run.get(), n_states - 1, u.data(), n_nodes),
        "recover_displacement");
  CsvWriter disp(out_path(a.out_dir, "visco_displacement.csv"), {"y", "gamma", "u"});
  for (size_t i = 0; i < n_nodes; ++i) disp.row({y[i], g[i], u[i]});
  disp.close();
  write_svg(out_path(a.out_dir, "visco.svg"),
            Plot{"Viscoplastic response", "t", "max |gamma|", false, {gmax}});

  ordered_json j;
  j["command"] = "visco";
  j["m_rate"] = a.p.base.m_rate;
  j["hardening"] = a.hardening;
  j["cells"] = a.cells;
  j["load_points"] = t.size();
  j["final"] = {{"t", s.t},           {"tau", tau.back()},     {"gamma_max", s.gamma_max},
                {"S_min", s.S_min},   {"S_max", s.S_max},      {"dissipated", s.dissipated},
                {"u_top", u.back()}};
  if (!a.m_list.empty()) {
    const std::vector<double> ms = parse_list(a.m_list, "m-list");
    std::vector<double> disc(ms.size());
    int decreasing = 0;
    if (a.load_steps < 1) throw RunError(kExitValidation, "load-steps: need at least 1");
    check(stripshear_visco_limit_study(&a.p, static_cast<size_t>(std::max(a.cells, 0)), ms.data(),
                                       ms.size(), a.tau_max, a.t_end,
                                       static_cast<size_t>(a.load_steps), disc.data(), &decreasing),
          "rate_independent_limit_study");
    ordered_json study = ordered_json::array();
    for (size_t k = 0; k < ms.size(); ++k)
      study.push_back({{"m_rate", ms[k]}, {"discrepancy", disc[k]}});
    j["limit_study"] = {{"entries", study}, {"decreasing", decreasing != 0}};
  }
  write_json(out_path(a.out_dir, "visco.json"), j);
  std::cout << "visco: " << n_states << " states, final max |gamma| " << format_double(s.gamma_max)
            << "\n";
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  int criterion = 0;
  std::string json;
};

int run_verify(const VerifyArgs& a) {
  const int count = static_cast<int>(stripshear_verify_count());
  if (a.criterion < 0 || a.criterion > count)
    throw RunError(kExitValidation, "criterion: expected 1.." + std::to_string(count));
  const int first = a.criterion ? a.criterion : 1, last = a.criterion ? a.criterion : count;
  int failed = 0;
  ordered_json results = ordered_json::array();
  for (int id = first; id <= last; ++id) {
    stripshear_criterion_result r;
    check(stripshear_verify_run(id, &r), "verify");
    if (!r.passed) ++failed;
    std::printf("%s %2d %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name, r.detail,
                r.seconds);
    std::fflush(stdout);
    results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed != 0},
                       {"detail", r.detail}});
  }
  std::printf("%d/%d criteria passed\n", last - first + 1 - failed, last - first + 1);
  if (!a.json.empty()) {
    const fs::path p(a.json);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_json(a.json, ordered_json{{"command", "verify"}, {"results", results}});
  }
  return failed ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  try {
    args = expand_arguments(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  CLI::App app{"Strip-shear gradient plasticity laboratory"};
  app.require_subcommand(1);
  app.footer("Every command also accepts --config <file> with key=value lines (keys equal flag "
             "names); flags given on the command line override the file.");
  app.set_version_flag("--version", std::string(stripshear_version()));

  YieldCurveArgs yc;
  auto* cmd_yc = app.add_subcommand("yield-curve", "theta_Y(lambda) sweep on a log grid");
  cmd_yc->add_option(names("lambda-min"), yc.lambda_min)->capture_default_str();
  cmd_yc->add_option(names("lambda-max"), yc.lambda_max)->capture_default_str();
  cmd_yc->add_option("--points", yc.points)->capture_default_str();
  cmd_yc->add_option(names("variational-cells"), yc.variational_cells,
                     "mesh for the variational column, 0 disables")
      ->capture_default_str();
  cmd_yc->add_option(names("out-dir"), yc.out_dir)->capture_default_str();
  yc.solver.add(cmd_yc);

  ProfileArgs pa;
  auto* cmd_pr = app.add_subcommand("profile", "relaxed minimizer profile at the yield stress");
  cmd_pr->add_option("--lambda", pa.lambda)->required();
  cmd_pr->add_option("--samples", pa.samples, "output intervals on [0, 1]")->capture_default_str();
  cmd_pr->add_option(names("out-dir"), pa.out_dir)->capture_default_str();

  SimulateArgs sa;
  auto* cmd_sim = app.add_subcommand("simulate", "incremental evolution under proportional load");
  cmd_sim->add_option("--lambda", sa.p.lambda)->required();
  cmd_sim->add_option("--Lambda", sa.p.Lambda)->capture_default_str();
  cmd_sim->add_option("--kappa", sa.p.kappa)->capture_default_str();
  cmd_sim->add_option(names("theta-max"), sa.theta_max)->required();
  cmd_sim->add_option("--steps", sa.steps)->required();
  cmd_sim->add_option("--cells", sa.cells)->capture_default_str();
  cmd_sim->add_option(names("out-dir"), sa.out_dir)->capture_default_str();
  sa.solver.add(cmd_sim);

  ViscoArgs va;
  auto* cmd_v = app.add_subcommand("visco", "viscoplastic simulation in physical variables");
  cmd_v->add_option("--S0", va.p.base.S0)->capture_default_str();
  cmd_v->add_option("--kappa", va.p.base.kappa)->capture_default_str();
  cmd_v->add_option("--L", va.p.base.L)->capture_default_str();
  cmd_v->add_option("--ell", va.p.base.ell)->capture_default_str();
  cmd_v->add_option(names("half-height"), va.p.base.h, "strip half-height h")->capture_default_str();
  cmd_v->add_option("--G", va.p.base.G)->capture_default_str();
  cmd_v->add_option("--d0", va.p.base.d0)->capture_default_str();
  cmd_v->add_option(names("m-rate"), va.p.base.m_rate)->capture_default_str();
  cmd_v->add_option("--hardening", va.hardening, "zero, linear or saturating")
      ->capture_default_str();
  cmd_v->add_option("--h0", va.p.h0)->capture_default_str();
  cmd_v->add_option(names("S-sat"), va.p.S_sat)->capture_default_str();
  cmd_v->add_option("--cells", va.cells)->capture_default_str();
  cmd_v->add_option("--load", va.load, "piecewise-linear history t:tau,t:tau,...");
  cmd_v->add_option(names("load-file"), va.load_file, "CSV with columns t,tau");
  cmd_v->add_option(names("tau-max"), va.tau_max, "ramp target when no load is given")
      ->capture_default_str();
  cmd_v->add_option(names("t-end"), va.t_end)->capture_default_str();
  cmd_v->add_option(names("load-steps"), va.load_steps)->capture_default_str();
  cmd_v->add_option(names("max-dt"), va.opts.max_dt)->capture_default_str();
  cmd_v->add_option(names("newton-tol"), va.opts.newton_tol)->capture_default_str();
  cmd_v->add_option(names("m-list"), va.m_list, "run the m -> 0 limit study, e.g. 0.2,0.1,0.05");
  cmd_v->add_option(names("out-dir"), va.out_dir)->capture_default_str();

  VerifyArgs ver;
  auto* cmd_ver = app.add_subcommand("verify", "run the acceptance suite");
  cmd_ver->add_option("--criterion", ver.criterion, "run a single criterion (1-based)");
  cmd_ver->add_option("--json", ver.json, "also write results to this file");

  for (CLI::App* sub : {cmd_yc, cmd_pr, cmd_sim, cmd_v, cmd_ver})
    for (CLI::Option* opt : sub->get_options())
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*cmd_yc) return run_yield_curve(yc);
    if (*cmd_pr) return run_profile(pa);
    if (*cmd_sim) return run_simulate(sa);
    if (*cmd_v) return run_visco(va);
    if (*cmd_ver) return run_verify(ver);
  } catch (const RunError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
