// Command-line front end for the burnstab shared library. Everything
// numerical goes through the C API in burnstab/burnstab.h; this file only
// parses flags, shuffles files and prints JSON summaries.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burnstab/burnstab.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct ParamInputs {
  double alpha{}, beta{}, gamma{}, zeta{}, eta{}, theta{}, vartheta{}, f0{};
  std::string file;
  CLI::Option *o_alpha{}, *o_beta{}, *o_gamma{}, *o_zeta{}, *o_eta{},
      *o_theta{}, *o_vartheta{}, *o_f0{}, *o_file{};
};

void add_param_flags(CLI::App* cmd, ParamInputs& in) {
  in.o_alpha = cmd->add_option("--alpha", in.alpha, "land consumption by fire");
  in.o_beta = cmd->add_option("--beta", in.beta, "land consumption by prescribed burning");
  in.o_gamma = cmd->add_option("--gamma", in.gamma, "regeneration rate");
  in.o_zeta = cmd->add_option("--zeta", in.zeta, "fuel-to-fire coupling");
  in.o_eta = cmd->add_option("--eta", in.eta, "natural fire decay");
  in.o_theta = cmd->add_option("--theta", in.theta, "policy response (nonzero)");
  in.o_vartheta = cmd->add_option("--vartheta", in.vartheta,
                                  "proactive strength (sets theta = -vartheta)");
  in.o_f0 = cmd->add_option("--f0", in.f0, "target fire activity");
  in.o_file = cmd->add_option("--params", in.file, "JSON file with all parameters");
  in.o_theta->excludes(in.o_vartheta);
}

// Exactly one source: either --params or the full flag set.
int resolve_params(const ParamInputs& in, bs_params* out) {
  const bool any_flag = *in.o_alpha || *in.o_beta || *in.o_gamma ||
                        *in.o_zeta || *in.o_eta || *in.o_theta ||
                        *in.o_vartheta || *in.o_f0;
  if (*in.o_file) {
    if (any_flag) {
      std::cerr << "error: give either --params or individual flags, not both\n";
      return kExitUsage;
    }
    const bs_status rc = bs_params_from_json_file(in.file.c_str(), out);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return kExitUsage;
    }
    return kExitOk;
  }
  const bool theta_given = *in.o_theta || *in.o_vartheta;
  if (!(*in.o_alpha && *in.o_beta && *in.o_gamma && *in.o_zeta && *in.o_eta &&
        theta_given && *in.o_f0)) {
    std::cerr << "error: missing parameters; pass --params FILE or all of "
                 "--alpha --beta --gamma --zeta --eta --theta|--vartheta --f0\n";
    return kExitUsage;
  }
  out->alpha = in.alpha;
  out->beta = in.beta;
  out->gamma = in.gamma;
  out->zeta = in.zeta;
  out->eta = in.eta;
  out->theta = *in.o_vartheta ? -in.vartheta : in.theta;
  out->f0 = in.f0;
  const bs_status rc = bs_params_validate(out);
  if (rc != BS_OK) {
    std::cerr << "error: " << bs_last_error() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

struct IntegratorFlags {
  std::string method = "rk45";
  double step = 1e-2;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double t_end = 100.0;
};

void add_integrator_flags(CLI::App* cmd, IntegratorFlags& fl) {
  cmd->add_option("--method", fl.method, "integrator: rk4 or rk45")
      ->check(CLI::IsMember({"rk4", "rk45"}));
  cmd->add_option("--step", fl.step, "rk4 step size");
  cmd->add_option("--rel-tol", fl.rel_tol, "rk45 relative tolerance");
  cmd->add_option("--abs-tol", fl.abs_tol, "rk45 absolute tolerance");
  cmd->add_option("--max-step", fl.max_step, "rk45 step ceiling");
  cmd->add_option("--t-end", fl.t_end, "integration horizon");
}

bs_integrator_config make_config(const IntegratorFlags& fl) {
  bs_integrator_config cfg;
  bs_integrator_config_default(&cfg);
  cfg.method = fl.method == "rk4" ? BS_METHOD_RK4 : BS_METHOD_RK45;
  cfg.step = fl.step;
  cfg.rel_tol = fl.rel_tol;
  cfg.abs_tol = fl.abs_tol;
  cfg.max_step = fl.max_step;
  cfg.t_end = fl.t_end;
  return cfg;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("BURNSTAB_OUT"); env && *env) return env;
  return ".";
}

int ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << dir << ": "
              << ec.message() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int print_json_result(bs_status rc, char* text) {
  if (rc != BS_OK) {
    std::cerr << "error: " << bs_last_error() << "\n";
    return rc == BS_ERR_INVALID_PARAMS || rc == BS_ERR_INVALID_ARGUMENT ||
                   rc == BS_ERR_NOT_REACTIVE_REGIME
               ? kExitUsage
               : kExitNumerical;
  }
  std::cout << text << "\n";
  bs_string_free(text);
  return kExitOk;
}

json event_list_json(const bs_trajectory* traj) {
  json events = json::array();
  for (size_t i = 0; i < bs_trajectory_event_count(traj); ++i) {
    bs_event_kind kind;
    double time;
    double before[3], after[3];
    bs_trajectory_event(traj, i, &kind, &time, before, after);
    events.push_back({{"kind", bs_event_kind_name(kind)},
                      {"time", time},
                      {"after", {after[0], after[1], after[2]}}});
  }
  return events;
}

int finish_trajectory_command(const bs_params& params, bs_trajectory* traj,
                              const std::string& out_dir, bool svg,
                              const std::string& stem) {
  const std::string csv_path = out_dir + "/" + stem + ".csv";
  bs_status rc = bs_trajectory_write_csv(traj, csv_path.c_str());
  if (rc != BS_OK) {
    std::cerr << "error: " << bs_last_error() << "\n";
    bs_trajectory_free(traj);
    return kExitUsage;
  }

  json summary;
  summary["csv"] = csv_path;
  summary["samples"] = bs_trajectory_samples(traj);
  summary["status"] = bs_run_status_name(bs_trajectory_status(traj));
  summary["events"] = event_list_json(traj);

  if (svg && bs_trajectory_dim(traj) == 3) {
    const bs_trajectory* list[1] = {traj};
    const std::pair<bs_plane, const char*> planes[] = {
        {BS_PLANE_AF, "af"}, {BS_PLANE_AB, "ab"}, {BS_PLANE_FB, "fb"}};
    for (const auto& [plane, name] : planes) {
      const std::string path = out_dir + "/" + stem + "_phase_" + name + ".svg";
      bs_plot_phase(list, 1, &params, plane, path.c_str());
      summary["svg"].push_back(path);
    }
    for (int coord = 0; coord < 3; ++coord) {
      const char* names[] = {"a", "f", "b"};
      const std::string path =
          out_dir + "/" + stem + "_series_" + names[coord] + ".svg";
      bs_plot_series(list, 1, coord, path.c_str());
      summary["svg"].push_back(path);
    }
  }

  const bs_run_status status = bs_trajectory_status(traj);
  bs_trajectory_free(traj);
  std::cout << summary.dump() << "\n";
  if (status == BS_RUN_NONFINITE_STATE || status == BS_RUN_STEP_SIZE_UNDERFLOW)
    return kExitNumerical;  // partial output is retained on disk
  return kExitOk;
}

bool parse_range(const std::string& text, bs_range* out) {
  double lo, hi;
  int count;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3)
    return false;
  *out = {lo, hi, count};
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"burnstab: equilibrium, stability, feedback design and "
               "simulation for the land/fire/prescribed-burning model"};
  app.require_subcommand(1);

  std::string out_dir = default_out_dir();
  const auto add_out_flag = [&out_dir](CLI::App* cmd) {
    cmd->add_option("--out", out_dir,
                    "output directory (default: $BURNSTAB_OUT or .)")
        ->capture_default_str();
  };

  // ---- equilibrium ----
  auto* cmd_eq = app.add_subcommand("equilibrium", "equilibrium point and feasibility");
  ParamInputs eq_in;
  add_param_flags(cmd_eq, eq_in);

  // ---- classify ----
  auto* cmd_cls = app.add_subcommand("classify", "stability classification");
  ParamInputs cls_in;
  add_param_flags(cmd_cls, cls_in);

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand("simulate", "integrate one trajectory");
  ParamInputs sim_in;
  add_param_flags(cmd_sim, sim_in);
  IntegratorFlags sim_fl;
  add_integrator_flags(cmd_sim, sim_fl);
  add_out_flag(cmd_sim);
  std::vector<double> sim_init;
  cmd_sim->add_option("--init", sim_init, "initial state a f b (default: equilibrium)")
      ->expected(3);
  bool sim_crossing = false;
  cmd_sim->add_flag("--crossing-experiment", sim_crossing,
                    "start from a(0)=b(0), f(0)=f0 and watch for b crossing a");
  double sim_a0b0 = -1.0;
  cmd_sim->add_option("--a0b0", sim_a0b0,
                      "crossing-experiment start value (default: midpoint)");
  bool sim_terminate = false;
  cmd_sim->add_flag("--terminate-on-event", sim_terminate,
                    "stop at the first monitored event");
  bool sim_svg = false;
  cmd_sim->add_flag("--svg", sim_svg, "emit phase and series plots");

  // ---- ensemble ----
  auto* cmd_ens = app.add_subcommand("ensemble", "perturbation ensemble around the equilibrium");
  ParamInputs ens_in;
  add_param_flags(cmd_ens, ens_in);
  IntegratorFlags ens_fl;
  add_integrator_flags(cmd_ens, ens_fl);
  add_out_flag(cmd_ens);
  std::size_t ens_n = 100;
  double ens_amplitude = 1e-4;
  std::uint64_t ens_seed = 0;
  bool ens_svg = false;
  cmd_ens->add_option("--n", ens_n, "ensemble size")->capture_default_str();
  cmd_ens->add_option("--amplitude", ens_amplitude, "perturbation amplitude")
      ->capture_default_str();
  cmd_ens->add_option("--seed", ens_seed, "RNG seed")->capture_default_str();
  cmd_ens->add_flag("--svg", ens_svg, "emit overlay plots");

  // ---- sweep ----
  auto* cmd_swp = app.add_subcommand("sweep", "classify over a parameter grid");
  ParamInputs swp_in;
  add_param_flags(cmd_swp, swp_in);
  add_out_flag(cmd_swp);
  std::vector<std::string> swp_vary;
  cmd_swp->add_option("--vary", swp_vary,
                      "range NAME=lo:hi:count (repeatable; NAME is a parameter "
                      "or vartheta)");
  std::size_t swp_max_points = 1'000'000;
  cmd_swp->add_option("--max-points", swp_max_points, "grid size cap")
      ->capture_default_str();

  // ---- feedback-design ----
  auto* cmd_fb = app.add_subcommand("feedback-design",
                                    "stabilizing gains for the reactive regime");
  ParamInputs fb_in;
  add_param_flags(cmd_fb, fb_in);
  add_out_flag(cmd_fb);
  double fb_margin = 1.0;
  cmd_fb->add_option("--margin", fb_margin, "gain margin (> 0)")
      ->capture_default_str();
  bool fb_simulate = false;
  cmd_fb->add_flag("--simulate", fb_simulate, "also run the closed loop");
  double fb_amplitude = 1e-3;
  cmd_fb->add_option("--amplitude", fb_amplitude,
                     "closed-loop initial perturbation")
      ->capture_default_str();
  std::uint64_t fb_seed = 0;
  cmd_fb->add_option("--seed", fb_seed, "RNG seed")->capture_default_str();
  IntegratorFlags fb_fl;
  fb_fl.t_end = 200.0;
  add_integrator_flags(cmd_fb, fb_fl);

  // ---- streamlines ----
  auto* cmd_str = app.add_subcommand("streamlines", "velocity field on a plane");
  ParamInputs str_in;
  add_param_flags(cmd_str, str_in);
  add_out_flag(cmd_str);
  std::string str_plane = "af";
  cmd_str->add_option("--plane", str_plane, "projection plane")
      ->check(CLI::IsMember({"af", "ab", "fb"}))
      ->capture_default_str();
  double str_fixed = 0.0;
  cmd_str->add_option("--fixed", str_fixed, "value of the remaining coordinate")
      ->capture_default_str();
  std::string str_u = "0:1:15", str_v = "0:2:15";
  cmd_str->add_option("--u", str_u, "first axis lo:hi:count")->capture_default_str();
  cmd_str->add_option("--v", str_v, "second axis lo:hi:count")->capture_default_str();
  double str_traj_time = 0.0;
  cmd_str->add_option("--traj-time", str_traj_time,
                      "when > 0, integrate a short trajectory per grid point");
  bool str_svg = false;
  cmd_str->add_flag("--svg", str_svg, "emit a field plot");

  // ---- hopf-boundary ----
  auto* cmd_hb = app.add_subcommand("hopf-boundary",
                                    "bisect the stability boundary in one parameter");
  ParamInputs hb_in;
  add_param_flags(cmd_hb, hb_in);
  std::string hb_free = "vartheta";
  cmd_hb->add_option("--free", hb_free,
                     "free parameter: alpha beta gamma zeta eta vartheta f0")
      ->capture_default_str();
  double hb_lo = 1e-3, hb_hi = 1e3;
  cmd_hb->add_option("--lo", hb_lo, "interval lower end")->capture_default_str();
  cmd_hb->add_option("--hi", hb_hi, "interval upper end")->capture_default_str();

  // ---- witness ----
  auto* cmd_wit = app.add_subcommand("witness",
                                     "parameter families realizing each discriminant sign");
  std::string wit_branch = "large-alpha-pos";
  cmd_wit->add_option("--branch", wit_branch, "family branch")
      ->check(CLI::IsMember({"large-alpha-pos", "small-c-neg", "small-alpha-neg"}))
      ->capture_default_str();
  double wit_knob = 0.0;
  cmd_wit->add_option("--knob", wit_knob, "family knob (<= 0: default)");
  double wit_theta = 0.0;
  cmd_wit->add_option("--theta", wit_theta, "theta (0: branch default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (cmd_eq->parsed()) {
    bs_params p;
    if (int rc = resolve_params(eq_in, &p); rc != kExitOk) return rc;
    bs_params eq_query = p;
    double out[3];
    bs_status rc = bs_equilibrium(&eq_query, out);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return kExitUsage;
    }
    bs_feasibility fe;
    bs_feasibility_check(&p, &fe);
    json j;
    j["a_star"] = out[0];
    j["f_star"] = out[1];
    j["b_star"] = out[2];
    j["feasibility"] = {
        {"area_bounded", fe.area_bounded != 0},
        {"burn_nonnegative", fe.burn_nonnegative != 0},
        {"burn_within_land", fe.burn_within_land != 0},
        {"all", fe.area_bounded && fe.burn_nonnegative && fe.burn_within_land},
        {"margins", {fe.margins[0], fe.margins[1], fe.margins[2]}}};
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_cls->parsed()) {
    bs_params p;
    if (int rc = resolve_params(cls_in, &p); rc != kExitOk) return rc;
    char* text = nullptr;
    const bs_status rc = bs_classify_json(&p, &text);
    return print_json_result(rc, text);
  }

  if (cmd_sim->parsed()) {
    bs_params p;
    if (int rc = resolve_params(sim_in, &p); rc != kExitOk) return rc;
    if (int rc = ensure_out_dir(out_dir); rc != kExitOk) return rc;
    bs_integrator_config cfg = make_config(sim_fl);
    cfg.terminate_on_event = sim_terminate ? 1 : 0;

    bs_trajectory* traj = nullptr;
    bs_status rc;
    if (sim_crossing) {
      rc = bs_crossing_experiment(&p, sim_a0b0, &cfg, &traj);
    } else {
      double s0[3];
      if (sim_init.size() == 3) {
        s0[0] = sim_init[0];
        s0[1] = sim_init[1];
        s0[2] = sim_init[2];
      } else if (bs_equilibrium(&p, s0) != BS_OK) {
        std::cerr << "error: " << bs_last_error() << "\n";
        return kExitUsage;
      }
      rc = bs_simulate(&p, s0, &cfg, &traj);
    }
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return rc == BS_ERR_INVALID_ARGUMENT || rc == BS_ERR_INVALID_PARAMS
                 ? kExitUsage
                 : kExitNumerical;
    }
    return finish_trajectory_command(p, traj, out_dir, sim_svg, "trajectory");
  }

  if (cmd_ens->parsed()) {
    bs_params p;
    if (int rc = resolve_params(ens_in, &p); rc != kExitOk) return rc;
    if (int rc = ensure_out_dir(out_dir); rc != kExitOk) return rc;
    const bs_integrator_config cfg = make_config(ens_fl);

    bs_ensemble* ens = nullptr;
    bs_status rc = bs_ensemble_run(&p, ens_n, ens_amplitude, ens_seed, &cfg, &ens);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return rc == BS_ERR_INVALID_ARGUMENT || rc == BS_ERR_INVALID_PARAMS
                 ? kExitUsage
                 : kExitNumerical;
    }

    std::vector<std::string> files;
    bs_run_status worst = BS_RUN_COMPLETED;
    std::vector<const bs_trajectory*> views;
    for (size_t i = 0; i < bs_ensemble_size(ens); ++i) {
      const bs_trajectory* t = bs_ensemble_trajectory(ens, i);
      views.push_back(t);
      char name[32];
      std::snprintf(name, sizeof(name), "traj_%03zu.csv", i);
      const std::string path = out_dir + "/" + name;
      if (bs_trajectory_write_csv(t, path.c_str()) != BS_OK) {
        std::cerr << "error: " << bs_last_error() << "\n";
        bs_ensemble_free(ens);
        return kExitUsage;
      }
      files.push_back(path);
      if (bs_trajectory_status(t) > worst) worst = bs_trajectory_status(t);
    }

    bs_ensemble_summary s;
    bs_ensemble_get_summary(ens, &s);
    json j;
    j["n"] = s.n;
    j["amplitude"] = s.amplitude;
    j["seed"] = s.seed;
    j["initial_deviation"] = {{"max", s.max_initial}, {"mean", s.mean_initial}};
    j["terminal_deviation"] = {{"max", s.max_terminal}, {"mean", s.mean_terminal}};
    j["contracted"] = s.max_terminal < s.max_initial;
    j["status"] = bs_run_status_name(worst);
    j["trajectories"] = files;

    if (ens_svg) {
      const std::pair<bs_plane, const char*> planes[] = {
          {BS_PLANE_AF, "af"}, {BS_PLANE_AB, "ab"}, {BS_PLANE_FB, "fb"}};
      for (const auto& [plane, name] : planes) {
        const std::string path = out_dir + "/ensemble_phase_" + name + ".svg";
        bs_plot_phase(views.data(), views.size(), &p, plane, path.c_str());
        j["svg"].push_back(path);
      }
      const char* names[] = {"a", "f", "b"};
      for (int coord = 0; coord < 3; ++coord) {
        const std::string path =
            out_dir + "/ensemble_series_" + names[coord] + ".svg";
        bs_plot_series(views.data(), views.size(), coord, path.c_str());
        j["svg"].push_back(path);
      }
    }

    const std::string summary_path = out_dir + "/summary.json";
    {
      std::FILE* f = std::fopen(summary_path.c_str(), "wb");
      if (f) {
        const std::string text = j.dump(2);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      }
    }
    j["summary"] = summary_path;
    bs_ensemble_free(ens);
    std::cout << j.dump() << "\n";
    return worst == BS_RUN_NONFINITE_STATE || worst == BS_RUN_STEP_SIZE_UNDERFLOW
               ? kExitNumerical
               : kExitOk;
  }

  if (cmd_swp->parsed()) {
    bs_params p;
    if (int rc = resolve_params(swp_in, &p); rc != kExitOk) return rc;
    if (int rc = ensure_out_dir(out_dir); rc != kExitOk) return rc;

    bs_sweep_spec spec;
    spec.alpha = {p.alpha, p.alpha, 1};
    spec.beta = {p.beta, p.beta, 1};
    spec.gamma = {p.gamma, p.gamma, 1};
    spec.zeta = {p.zeta, p.zeta, 1};
    spec.eta = {p.eta, p.eta, 1};
    spec.theta = {p.theta, p.theta, 1};
    spec.f0 = {p.f0, p.f0, 1};
    spec.max_points = swp_max_points;

    for (const std::string& v : swp_vary) {
      const auto eq_pos = v.find('=');
      if (eq_pos == std::string::npos) {
        std::cerr << "error: --vary needs NAME=lo:hi:count, got " << v << "\n";
        return kExitUsage;
      }
      const std::string name = v.substr(0, eq_pos);
      bs_range range;
      if (!parse_range(v.substr(eq_pos + 1), &range)) {
        std::cerr << "error: bad range in --vary " << v << "\n";
        return kExitUsage;
      }
      if (name == "alpha") spec.alpha = range;
      else if (name == "beta") spec.beta = range;
      else if (name == "gamma") spec.gamma = range;
      else if (name == "zeta") spec.zeta = range;
      else if (name == "eta") spec.eta = range;
      else if (name == "theta") spec.theta = range;
      else if (name == "vartheta") spec.theta = {-range.lo, -range.hi, range.count};
      else if (name == "f0") spec.f0 = range;
      else {
        std::cerr << "error: unknown parameter in --vary: " << name << "\n";
        return kExitUsage;
      }
    }

    const std::string path = out_dir + "/sweep.csv";
    size_t rows = 0;
    bs_status rc = bs_sweep_to_csv(&spec, path.c_str(), &rows);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return rc == BS_ERR_GRID_TOO_LARGE || rc == BS_ERR_INVALID_ARGUMENT ||
                     rc == BS_ERR_INVALID_PARAMS
                 ? kExitUsage
                 : kExitNumerical;
    }
    json j;
    j["csv"] = path;
    j["rows"] = rows;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_fb->parsed()) {
    bs_params p;
    if (int rc = resolve_params(fb_in, &p); rc != kExitOk) return rc;
    char* text = nullptr;
    bs_status rc = bs_design_feedback_json(&p, fb_margin, &text);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return kExitUsage;
    }
    json j = json::parse(text);
    bs_string_free(text);

    if (fb_simulate) {
      if (int erc = ensure_out_dir(out_dir); erc != kExitOk) return erc;
      const bs_integrator_config cfg = make_config(fb_fl);
      bs_trajectory* traj = nullptr;
      rc = bs_feedback_simulate(&p, fb_margin, fb_amplitude, fb_seed, &cfg, &traj);
      if (rc != BS_OK) {
        std::cerr << "error: " << bs_last_error() << "\n";
        return kExitNumerical;
      }
      const std::string path = out_dir + "/closed_loop.csv";
      bs_trajectory_write_csv(traj, path.c_str());
      j["closed_loop_csv"] = path;
      j["closed_loop_status"] =
          bs_run_status_name(bs_trajectory_status(traj));
      bs_trajectory_free(traj);
    }
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_str->parsed()) {
    bs_params p;
    if (int rc = resolve_params(str_in, &p); rc != kExitOk) return rc;
    if (int rc = ensure_out_dir(out_dir); rc != kExitOk) return rc;
    bs_range u, v;
    if (!parse_range(str_u, &u) || !parse_range(str_v, &v)) {
      std::cerr << "error: --u/--v need lo:hi:count\n";
      return kExitUsage;
    }
    const bs_plane plane = str_plane == "af"   ? BS_PLANE_AF
                           : str_plane == "ab" ? BS_PLANE_AB
                                               : BS_PLANE_FB;
    const std::string csv = out_dir + "/streamlines_" + str_plane + ".csv";
    const std::string svg = out_dir + "/streamlines_" + str_plane + ".svg";
    bs_status rc = bs_streamlines(&p, plane, str_fixed, u.lo, u.hi, u.count,
                                  v.lo, v.hi, v.count, str_traj_time,
                                  csv.c_str(), str_svg ? svg.c_str() : nullptr);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return rc == BS_ERR_GRID_TOO_LARGE || rc == BS_ERR_INVALID_ARGUMENT ||
                     rc == BS_ERR_INVALID_PARAMS
                 ? kExitUsage
                 : kExitNumerical;
    }
    json j;
    j["csv"] = csv;
    if (str_svg) j["svg"] = svg;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_hb->parsed()) {
    bs_params p;
    if (int rc = resolve_params(hb_in, &p); rc != kExitOk) return rc;
    double value = 0.0;
    bs_status rc = bs_hopf_boundary(&p, hb_free.c_str(), hb_lo, hb_hi, &value);
    json j;
    j["free"] = hb_free;
    if (rc == BS_OK) {
      j["found"] = true;
      j["value"] = value;
    } else if (rc == BS_ERR_NO_ROOT_IN_INTERVAL) {
      j["found"] = false;
      j["error"] = bs_last_error();
    } else {
      std::cerr << "error: " << bs_last_error() << "\n";
      return kExitUsage;
    }
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_wit->parsed()) {
    const bs_witness_branch branch =
        wit_branch == "large-alpha-pos" ? BS_WITNESS_LARGE_ALPHA_POSITIVE_DISC
        : wit_branch == "small-c-neg"
            ? BS_WITNESS_SMALL_C_NEGATIVE_DISC_THETA_NEG
            : BS_WITNESS_SMALL_ALPHA_NEGATIVE_DISC_THETA_POS;
    bs_params p;
    double disc = 0.0;
    bs_status rc = bs_discriminant_witness(branch, wit_knob, wit_theta, &p, &disc);
    if (rc != BS_OK) {
      std::cerr << "error: " << bs_last_error() << "\n";
      return rc == BS_ERR_BRANCH_CONDITION_UNMET ? kExitNumerical : kExitUsage;
    }
    char* ptext = nullptr;
    bs_params_to_json(&p, &ptext);
    json j;
    j["branch"] = wit_branch;
    j["params"] = json::parse(ptext);
    bs_string_free(ptext);
    j["discriminant"] = disc;
    j["sign"] = disc > 0 ? "positive" : "negative";
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  return kExitUsage;
}
