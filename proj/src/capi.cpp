#include "burnstab/burnstab.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "atlas.hpp"
#include "io.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "stability.hpp"
#include "svg.hpp"

namespace {

thread_local std::string g_last_error;

bs_status code_of(burnstab::errc c) {
  using burnstab::errc;
  switch (c) {
    case errc::invalid_argument: return BS_ERR_INVALID_ARGUMENT;
    case errc::invalid_params: return BS_ERR_INVALID_PARAMS;
    case errc::not_reactive_regime: return BS_ERR_NOT_REACTIVE_REGIME;
    case errc::degenerate_spectrum: return BS_ERR_DEGENERATE_SPECTRUM;
    case errc::step_size_underflow: return BS_ERR_STEP_SIZE_UNDERFLOW;
    case errc::nonfinite_state: return BS_ERR_NONFINITE_STATE;
    case errc::no_root_in_interval: return BS_ERR_NO_ROOT_IN_INTERVAL;
    case errc::branch_condition_unmet: return BS_ERR_BRANCH_CONDITION_UNMET;
    case errc::grid_too_large: return BS_ERR_GRID_TOO_LARGE;
    case errc::parse_error: return BS_ERR_PARSE;
    case errc::io_error: return BS_ERR_IO;
  }
  return BS_ERR_INTERNAL;
}

template <class Fn>
bs_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BS_OK;
  } catch (const burnstab::error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return BS_ERR_INTERNAL;
  }
}

bs_status fail_arg(const char* msg) {
  g_last_error = msg;
  return BS_ERR_INVALID_ARGUMENT;
}

burnstab::Params to_cpp(const bs_params& p) {
  return {p.alpha, p.beta, p.gamma, p.zeta, p.eta, p.theta, p.f0};
}

bs_params to_c(const burnstab::Params& p) {
  return {p.alpha, p.beta, p.gamma, p.zeta, p.eta, p.theta, p.f0};
}

burnstab::IntegratorConfig to_cpp(const bs_integrator_config& cfg) {
  burnstab::IntegratorConfig c;
  c.method = cfg.method == BS_METHOD_RK4 ? burnstab::Method::rk4_fixed
                                         : burnstab::Method::rk45_adaptive;
  c.step = cfg.step;
  c.rel_tol = cfg.rel_tol;
  c.abs_tol = cfg.abs_tol;
  c.max_step = cfg.max_step;
  c.t_end = cfg.t_end;
  c.terminate_on_event = cfg.terminate_on_event != 0;
  return c;
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bs_status return_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    g_last_error = "allocation failed";
    return BS_ERR_INTERNAL;
  }
  return BS_OK;
}

bs_run_status to_c(burnstab::RunStatus s) {
  switch (s) {
    case burnstab::RunStatus::completed: return BS_RUN_COMPLETED;
    case burnstab::RunStatus::truncated_divergence:
      return BS_RUN_TRUNCATED_DIVERGENCE;
    case burnstab::RunStatus::nonfinite_state: return BS_RUN_NONFINITE_STATE;
    case burnstab::RunStatus::step_size_underflow:
      return BS_RUN_STEP_SIZE_UNDERFLOW;
  }
  return BS_RUN_COMPLETED;
}

}  // namespace

struct bs_trajectory {
  std::variant<burnstab::Trajectory, burnstab::AugmentedTrajectory> data;
};

struct bs_ensemble {
  burnstab::EnsembleSummary summary;
  std::vector<bs_trajectory> members;  // handle-compatible wrappers
};

extern "C" {

const char* bs_status_name(bs_status status) {
  switch (status) {
    case BS_OK: return "ok";
    case BS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BS_ERR_INVALID_PARAMS: return "invalid parameters";
    case BS_ERR_NOT_REACTIVE_REGIME: return "not in the reactive regime";
    case BS_ERR_DEGENERATE_SPECTRUM: return "degenerate spectrum";
    case BS_ERR_STEP_SIZE_UNDERFLOW: return "step size underflow";
    case BS_ERR_NONFINITE_STATE: return "non-finite state";
    case BS_ERR_NO_ROOT_IN_INTERVAL: return "no root in interval";
    case BS_ERR_BRANCH_CONDITION_UNMET: return "branch condition unmet";
    case BS_ERR_GRID_TOO_LARGE: return "grid too large";
    case BS_ERR_PARSE: return "parse error";
    case BS_ERR_IO: return "i/o error";
    case BS_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* bs_last_error(void) { return g_last_error.c_str(); }

void bs_string_free(char* s) { delete[] s; }

const char* bs_version(void) { return "1.0.0"; }

bs_status bs_params_validate(const bs_params* p) {
  if (!p) return fail_arg("params pointer is null");
  return guarded([&] { burnstab::validate(to_cpp(*p)); });
}

bs_status bs_params_from_json(const char* text, bs_params* out) {
  if (!text || !out) return fail_arg("null pointer");
  return guarded([&] { *out = to_c(burnstab::params_from_json(text)); });
}

bs_status bs_params_from_json_file(const char* path, bs_params* out) {
  if (!path || !out) return fail_arg("null pointer");
  return guarded([&] { *out = to_c(burnstab::params_from_json_file(path)); });
}

bs_status bs_params_to_json(const bs_params* p, char** out_json) {
  if (!p || !out_json) return fail_arg("null pointer");
  std::string json;
  const bs_status rc = guarded([&] {
    const burnstab::Params cp = to_cpp(*p);
    burnstab::validate(cp);
    json = burnstab::to_json(cp);
  });
  if (rc != BS_OK) return rc;
  return return_string(json, out_json);
}

bs_status bs_vector_field(const bs_params* p, const double state[3],
                          double out[3]) {
  if (!p || !state || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::Params cp = to_cpp(*p);
    burnstab::validate(cp);
    const burnstab::State d =
        burnstab::vector_field(cp, {state[0], state[1], state[2]});
    out[0] = d.a;
    out[1] = d.f;
    out[2] = d.b;
  });
}

bs_status bs_equilibrium(const bs_params* p, double out[3]) {
  if (!p || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::Equilibrium e = burnstab::equilibrium(to_cpp(*p));
    out[0] = e.a_star;
    out[1] = e.f_star;
    out[2] = e.b_star;
  });
}

bs_status bs_feasibility_check(const bs_params* p, bs_feasibility* out) {
  if (!p || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::FeasibilityReport r = burnstab::feasibility(to_cpp(*p));
    out->area_bounded = r.area_bounded;
    out->burn_nonnegative = r.burn_nonnegative;
    out->burn_within_land = r.burn_within_land;
    for (int i = 0; i < 3; ++i) out->margins[i] = r.margins[i];
  });
}

const char* bs_regime_name(bs_regime regime) {
  return burnstab::regime_name(static_cast<burnstab::Regime>(regime));
}

bs_status bs_classify(const bs_params* p, bs_verdict* out) {
  if (!p || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::StabilityVerdict v = burnstab::classify(to_cpp(*p));
    out->regime = static_cast<bs_regime>(v.regime);
    out->condition_lhs = v.condition_lhs;
    out->condition_rhs = v.condition_rhs;
    const auto eigs = v.eigenvalues.all();
    for (int i = 0; i < 3; ++i) {
      out->eig_re[i] = eigs[i].real();
      out->eig_im[i] = eigs[i].imag();
    }
  });
}

bs_status bs_classify_json(const bs_params* p, char** out_json) {
  if (!p || !out_json) return fail_arg("null pointer");
  std::string json;
  const bs_status rc =
      guarded([&] { json = burnstab::classify_json(to_cpp(*p)); });
  if (rc != BS_OK) return rc;
  return return_string(json, out_json);
}

bs_status bs_critical_vartheta(const bs_params* p, double* out) {
  if (!p || !out) return fail_arg("null pointer");
  return guarded([&] { *out = burnstab::critical_vartheta(to_cpp(*p)); });
}

bs_status bs_design_feedback(const bs_params* p, double margin,
                             bs_feedback_design* out) {
  if (!p || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::SchurForm sf = burnstab::schur_triangulate(to_cpp(*p));
    const burnstab::FeedbackGains g =
        burnstab::design_gains(sf.lambda1(), margin);
    const auto spectrum = burnstab::closed_loop_spectrum(sf, g);
    out->lambda1 = sf.lambda1();
    out->sigma = g.sigma;
    out->tau = g.tau;
    for (int i = 0; i < 4; ++i) {
      out->eig_re[i] = spectrum[i].real();
      out->eig_im[i] = spectrum[i].imag();
    }
  });
}

bs_status bs_design_feedback_json(const bs_params* p, double margin,
                                  char** out_json) {
  if (!p || !out_json) return fail_arg("null pointer");
  std::string json;
  const bs_status rc = guarded([&] {
    const burnstab::SchurForm sf = burnstab::schur_triangulate(to_cpp(*p));
    const burnstab::FeedbackGains g =
        burnstab::design_gains(sf.lambda1(), margin);
    json = burnstab::feedback_design_json(sf.lambda1(), g,
                                          burnstab::closed_loop_spectrum(sf, g));
  });
  if (rc != BS_OK) return rc;
  return return_string(json, out_json);
}

void bs_integrator_config_default(bs_integrator_config* cfg) {
  if (!cfg) return;
  cfg->method = BS_METHOD_RK45;
  cfg->step = 1e-2;
  cfg->rel_tol = 1e-9;
  cfg->abs_tol = 1e-12;
  cfg->max_step = 1.0;
  cfg->t_end = 100.0;
  cfg->terminate_on_event = 0;
}

const char* bs_run_status_name(bs_run_status status) {
  return burnstab::run_status_name(static_cast<burnstab::RunStatus>(status));
}

const char* bs_event_kind_name(bs_event_kind kind) {
  return burnstab::event_kind_name(static_cast<burnstab::EventKind>(kind));
}

bs_status bs_simulate(const bs_params* p, const double state0[3],
                      const bs_integrator_config* cfg, bs_trajectory** out) {
  if (!p || !state0 || !cfg || !out) return fail_arg("null pointer");
  return guarded([&] {
    auto* h = new bs_trajectory{burnstab::integrate(
        to_cpp(*p), {state0[0], state0[1], state0[2]}, to_cpp(*cfg))};
    *out = h;
  });
}

bs_status bs_crossing_experiment(const bs_params* p, double a0b0,
                                 const bs_integrator_config* cfg,
                                 bs_trajectory** out) {
  if (!p || !cfg || !out) return fail_arg("null pointer");
  return guarded([&] {
    auto* h = new bs_trajectory{
        burnstab::crossing_experiment(to_cpp(*p), a0b0, to_cpp(*cfg))};
    *out = h;
  });
}

bs_status bs_feedback_simulate(const bs_params* p, double margin,
                               double amplitude, uint64_t seed,
                               const bs_integrator_config* cfg,
                               bs_trajectory** out) {
  if (!p || !cfg || !out) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::Params cp = to_cpp(*p);
    const burnstab::SchurForm sf = burnstab::schur_triangulate(cp);
    const burnstab::FeedbackGains g =
        burnstab::design_gains(sf.lambda1(), margin);
    burnstab::AugmentedState x0 = burnstab::augmented_equilibrium(cp, sf);
    burnstab::UniformRng rng(seed);
    x0.x1 += rng.range(-amplitude, amplitude);
    x0.x2 += burnstab::complexd(rng.range(-amplitude, amplitude),
                                rng.range(-amplitude, amplitude));
    x0.x3 += burnstab::complexd(rng.range(-amplitude, amplitude),
                                rng.range(-amplitude, amplitude));
    x0.omega += rng.range(-amplitude, amplitude);
    auto* h = new bs_trajectory{
        burnstab::integrate_augmented(cp, sf, g, x0, to_cpp(*cfg))};
    *out = h;
  });
}

void bs_trajectory_free(bs_trajectory* t) { delete t; }

int bs_trajectory_dim(const bs_trajectory* t) {
  if (!t) return 0;
  return std::holds_alternative<burnstab::Trajectory>(t->data) ? 3 : 6;
}

size_t bs_trajectory_samples(const bs_trajectory* t) {
  if (!t) return 0;
  if (const auto* m = std::get_if<burnstab::Trajectory>(&t->data))
    return m->times.size();
  return std::get<burnstab::AugmentedTrajectory>(t->data).times.size();
}

bs_run_status bs_trajectory_status(const bs_trajectory* t) {
  if (!t) return BS_RUN_COMPLETED;
  if (const auto* m = std::get_if<burnstab::Trajectory>(&t->data))
    return to_c(m->status);
  return to_c(std::get<burnstab::AugmentedTrajectory>(t->data).status);
}

bs_status bs_trajectory_sample(const bs_trajectory* t, size_t i, double* time,
                               double* state) {
  if (!t || !time || !state) return fail_arg("null pointer");
  if (i >= bs_trajectory_samples(t)) return fail_arg("sample index out of range");
  if (const auto* m = std::get_if<burnstab::Trajectory>(&t->data)) {
    *time = m->times[i];
    state[0] = m->states[i].a;
    state[1] = m->states[i].f;
    state[2] = m->states[i].b;
    return BS_OK;
  }
  const auto& a = std::get<burnstab::AugmentedTrajectory>(t->data);
  *time = a.times[i];
  const burnstab::AugmentedState& x = a.states[i];
  state[0] = x.x1;
  state[1] = x.x2.real();
  state[2] = x.x2.imag();
  state[3] = x.x3.real();
  state[4] = x.x3.imag();
  state[5] = x.omega;
  return BS_OK;
}

size_t bs_trajectory_event_count(const bs_trajectory* t) {
  if (!t) return 0;
  if (const auto* m = std::get_if<burnstab::Trajectory>(&t->data))
    return m->events.size();
  return 0;
}

bs_status bs_trajectory_event(const bs_trajectory* t, size_t i,
                              bs_event_kind* kind, double* time,
                              double before[3], double after[3]) {
  if (!t || !kind || !time || !before || !after)
    return fail_arg("null pointer");
  const auto* m = std::get_if<burnstab::Trajectory>(&t->data);
  if (!m) return fail_arg("events exist only on model trajectories");
  if (i >= m->events.size()) return fail_arg("event index out of range");
  const burnstab::Event& ev = m->events[i];
  *kind = static_cast<bs_event_kind>(ev.kind);
  *time = ev.time;
  before[0] = ev.before.a;
  before[1] = ev.before.f;
  before[2] = ev.before.b;
  after[0] = ev.after.a;
  after[1] = ev.after.f;
  after[2] = ev.after.b;
  return BS_OK;
}

bs_status bs_trajectory_write_csv(const bs_trajectory* t, const char* path) {
  if (!t || !path) return fail_arg("null pointer");
  return guarded([&] {
    if (const auto* m = std::get_if<burnstab::Trajectory>(&t->data))
      burnstab::write_file(path, burnstab::to_csv(*m));
    else
      burnstab::write_file(
          path, burnstab::to_csv(std::get<burnstab::AugmentedTrajectory>(t->data)));
  });
}

bs_status bs_invariance_check(const bs_trajectory* t, double boundary_tol,
                              bs_invariance_report* out) {
  if (!t || !out) return fail_arg("null pointer");
  const auto* m = std::get_if<burnstab::Trajectory>(&t->data);
  if (!m) return fail_arg("invariance check applies to model trajectories");
  return guarded([&] {
    const burnstab::InvarianceReport r =
        burnstab::invariance_monitor(*m, boundary_tol);
    out->samples_checked = r.samples_checked;
    out->precondition_broken = r.precondition_broken;
    out->precondition_break_time =
        r.precondition_broken ? r.precondition_break_time : 0.0;
    out->violations = r.violations;
    out->first_violation_time = r.violations ? r.first_violation_time : 0.0;
  });
}

bs_status bs_ensemble_run(const bs_params* p, size_t n, double amplitude,
                          uint64_t seed, const bs_integrator_config* cfg,
                          bs_ensemble** out) {
  if (!p || !cfg || !out) return fail_arg("null pointer");
  return guarded([&] {
    burnstab::EnsembleResult result =
        burnstab::ensemble(to_cpp(*p), n, amplitude, seed, to_cpp(*cfg));
    auto* e = new bs_ensemble;
    e->summary = result.summary;
    e->members.reserve(result.members.size());
    for (burnstab::Trajectory& m : result.members)
      e->members.push_back(bs_trajectory{std::move(m)});
    *out = e;
  });
}

void bs_ensemble_free(bs_ensemble* e) { delete e; }

size_t bs_ensemble_size(const bs_ensemble* e) {
  return e ? e->members.size() : 0;
}

const bs_trajectory* bs_ensemble_trajectory(const bs_ensemble* e, size_t i) {
  if (!e || i >= e->members.size()) return nullptr;
  return &e->members[i];
}

bs_status bs_ensemble_get_summary(const bs_ensemble* e,
                                  bs_ensemble_summary* out) {
  if (!e || !out) return fail_arg("null pointer");
  const burnstab::EnsembleSummary& s = e->summary;
  out->n = s.n;
  out->amplitude = s.amplitude;
  out->seed = s.seed;
  out->max_initial = s.max_initial;
  out->mean_initial = s.mean_initial;
  out->max_terminal = s.max_terminal;
  out->mean_terminal = s.mean_terminal;
  return BS_OK;
}

bs_status bs_sweep_to_csv(const bs_sweep_spec* spec, const char* path,
                          size_t* rows_out) {
  if (!spec || !path) return fail_arg("null pointer");
  return guarded([&] {
    burnstab::SweepSpec s;
    const auto conv = [](const bs_range& r) {
      return burnstab::ParamRange{r.lo, r.hi, r.count};
    };
    s.alpha = conv(spec->alpha);
    s.beta = conv(spec->beta);
    s.gamma = conv(spec->gamma);
    s.zeta = conv(spec->zeta);
    s.eta = conv(spec->eta);
    s.theta = conv(spec->theta);
    s.f0 = conv(spec->f0);
    if (spec->max_points) s.max_points = spec->max_points;

    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw burnstab::error(burnstab::errc::io_error,
                            std::string("cannot open for writing: ") + path);
    out << burnstab::sweep_csv_header();
    size_t rows = 0;
    burnstab::sweep(s, [&](const burnstab::SweepRow& row) {
      out << burnstab::sweep_csv_row(row);
      ++rows;
    });
    if (!out)
      throw burnstab::error(burnstab::errc::io_error,
                            std::string("write failed: ") + path);
    if (rows_out) *rows_out = rows;
  });
}

bs_status bs_hopf_boundary(const bs_params* base, const char* free_param,
                           double lo, double hi, double* out) {
  if (!base || !free_param || !out) return fail_arg("null pointer");
  const auto fp = burnstab::free_param_from_name(free_param);
  if (!fp) return fail_arg("unknown free parameter name");
  return guarded(
      [&] { *out = burnstab::hopf_boundary(to_cpp(*base), *fp, lo, hi); });
}

bs_status bs_discriminant_witness(bs_witness_branch branch, double knob,
                                  double theta, bs_params* out_params,
                                  double* out_discriminant) {
  if (!out_params || !out_discriminant) return fail_arg("null pointer");
  return guarded([&] {
    const burnstab::FamilyPoint fp = burnstab::discriminant_witness(
        static_cast<burnstab::WitnessBranch>(branch), knob, theta);
    *out_params = to_c(fp.params);
    *out_discriminant = fp.discriminant;
  });
}

bs_status bs_streamlines(const bs_params* p, bs_plane plane,
                         double fixed_value, double u_lo, double u_hi, int nu,
                         double v_lo, double v_hi, int nv, double traj_time,
                         const char* csv_path, const char* svg_path) {
  if (!p || !csv_path) return fail_arg("null pointer");
  return guarded([&] {
    burnstab::StreamlineSpec spec;
    spec.plane = static_cast<burnstab::Plane>(plane);
    spec.fixed_value = fixed_value;
    spec.u_lo = u_lo;
    spec.u_hi = u_hi;
    spec.nu = nu;
    spec.v_lo = v_lo;
    spec.v_hi = v_hi;
    spec.nv = nv;
    spec.traj_time = traj_time;
    const burnstab::StreamlineField field =
        burnstab::streamline_grid(to_cpp(*p), spec);

    std::string csv = "a,f,b,va,vf,vb\n";
    for (const burnstab::FieldSample& fs : field.samples)
      csv += burnstab::format17(fs.point.a) + ',' +
             burnstab::format17(fs.point.f) + ',' +
             burnstab::format17(fs.point.b) + ',' +
             burnstab::format17(fs.velocity.a) + ',' +
             burnstab::format17(fs.velocity.f) + ',' +
             burnstab::format17(fs.velocity.b) + '\n';
    burnstab::write_file(csv_path, csv);
    if (svg_path) burnstab::write_file(svg_path, burnstab::field_svg(field));
  });
}

bs_status bs_plot_phase(const bs_trajectory* const* trajs, size_t count,
                        const bs_params* p, bs_plane plane, const char* path) {
  if (!trajs || !path) return fail_arg("null pointer");
  return guarded([&] {
    std::vector<const burnstab::Trajectory*> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      const auto* m = std::get_if<burnstab::Trajectory>(&trajs[i]->data);
      if (!m)
        throw burnstab::error(burnstab::errc::invalid_argument,
                              "phase plots take model trajectories");
      list.push_back(m);
    }
    burnstab::State marker{};
    const burnstab::State* marker_ptr = nullptr;
    if (p) {
      const burnstab::Equilibrium e = burnstab::equilibrium(to_cpp(*p));
      marker = {e.a_star, e.f_star, e.b_star};
      marker_ptr = &marker;
    }
    burnstab::write_file(
        path, burnstab::phase_svg(list, static_cast<burnstab::Plane>(plane),
                                  marker_ptr));
  });
}

bs_status bs_plot_series(const bs_trajectory* const* trajs, size_t count,
                         int coord, const char* path) {
  if (!trajs || !path) return fail_arg("null pointer");
  if (coord < 0 || coord > 2) return fail_arg("coord must be 0, 1 or 2");
  return guarded([&] {
    std::vector<const burnstab::Trajectory*> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      const auto* m = std::get_if<burnstab::Trajectory>(&trajs[i]->data);
      if (!m)
        throw burnstab::error(burnstab::errc::invalid_argument,
                              "series plots take model trajectories");
      list.push_back(m);
    }
    burnstab::write_file(path, burnstab::series_svg(list, coord));
  });
}

}  // extern "C"
