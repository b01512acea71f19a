#include "simulate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rng.hpp"

namespace burnstab {

namespace {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
bool all_finite(const Vec<N>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

template <std::size_t N>
double max_abs(const Vec<N>& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N, class Rhs>
Vec<N> rk4_step(const Rhs& f, double t, const Vec<N>& y, double h) {
  const Vec<N> k1 = f(t, y);
  Vec<N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const Vec<N> k2 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const Vec<N> k3 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  const Vec<N> k4 = f(t + h, tmp);
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Dormand-Prince 5(4) pair; returns the 5th-order solution and the scaled
// error norm of the embedded difference.
template <std::size_t N, class Rhs>
double dopri_step(const Rhs& f, double t, const Vec<N>& y, double h,
                  double rel_tol, double abs_tol, Vec<N>& out) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  Vec<N> tmp;
  const Vec<N> k1 = f(t, y);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  const Vec<N> k2 = f(t + h / 5.0, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const Vec<N> k3 = f(t + 3.0 * h / 10.0, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  const Vec<N> k4 = f(t + 4.0 * h / 5.0, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] =
        y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  const Vec<N> k5 = f(t + 8.0 * h / 9.0, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                         a64 * k4[i] + a65 * k5[i]);
  const Vec<N> k6 = f(t + h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                         b6 * k6[i]);
  const Vec<N> k7 = f(t + h, out);

  double err_sq = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
    const double sk =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(out[i]));
    err_sq += (e / sk) * (e / sk);
  }
  return std::sqrt(err_sq / static_cast<double>(N));
}

void check_config(const IntegratorConfig& cfg) {
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end))
    throw error(errc::invalid_argument, "t_end must be finite and > 0");
  if (cfg.method == Method::rk4_fixed) {
    if (!(cfg.step > 0.0) || !std::isfinite(cfg.step))
      throw error(errc::invalid_argument, "step must be finite and > 0");
  } else {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.max_step > 0.0))
      throw error(errc::invalid_argument,
                  "rel_tol, abs_tol and max_step must be > 0");
  }
}

// Drives either method; emit(t, y) is called for the initial sample and each
// accepted step and returns false to stop early.
template <std::size_t N, class Rhs, class Emit>
RunStatus drive(const Rhs& f, Vec<N> y, const IntegratorConfig& cfg,
                const Emit& emit) {
  double t = 0.0;
  if (!all_finite(y)) return RunStatus::nonfinite_state;
  if (!emit(t, y)) return RunStatus::completed;

  const double end = cfg.t_end;
  const double t_eps = 1e-14 * std::max(1.0, end);

  if (cfg.method == Method::rk4_fixed) {
    while (t < end - t_eps) {
      const double h = std::min(cfg.step, end - t);
      Vec<N> y_new = rk4_step(f, t, y, h);
      if (!all_finite(y_new)) return RunStatus::nonfinite_state;
      t = (end - (t + h) < t_eps) ? end : t + h;
      y = y_new;
      if (!emit(t, y)) return RunStatus::completed;
      if (max_abs(y) > cfg.divergence_bound)
        return RunStatus::truncated_divergence;
    }
    return RunStatus::completed;
  }

  double h = std::min({cfg.max_step, end / 1000.0});
  while (t < end - t_eps) {
    h = std::min(h, end - t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      return RunStatus::step_size_underflow;
    Vec<N> y_new;
    const double err = dopri_step(f, t, y, h, cfg.rel_tol, cfg.abs_tol, y_new);
    if (std::isnan(err) || err > 1.0) {
      const double fac =
          std::isnan(err) ? 0.2 : std::max(0.2, 0.9 * std::pow(err, -0.2));
      h *= std::min(fac, 1.0);
      continue;
    }
    if (!all_finite(y_new)) return RunStatus::nonfinite_state;
    t = (end - (t + h) < t_eps) ? end : t + h;
    y = y_new;
    if (!emit(t, y)) return RunStatus::completed;
    if (max_abs(y) > cfg.divergence_bound)
      return RunStatus::truncated_divergence;
    const double fac =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * fac, cfg.max_step);
  }
  return RunStatus::completed;
}

// ---- event monitors (3-dimensional model system only) ----

struct Monitor {
  EventKind kind;
  double (*g)(const Vec<3>&);
  bool both_directions;  // otherwise: only the + -> - crossing is an event
};

double g_b_minus_a(const Vec<3>& y) { return y[2] - y[0]; }
double g_a(const Vec<3>& y) { return y[0]; }
double g_one_minus_a(const Vec<3>& y) { return 1.0 - y[0]; }
double g_f(const Vec<3>& y) { return y[1]; }
double g_b(const Vec<3>& y) { return y[2]; }

constexpr Monitor kMonitors[] = {
    {EventKind::b_crosses_a, g_b_minus_a, true},
    {EventKind::a_leaves_unit_interval, g_a, false},
    {EventKind::a_leaves_unit_interval, g_one_minus_a, false},
    {EventKind::f_hits_zero, g_f, false},
    {EventKind::b_leaves_zero_to_a, g_b, false},
};

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

bool crossed(const Monitor& mon, double g_prev, double g_cur) {
  const int sp = sign_of(g_prev), sc = sign_of(g_cur);
  if (sc == 0 || sp == sc) return false;
  if (mon.both_directions) return true;
  return sp >= 0 && sc < 0;
}

// State at an interior time of an accepted step, rebuilt by fixed-substep
// integration from the step's start (no dense interpolant is kept).
template <class Rhs>
Vec<3> reconstruct(const Rhs& f, double t0, const Vec<3>& y0, double t) {
  if (t <= t0) return y0;
  const double len = t - t0;
  const int sub =
      std::clamp(static_cast<int>(std::ceil(len / 0.005)), 16, 4096);
  const double h = len / sub;
  Vec<3> y = y0;
  for (int i = 0; i < sub; ++i) y = rk4_step(f, t0 + i * h, y, h);
  return y;
}

template <class Rhs>
Event refine_event(const Rhs& f, const Monitor& mon, double t0,
                   const Vec<3>& y0, double t1, const Vec<3>& y1) {
  const int target = sign_of(mon.g(y1));
  double lo = t0, hi = t1;
  Vec<3> y_lo = y0, y_hi = y1;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // floating-point plateau
    const Vec<3> ym = reconstruct(f, t0, y0, mid);
    if (sign_of(mon.g(ym)) == target) {
      hi = mid;
      y_hi = ym;
    } else {
      lo = mid;
      y_lo = ym;
    }
  }
  Event ev;
  ev.kind = mon.kind;
  ev.time = hi;
  ev.before = {y_lo[0], y_lo[1], y_lo[2]};
  ev.after = {y_hi[0], y_hi[1], y_hi[2]};
  return ev;
}

}  // namespace

const char* event_kind_name(EventKind k) noexcept {
  switch (k) {
    case EventKind::b_crosses_a: return "BCrossesA";
    case EventKind::a_leaves_unit_interval: return "ALeavesUnitInterval";
    case EventKind::f_hits_zero: return "FHitsZero";
    case EventKind::b_leaves_zero_to_a: return "BLeavesZeroToA";
  }
  return "?";
}

const char* run_status_name(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::completed: return "Completed";
    case RunStatus::truncated_divergence: return "TruncatedDivergence";
    case RunStatus::nonfinite_state: return "NonFiniteState";
    case RunStatus::step_size_underflow: return "StepSizeUnderflow";
  }
  return "?";
}

Trajectory integrate(const Params& p, const State& s0,
                     const IntegratorConfig& cfg) {
  validate(p);
  check_config(cfg);
  if (!std::isfinite(s0.a) || !std::isfinite(s0.f) || !std::isfinite(s0.b))
    throw error(errc::invalid_argument, "initial state must be finite");

  const auto f = [&p](double, const Vec<3>& y) {
    return vector_field_eval<double>(p, y);
  };

  Trajectory traj;
  const auto emit = [&](double t, const Vec<3>& y) {
    if (!traj.times.empty()) {
      const double t_prev = traj.times.back();
      const State& sp = traj.states.back();
      const Vec<3> y_prev = {sp.a, sp.f, sp.b};
      for (const Monitor& mon : kMonitors) {
        if (crossed(mon, mon.g(y_prev), mon.g(y)))
          traj.events.push_back(refine_event(f, mon, t_prev, y_prev, t, y));
      }
    }
    traj.times.push_back(t);
    traj.states.push_back({y[0], y[1], y[2]});
    return !(cfg.terminate_on_event && !traj.events.empty());
  };

  traj.status = drive<3>(f, {s0.a, s0.f, s0.b}, cfg, emit);
  std::sort(traj.events.begin(), traj.events.end(),
            [](const Event& a, const Event& b) { return a.time < b.time; });
  return traj;
}

AugmentedTrajectory integrate_augmented(const Params& p, const SchurForm& sf,
                                        const FeedbackGains& g,
                                        const AugmentedState& x0,
                                        const IntegratorConfig& cfg) {
  validate(p);
  check_config(cfg);

  const auto pack = [](const AugmentedState& x) -> Vec<6> {
    return {x.x1,        x.x2.real(), x.x2.imag(),
            x.x3.real(), x.x3.imag(), x.omega};
  };
  const auto unpack = [](const Vec<6>& y) -> AugmentedState {
    return {y[0], {y[1], y[2]}, {y[3], y[4]}, y[5]};
  };

  const auto f = [&](double, const Vec<6>& y) {
    return pack(augmented_vector_field(p, sf, g, unpack(y)));
  };

  AugmentedTrajectory traj;
  const auto emit = [&](double t, const Vec<6>& y) {
    traj.times.push_back(t);
    traj.states.push_back(unpack(y));
    return true;
  };
  traj.status = drive<6>(f, pack(x0), cfg, emit);
  return traj;
}

double crossing_threshold(const Params& p) {
  validate(p);
  return p.gamma / (p.alpha * p.f0 + p.beta + p.gamma);
}

Trajectory crossing_experiment(const Params& p, double a0b0,
                               IntegratorConfig cfg) {
  const double lo = crossing_threshold(p);
  double start = a0b0;
  if (start <= 0.0) start = 0.5 * (lo + 1.0);
  if (!(start < 1.0) || !std::isfinite(start))
    throw error(errc::invalid_argument,
                "crossing experiment start must lie in (0, 1)");
  return integrate(p, {start, p.f0, start}, cfg);
}

InvarianceReport invariance_monitor(const Trajectory& traj,
                                    double boundary_tol) {
  InvarianceReport rep;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const State& s = traj.states[i];
    const bool pre_ok = s.b >= -boundary_tol && s.a - s.b >= -boundary_tol;
    if (!pre_ok) {
      rep.precondition_broken = true;
      rep.precondition_break_time = traj.times[i];
      break;
    }
    ++rep.samples_checked;
    const bool ok = s.a > -boundary_tol && s.a < 1.0 + boundary_tol &&
                    s.f > -boundary_tol;
    if (!ok) {
      if (rep.violations == 0) {
        rep.first_violation_time = traj.times[i];
        rep.first_violation_state = s;
      }
      ++rep.violations;
    }
  }
  return rep;
}

EnsembleResult ensemble(const Params& p, std::size_t n, double amplitude,
                        std::uint64_t seed, const IntegratorConfig& cfg) {
  validate(p);
  if (n == 0) throw error(errc::invalid_argument, "ensemble needs n >= 1");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw error(errc::invalid_argument, "amplitude must be finite and >= 0");

  const Equilibrium e = equilibrium(p);

  // All perturbations are drawn up front in member order, so the result is a
  // pure function of (params, n, amplitude, seed, cfg).
  UniformRng rng(seed);
  std::vector<State> starts;
  starts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double da = rng.range(-amplitude, amplitude);
    const double df = rng.range(-amplitude, amplitude);
    const double db = rng.range(-amplitude, amplitude);
    starts.push_back({e.a_star + da, e.f_star + df, e.b_star + db});
  }

  EnsembleResult result;
  result.members.reserve(n);
  result.summary.n = n;
  result.summary.amplitude = amplitude;
  result.summary.seed = seed;

  const auto dist = [&e](const State& s) {
    const double da = s.a - e.a_star, df = s.f - e.f_star, db = s.b - e.b_star;
    return std::sqrt(da * da + df * df + db * db);
  };

  for (std::size_t i = 0; i < n; ++i) {
    Trajectory traj = integrate(p, starts[i], cfg);
    const double d0 = dist(traj.initial());
    const double dT = dist(traj.terminal());
    result.summary.max_initial = std::max(result.summary.max_initial, d0);
    result.summary.max_terminal = std::max(result.summary.max_terminal, dT);
    result.summary.mean_initial += d0 / static_cast<double>(n);
    result.summary.mean_terminal += dT / static_cast<double>(n);
    result.members.push_back(std::move(traj));
  }
  return result;
}

const char* plane_name(Plane pl) noexcept {
  switch (pl) {
    case Plane::af: return "af";
    case Plane::ab: return "ab";
    case Plane::fb: return "fb";
  }
  return "?";
}

std::pair<int, int> plane_axes(Plane pl) noexcept {
  switch (pl) {
    case Plane::af: return {0, 1};
    case Plane::ab: return {0, 2};
    case Plane::fb: return {1, 2};
  }
  return {0, 1};
}

StreamlineField streamline_grid(const Params& p, const StreamlineSpec& spec) {
  validate(p);
  if (spec.nu < 1 || spec.nv < 1)
    throw error(errc::invalid_argument, "grid counts must be >= 1");
  if (static_cast<std::size_t>(spec.nu) * static_cast<std::size_t>(spec.nv) >
      1'000'000)
    throw error(errc::grid_too_large, "streamline grid exceeds 1e6 points");

  const auto [iu, iv] = plane_axes(spec.plane);
  const int iw = 3 - iu - iv;

  StreamlineField field;
  field.spec = spec;
  field.samples.reserve(static_cast<std::size_t>(spec.nu) * spec.nv);

  const auto coord = [](double lo, double hi, int i, int count) {
    return count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  };

  for (int jv = 0; jv < spec.nv; ++jv) {
    for (int ju = 0; ju < spec.nu; ++ju) {
      std::array<double, 3> y{};
      y[iu] = coord(spec.u_lo, spec.u_hi, ju, spec.nu);
      y[iv] = coord(spec.v_lo, spec.v_hi, jv, spec.nv);
      y[iw] = spec.fixed_value;
      const State point{y[0], y[1], y[2]};
      field.samples.push_back({point, vector_field(p, point)});
      if (spec.traj_time > 0.0) {
        IntegratorConfig cfg;
        cfg.t_end = spec.traj_time;
        field.short_trajectories.push_back(integrate(p, point, cfg));
      }
    }
  }
  return field;
}

}  // namespace burnstab
