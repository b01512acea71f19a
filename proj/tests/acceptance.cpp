// Acceptance suite: one pass/fail line per criterion, each with its pinned
// tolerance and runtime budget. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "atlas.hpp"
#include "cubic.hpp"
#include "feedback.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "stability.hpp"
#include "support/oracles.hpp"
#include "support/sampling.hpp"

using namespace burnstab;

namespace {

int g_criterion_failures = 0;

#define REQUIRE_C(cond, ...)                                   \
  do {                                                         \
    if (!(cond)) {                                             \
      std::fprintf(stderr, "       detail: " __VA_ARGS__);     \
      std::fprintf(stderr, " [%s:%d]\n", __FILE__, __LINE__);  \
      ++g_criterion_failures;                                  \
      return;                                                  \
    }                                                          \
  } while (0)

const Params kStable{1.0, 1.0, 1.0, 2.5, 1.0, -0.1, 1.0};

Params bench(double theta) {
  Params p = kStable;
  p.theta = theta;
  return p;
}

double dist(const State& s, const Equilibrium& e) {
  const double da = s.a - e.a_star, df = s.f - e.f_star, db = s.b - e.b_star;
  return std::sqrt(da * da + df * df + db * db);
}

// Shared between criteria 4 and 7 so the invariance check is bundled with the
// ensemble runtime.
EnsembleResult* g_stable_ensemble = nullptr;

void criterion_equilibrium_exactness() {
  UniformRng rng(1001);
  for (int i = 0; i < 10000; ++i) {
    const Params p = sampling::random_params(rng);
    const Equilibrium e = equilibrium(p);
    const State s{e.a_star, e.f_star, e.b_star};
    const State d = vector_field(p, s);
    const double scale =
        std::max({1.0, std::abs(p.alpha * s.f * s.a), std::abs(p.beta * s.b),
                  std::abs(p.gamma), std::abs(p.zeta * s.a),
                  std::abs(p.eta * s.f)});
    const double worst =
        std::max({std::abs(d.a), std::abs(d.f), std::abs(d.b)});
    REQUIRE_C(worst <= 1e-12 * scale,
              "draw %d: field residual %.3e exceeds 1e-12 relative", i, worst);
  }
}

void criterion_reactive_instability() {
  UniformRng rng(1002);
  for (int i = 0; i < 1000; ++i) {
    const Params p = sampling::random_feasible(rng, +1.0);
    REQUIRE_C(feasibility(p).all(), "draw %d not feasible", i);
    const RootSet rs = classify(p).eigenvalues;
    if (rs.kind == RootKind::three_real) {
      REQUIRE_C(rs.real_roots[2] > 0.0 && rs.real_roots[1] < 0.0 &&
                    rs.real_roots[0] < 0.0,
                "draw %d: real spectrum not (+,-,-)", i);
    } else {
      REQUIRE_C(rs.real_roots[0] > 0.0 && rs.pair_re < 0.0,
                "draw %d: pair spectrum not (real+, pair-)", i);
    }
  }
}

void criterion_proactive_trichotomy() {
  UniformRng rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const Params stable = sampling::random_proactive(rng, true);
    const StabilityVerdict vs = classify(stable);
    REQUIRE_C(vs.regime == Regime::proactive_stable_three_real ||
                  vs.regime == Regime::proactive_stable_complex_pair,
              "stable draw %d classified %s", i, regime_name(vs.regime));
    for (const auto& z : vs.eigenvalues.all())
      REQUIRE_C(z.real() < 0.0, "stable draw %d has Re >= 0", i);

    const Params unstable = sampling::random_proactive(rng, false);
    const StabilityVerdict vu = classify(unstable);
    REQUIRE_C(vu.regime == Regime::proactive_unstable_focus,
              "unstable draw %d classified %s", i, regime_name(vu.regime));
    REQUIRE_C(vu.eigenvalues.kind == RootKind::one_real_pair &&
                  vu.eigenvalues.real_roots[0] < 0.0 &&
                  vu.eigenvalues.pair_re > 0.0,
              "unstable draw %d spectrum shape wrong", i);

    // The constructed equality point factors as (-c2, +-i sqrt(c1)).
    Params critical = sampling::random_feasible(rng, -1.0);
    critical.theta = -critical_vartheta(critical);
    const StabilityVerdict vc = classify(critical);
    REQUIRE_C(vc.regime == Regime::hopf_critical,
              "critical draw %d classified %s", i, regime_name(vc.regime));
    const CubicPoly q = characteristic(critical);
    const RootSet& rs = vc.eigenvalues;
    const double scale = 1.0 + std::abs(q.c2) + std::sqrt(q.c1);
    REQUIRE_C(rs.kind == RootKind::one_real_pair, "critical draw %d kind", i);
    REQUIRE_C(std::abs(rs.real_roots[0] + q.c2) <= 1e-9 * scale &&
                  std::abs(rs.pair_re) <= 1e-9 * scale &&
                  std::abs(rs.pair_im - std::sqrt(q.c1)) <= 1e-9 * scale,
              "critical draw %d roots off the (-c2, +-i sqrt(c1)) form", i);
  }
}

void criterion_benchmark_ensembles() {
  IntegratorConfig cfg;
  cfg.t_end = 100.0;

  static EnsembleResult stable;
  stable = ensemble(bench(-0.1), 100, 1e-4, 20260810, cfg);
  g_stable_ensemble = &stable;
  REQUIRE_C(stable.summary.max_terminal < stable.summary.max_initial,
            "vartheta=0.1 max deviation grew: %.3e -> %.3e",
            stable.summary.max_initial, stable.summary.max_terminal);
  REQUIRE_C(stable.summary.mean_terminal < stable.summary.mean_initial,
            "vartheta=0.1 mean deviation grew");

  const EnsembleResult wild = ensemble(bench(-20.0), 100, 1e-4, 20260810, cfg);
  REQUIRE_C(wild.summary.max_terminal >= 10.0 * wild.summary.max_initial,
            "vartheta=20 max expansion only %.2fx",
            wild.summary.max_terminal / wild.summary.max_initial);
  REQUIRE_C(wild.summary.mean_terminal >= 10.0 * wild.summary.mean_initial,
            "vartheta=20 mean expansion only %.2fx",
            wild.summary.mean_terminal / wild.summary.mean_initial);

  const double crit = critical_vartheta(kStable);
  REQUIRE_C(std::abs(crit - 9.0) <= 1e-12 * 9.0,
            "critical vartheta for the benchmark set is %.17g, not 9", crit);
}

void criterion_feedback_stabilization() {
  const Params p = bench(1.0);
  const SchurForm sf = schur_triangulate(p);
  const FeedbackGains g = design_gains(sf.lambda1(), 1.0);

  for (const auto& z : closed_loop_spectrum(sf, g))
    REQUIRE_C(z.real() <= -1e-3, "closed-loop eigenvalue Re = %.3e", z.real());

  const AugmentedState xss = augmented_equilibrium(p, sf);
  IntegratorConfig cfg;
  cfg.t_end = 200.0;
  UniformRng rng(1005);
  for (int trial = 0; trial < 3; ++trial) {
    AugmentedState x0 = xss;
    x0.x1 += rng.range(-1e-3, 1e-3);
    x0.x2 += complexd(rng.range(-1e-3, 1e-3), rng.range(-1e-3, 1e-3));
    x0.x3 += complexd(rng.range(-1e-3, 1e-3), rng.range(-1e-3, 1e-3));
    x0.omega += rng.range(-1e-3, 1e-3);
    const AugmentedTrajectory traj = integrate_augmented(p, sf, g, x0, cfg);
    REQUIRE_C(traj.status == RunStatus::completed, "closed loop did not finish");
    const AugmentedState& xt = traj.terminal();
    const double d = std::sqrt(
        std::norm(xt.x1 - xss.x1) + std::norm(xt.x2 - xss.x2) +
        std::norm(xt.x3 - xss.x3) + std::norm(xt.omega - xss.omega));
    REQUIRE_C(d < 1e-6, "closed loop settled %.3e away (trial %d)", d, trial);
  }

  const Equilibrium e = equilibrium(p);
  const auto dir = unstable_direction(p);
  const State y0{e.a_star + 1e-3 * dir[0], e.f_star + 1e-3 * dir[1],
                 e.b_star + 1e-3 * dir[2]};
  const Trajectory open_loop = integrate(p, y0, cfg);
  REQUIRE_C(dist(open_loop.terminal(), e) > 1e-1,
            "open loop stayed within 1e-1 (%.3e)",
            dist(open_loop.terminal(), e));
}

void criterion_crossing() {
  for (const double theta : {1.0, -1.0}) {
    IntegratorConfig cfg;
    cfg.t_end = 5.0;
    const Trajectory traj = crossing_experiment(bench(theta), 0.5, cfg);
    bool found = false;
    for (const Event& ev : traj.events) {
      if (ev.kind != EventKind::b_crosses_a) continue;
      REQUIRE_C(ev.after.a > 0.0 && ev.after.b > ev.after.a &&
                    ev.after.b < 1.0,
                "theta=%g: state at the event is not 0 < a < b < 1", theta);
      found = true;
      break;
    }
    REQUIRE_C(found, "theta=%g: no crossing event detected", theta);
  }
}

void criterion_invariance() {
  REQUIRE_C(g_stable_ensemble != nullptr, "stable ensemble unavailable");
  for (const Trajectory& traj : g_stable_ensemble->members) {
    const InvarianceReport rep = invariance_monitor(traj, 1e-9);
    REQUIRE_C(rep.violations == 0,
              "range violation at t = %.6f while 0 <= b <= a held",
              rep.first_violation_time);
    REQUIRE_C(rep.samples_checked > 0, "no samples checked");
  }
}

void criterion_appendix_families() {
  // Hypothesis-satisfying triples have all three coefficients positive; the
  // pair-existence conclusion is false for negative linear coefficients.
  UniformRng rng(1008);
  int checked = 0;
  while (checked < 10000) {
    const double b = rng.range(0.01, 10.0);
    const double c = rng.range(0.01, 10.0);
    const double d = rng.range(0.01, 10.0);
    if (b * c > 3.0 * d) continue;
    if (std::abs(b * c - d) < 1e-12 * (1.0 + std::abs(d))) continue;
    ++checked;
    const RootSet rs = solve({b, c, d});
    REQUIRE_C(rs.kind == RootKind::one_real_pair,
              "triple (%g, %g, %g) produced no conjugate pair", b, c, d);
    if (b * c < d)
      REQUIRE_C(rs.pair_re > 0.0,
                "triple (%g, %g, %g): pair real part %.3e not positive", b, c,
                d, rs.pair_re);
  }

  // Witness generators: positive branch for both policy signs, negative
  // branches with their pinned signs; the sign check is exact.
  for (const double theta : {-1.0, 1.0}) {
    const FamilyPoint fp = discriminant_witness(
        WitnessBranch::large_alpha_positive_disc, 0.0, theta);
    REQUIRE_C(fp.discriminant > 0.0, "positive-branch witness has disc %.3e",
              fp.discriminant);
  }
  REQUIRE_C(
      discriminant_witness(WitnessBranch::small_c_negative_disc_theta_neg)
              .discriminant < 0.0,
      "negative-branch (small c) witness sign wrong");
  REQUIRE_C(
      discriminant_witness(WitnessBranch::small_alpha_negative_disc_theta_pos)
              .discriminant < 0.0,
      "negative-branch (small alpha) witness sign wrong");
}

void criterion_oracle_equivalence() {
  UniformRng rng(1009);
  for (int i = 0; i < 10000; ++i) {
    const CubicPoly q{rng.range(-10, 10), rng.range(-10, 10),
                      rng.range(-10, 10)};
    const double err = oracle::pair_error(solve(q).all(), oracle::cubic_roots(q));
    REQUIRE_C(err <= 1e-8, "cubic %d: paired-root error %.3e", i, err);
  }
  for (int i = 0; i < 10000; ++i) {
    const Params p = sampling::random_params(rng);
    const CubicPoly a = characteristic(p);
    const CubicPoly n = oracle::char_coeffs_numeric(jacobian_at_equilibrium(p));
    REQUIRE_C(std::abs(a.c2 - n.c2) <= 1e-12 * (1.0 + std::abs(a.c2)) &&
                  std::abs(a.c1 - n.c1) <= 1e-12 * (1.0 + std::abs(a.c1)) &&
                  std::abs(a.c0 - n.c0) <= 1e-12 * (1.0 + std::abs(a.c0)),
              "params %d: characteristic coefficients diverge", i);
  }
}

void criterion_integrator_order() {
  const Params p = kStable;
  const State s0{0.45, 1.1, 0.15};

  IntegratorConfig ref_cfg;
  ref_cfg.rel_tol = 1e-13;
  ref_cfg.abs_tol = 1e-15;
  ref_cfg.t_end = 10.0;
  const State ref = integrate(p, s0, ref_cfg).terminal();

  const auto rk4_err = [&](double h) {
    IntegratorConfig cfg;
    cfg.method = Method::rk4_fixed;
    cfg.step = h;
    cfg.t_end = 10.0;
    const State s = integrate(p, s0, cfg).terminal();
    return std::max({std::abs(s.a - ref.a), std::abs(s.f - ref.f),
                     std::abs(s.b - ref.b)});
  };

  const double ratio = rk4_err(0.1) / rk4_err(0.05);
  REQUIRE_C(ratio >= 16.0 * 0.8 && ratio <= 16.0 * 1.2,
            "error ratio under step halving is %.3f, want 16 +- 20%%", ratio);
}

struct Criterion {
  const char* label;
  double budget_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"equilibrium exactness: field residual <= 1e-12 relative, 10^4 draws",
       1.0, criterion_equilibrium_exactness},
      {"reactive instability: one positive real mode, 10^3 feasible draws",
       5.0, criterion_reactive_instability},
      {"proactive trichotomy incl. critical spectrum (-c2, +-i sqrt(c1))",
       5.0, criterion_proactive_trichotomy},
      {"benchmark ensembles: contraction at 0.1, >= 10x growth at 20, "
       "critical value 9",
       30.0, criterion_benchmark_ensembles},
      {"feedback: closed loop settles to 1e-6, open loop escapes 1e-1",
       10.0, criterion_feedback_stabilization},
      {"burn crossing: b overtakes a with 0 < a < b < 1, both policy signs",
       1.0, criterion_crossing},
      {"range invariance: a in (0,1), f > 0 while 0 <= b <= a (tol 1e-9)",
       30.0, criterion_invariance},
      {"root-pair criteria (10^4 triples) and discriminant witnesses",
       5.0, criterion_appendix_families},
      {"oracle equivalence: roots <= 1e-8, characteristic <= 1e-12, 10^4 each",
       5.0, criterion_oracle_equivalence},
      {"integrator order: RK4 halving ratio 16 +- 20%",
       5.0, criterion_integrator_order},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int before = g_criterion_failures;
    const auto t0 = std::chrono::steady_clock::now();
    criteria[i].run();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool ok = g_criterion_failures == before;
    if (ok && elapsed > criteria[i].budget_seconds) {
      std::fprintf(stderr, "       detail: runtime %.2f s over budget %.0f s\n",
                   elapsed, criteria[i].budget_seconds);
      ok = false;
    }
    std::printf("[%s] %02zu %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].label, elapsed);
    std::fflush(stdout);
    if (!ok) ++failed;
  }

  if (failed) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
