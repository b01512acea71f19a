#include "stability.hpp"

#include <cmath>

namespace burnstab {

Jacobian3 jacobian(const Params& p, const State& s) {
  validate(p);
  Jacobian3 j;
  j[0] = {-p.alpha * s.f - p.gamma, -p.alpha * s.a, -p.beta};
  j[1] = {p.zeta, -p.eta, 0.0};
  j[2] = {-p.theta * (s.f - p.f0), -p.theta * s.a, 0.0};
  return j;
}

Jacobian3 jacobian_at_equilibrium(const Params& p) {
  const Equilibrium e = equilibrium(p);
  return jacobian(p, {e.a_star, e.f_star, e.b_star});
}

CubicPoly characteristic(const Params& p) {
  validate(p);
  return {p.alpha * p.f0 + p.gamma + p.eta,
          2.0 * p.alpha * p.f0 * p.eta + p.gamma * p.eta,
          -p.beta * p.eta * p.theta * p.f0};
}

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::reactive_unstable_three_real: return "ReactiveUnstable_ThreeReal";
    case Regime::reactive_unstable_complex_pair: return "ReactiveUnstable_ComplexPair";
    case Regime::proactive_stable_three_real: return "ProactiveStable_ThreeReal";
    case Regime::proactive_stable_complex_pair: return "ProactiveStable_ComplexPair";
    case Regime::proactive_unstable_focus: return "ProactiveUnstable_Focus";
    case Regime::hopf_critical: return "HopfCritical";
  }
  return "?";
}

StabilityVerdict classify(const Params& p, const ClassifyOptions& opt) {
  const CubicPoly q = characteristic(p);
  StabilityVerdict v;
  v.eigenvalues = solve(q);
  v.condition_lhs = q.c2 * q.c1;
  v.condition_rhs = p.beta * p.eta * std::abs(p.theta) * p.f0;

  const bool pair = v.eigenvalues.kind == RootKind::one_real_pair;
  if (p.theta > 0.0) {
    v.regime = pair ? Regime::reactive_unstable_complex_pair
                    : Regime::reactive_unstable_three_real;
    return v;
  }
  const double gap = v.condition_lhs - v.condition_rhs;
  if (std::abs(gap) <= opt.hopf_rel_tol * (1.0 + v.condition_lhs)) {
    v.regime = Regime::hopf_critical;
  } else if (gap > 0.0) {
    v.regime = pair ? Regime::proactive_stable_complex_pair
                    : Regime::proactive_stable_three_real;
  } else {
    v.regime = Regime::proactive_unstable_focus;
  }
  return v;
}

double critical_vartheta(const Params& p) {
  const CubicPoly q = characteristic(p);
  return q.c2 * q.c1 / (p.beta * p.eta * p.f0);
}

}  // namespace burnstab
