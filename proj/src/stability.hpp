#pragma once

#include <array>

#include "cubic.hpp"
#include "model.hpp"

namespace burnstab {

// Row-major 3x3 real matrix.
struct Jacobian3 {
  std::array<std::array<double, 3>, 3> m{};

  const std::array<double, 3>& operator[](int i) const { return m[i]; }
  std::array<double, 3>& operator[](int i) { return m[i]; }
};

Jacobian3 jacobian(const Params& p, const State& s);
Jacobian3 jacobian_at_equilibrium(const Params& p);

// Characteristic polynomial of the equilibrium Jacobian:
//   lambda^3 + (alpha f0 + gamma + eta) lambda^2
//            + (2 alpha f0 eta + gamma eta) lambda - beta eta theta f0.
// The quadratic and linear coefficients involve neither theta nor zeta.
CubicPoly characteristic(const Params& p);

enum class Regime {
  reactive_unstable_three_real,   // theta>0: one positive real, two negative reals
  reactive_unstable_complex_pair, // theta>0: one positive real, stable pair
  proactive_stable_three_real,    // theta<0, lhs>rhs: three negative reals
  proactive_stable_complex_pair,  // theta<0, lhs>rhs: negative real + stable pair
  proactive_unstable_focus,       // theta<0, lhs<rhs: negative real + unstable pair
  hopf_critical,                  // theta<0, lhs=rhs: roots -c2, +-i*sqrt(c1)
};

const char* regime_name(Regime r) noexcept;

// Carries both the analytic condition values and the computed spectrum, so a
// disagreement between the two routes is observable rather than hidden.
struct StabilityVerdict {
  Regime regime{};
  RootSet eigenvalues{};
  double condition_lhs{};  // (alpha f0 + gamma + eta)(2 alpha f0 eta + gamma eta)
  double condition_rhs{};  // beta eta |theta| f0
};

struct ClassifyOptions {
  // |lhs - rhs| <= hopf_rel_tol*(1 + lhs) counts as the critical equality.
  double hopf_rel_tol = 1e-9;
};

// Feasibility is not consulted here; the spectral statements hold without it.
StabilityVerdict classify(const Params& p, const ClassifyOptions& opt = {});

// Proactive strength at which the stable focus turns unstable:
//   vartheta* = (alpha f0 + gamma + eta)(2 alpha f0 eta + gamma eta)/(beta eta f0).
// theta in p is ignored.
double critical_vartheta(const Params& p);

}  // namespace burnstab
