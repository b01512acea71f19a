#pragma once

#include <array>
#include <string>

#include "error.hpp"

namespace burnstab {

// Structural constants of the land/fire/prescribed-burning model.
//
// All rate constants are positive; theta is the policy response coefficient
// and may take either sign (theta > 0: reactive branch, destabilising;
// theta = -vartheta < 0: proactive branch, stabilising for moderate vartheta).
// f0 is the fire-activity level the burning program steers towards.
struct Params {
  double alpha{};  // fire consumption of available land
  double beta{};   // land consumption by prescribed burning
  double gamma{};  // regeneration rate
  double zeta{};   // fuel-to-fire coupling
  double eta{};    // natural fire decay
  double theta{};  // burning-policy response (nonzero)
  double f0{};     // target fire activity
};

bool is_valid(const Params& p) noexcept;
void validate(const Params& p);  // throws error(errc::invalid_params)

// Instantaneous state: available land a, fire activity f, prescribed burning b.
// Nothing is clamped here; the analytic system admits negative values and
// physical-range monitoring belongs to the integrator's event layer.
struct State {
  double a{};
  double f{};
  double b{};
};

// Right-hand side of the system, templated so the same formulas serve both
// real states and the complex-coordinate evaluation used by the feedback
// machinery:
//
//   da/dt =  -alpha f a - beta b + gamma (1 - a)
//   df/dt =   zeta a - eta f
//   db/dt =  -theta (f - f0) a
template <class T>
std::array<T, 3> vector_field_eval(const Params& p, const std::array<T, 3>& s) {
  const T& a = s[0];
  const T& f = s[1];
  const T& b = s[2];
  return {-p.alpha * f * a - p.beta * b + p.gamma * (T{1} - a),
          p.zeta * a - p.eta * f,
          -p.theta * (f - p.f0) * a};
}

State vector_field(const Params& p, const State& s) noexcept;

// The unique equilibrium with positive available land. Independent of theta.
struct Equilibrium {
  double a_star{};
  double f_star{};
  double b_star{};
};

Equilibrium equilibrium(const Params& p);

// Viability window of the equilibrium: a_star must fit in the unit land area
// and b_star must lie in [0, a_star]. Equality counts as holding. margins are
// the signed slacks of the three inequalities, in the same order as the flags.
struct FeasibilityReport {
  bool area_bounded{};      // eta*f0 <= zeta
  bool burn_nonnegative{};  // (gamma + alpha*f0)*eta*f0 <= gamma*zeta
  bool burn_within_land{};  // gamma*zeta <= (beta + gamma + alpha*f0)*eta*f0
  std::array<double, 3> margins{};

  bool all() const noexcept {
    return area_bounded && burn_nonnegative && burn_within_land;
  }
};

FeasibilityReport feasibility(const Params& p);

// Flat JSON object with keys alpha, beta, gamma, zeta, eta, theta, f0.
std::string to_json(const Params& p);
Params params_from_json(const std::string& text);
Params params_from_json_file(const std::string& path);

}  // namespace burnstab
