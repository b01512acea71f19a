#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "stability.hpp"

namespace burnstab {

// count == 1 pins the parameter at lo; count > 1 spans [lo, hi] inclusively.
struct ParamRange {
  double lo{1.0};
  double hi{1.0};
  int count{1};
};

struct SweepSpec {
  ParamRange alpha{}, beta{}, gamma{}, zeta{}, eta{}, theta{}, f0{};
  std::size_t max_points = 1'000'000;
};

struct SweepRow {
  std::size_t index{};
  Params params{};
  FeasibilityReport feasibility{};
  StabilityVerdict verdict{};
};

std::size_t sweep_size(const SweepSpec& spec);

// Streams one classified row per grid point in odometer order (alpha is the
// slowest axis, f0 the fastest); rows never accumulate in memory here.
void sweep(const SweepSpec& spec,
           const std::function<void(const SweepRow&)>& emit);

std::vector<SweepRow> sweep_collect(const SweepSpec& spec);

enum class FreeParam { alpha, beta, gamma, zeta, eta, vartheta, f0 };

std::optional<FreeParam> free_param_from_name(std::string_view name);

// Bisects the stability-boundary equality
//   (alpha f0 + gamma + eta)(2 alpha f0 eta + gamma eta) = beta eta vartheta f0
// in the chosen parameter over [lo, hi], to 1e-12 relative. The equality must
// change sign over the interval (errc::no_root_in_interval otherwise), and
// unless the free parameter is vartheta the base theta must be negative.
double hopf_boundary(const Params& base, FreeParam free_param, double lo,
                     double hi);

// Constructive parameter families realizing each discriminant sign, built on
// the scaling f0 = 1, gamma = eta = c*alpha, zeta = (1+c)*alpha.
enum class WitnessBranch {
  large_alpha_positive_disc,         // c = 0.1, alpha = knob (default 100)
  small_c_negative_disc_theta_neg,   // alpha = 1, beta = 1/|theta|, c = knob (default 0.01)
  small_alpha_negative_disc_theta_pos,  // c = beta = 1, alpha = knob (default 1e-3)
};

enum class DiscSign { positive, negative };

struct FamilyPoint {
  Params params{};
  double discriminant{};
  DiscSign branch{};
  WitnessBranch source{};
};

// knob <= 0 selects the documented default; theta == 0 selects the branch's
// default sign (-1, -1, +1 respectively). A point whose computed discriminant
// misses the branch's sign (knob outside the asymptotic regime) is rejected
// with errc::branch_condition_unmet, never adjusted.
FamilyPoint discriminant_witness(WitnessBranch branch, double knob = 0.0,
                                 double theta = 0.0);

}  // namespace burnstab
