#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "feedback.hpp"
#include "model.hpp"

namespace burnstab {

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
  Method method = Method::rk45_adaptive;
  double step = 1e-2;     // rk4_fixed step size
  double rel_tol = 1e-9;  // rk45 controller
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double t_end = 100.0;
  bool terminate_on_event = false;  // default: monitor and keep integrating
  double divergence_bound = 1e6;    // stop and report truncation beyond this
};

enum class EventKind {
  b_crosses_a,             // sign change of b - a
  a_leaves_unit_interval,  // a exits (0, 1)
  f_hits_zero,             // f drops through 0
  b_leaves_zero_to_a,      // b drops through 0 (the b > a exit is b_crosses_a)
};

const char* event_kind_name(EventKind k) noexcept;

struct Event {
  EventKind kind{};
  double time{};  // refined by bisection to 1e-10
  State before{};
  State after{};
};

enum class RunStatus {
  completed,
  truncated_divergence,
  nonfinite_state,
  step_size_underflow,
};

const char* run_status_name(RunStatus s) noexcept;

struct Trajectory {
  std::vector<double> times;  // strictly increasing, one entry per accepted step
  std::vector<State> states;
  std::vector<Event> events;
  RunStatus status = RunStatus::completed;

  const State& initial() const { return states.front(); }
  const State& terminal() const { return states.back(); }
};

Trajectory integrate(const Params& p, const State& s0,
                     const IntegratorConfig& cfg);

struct AugmentedTrajectory {
  std::vector<double> times;
  std::vector<AugmentedState> states;
  RunStatus status = RunStatus::completed;

  const AugmentedState& terminal() const { return states.back(); }
};

AugmentedTrajectory integrate_augmented(const Params& p, const SchurForm& sf,
                                        const FeedbackGains& g,
                                        const AugmentedState& x0,
                                        const IntegratorConfig& cfg);

// Lower end of the initial-data window a(0) = b(0) that forces the burn area
// past the available land: gamma / (alpha*f0 + beta + gamma).
double crossing_threshold(const Params& p);

// Starts at a(0) = b(0) (midpoint of (threshold, 1) when a0b0 <= 0) with
// f(0) = f0 and integrates with event monitoring; a b_crosses_a event is
// expected whenever a0b0 sits above the threshold.
Trajectory crossing_experiment(const Params& p, double a0b0 = -1.0,
                               IntegratorConfig cfg = {});

// Checks that a stays in (0,1) and f > 0 at every sample while 0 <= b <= a
// has held over the whole preceding interval; stops asserting once that
// precondition breaks. All boundary comparisons use boundary_tol.
struct InvarianceReport {
  std::size_t samples_checked{};
  bool precondition_broken{};
  double precondition_break_time{};  // valid when precondition_broken
  std::size_t violations{};
  double first_violation_time{};  // valid when violations > 0
  State first_violation_state{};
};

InvarianceReport invariance_monitor(const Trajectory& traj,
                                    double boundary_tol = 1e-9);

// Euclidean distances to the equilibrium at the first and last samples.
struct EnsembleSummary {
  std::size_t n{};
  double amplitude{};
  std::uint64_t seed{};
  double max_initial{};
  double mean_initial{};
  double max_terminal{};
  double mean_terminal{};
};

struct EnsembleResult {
  std::vector<Trajectory> members;  // ordered by member index
  EnsembleSummary summary{};
};

// n runs from equilibrium + per-coordinate uniform perturbations in
// [-amplitude, amplitude], drawn in member order from UniformRng(seed).
EnsembleResult ensemble(const Params& p, std::size_t n, double amplitude,
                        std::uint64_t seed, const IntegratorConfig& cfg);

enum class Plane { af, ab, fb };

const char* plane_name(Plane pl) noexcept;

struct StreamlineSpec {
  Plane plane = Plane::af;
  double fixed_value{};  // held value of the remaining coordinate
  double u_lo{}, u_hi{};
  int nu = 10;
  double v_lo{}, v_hi{};
  int nv = 10;
  double traj_time{};  // > 0: also integrate a short trajectory per grid point
};

struct FieldSample {
  State point;
  State velocity;
};

struct StreamlineField {
  StreamlineSpec spec;
  std::vector<FieldSample> samples;  // u varies fastest
  std::vector<Trajectory> short_trajectories;
};

StreamlineField streamline_grid(const Params& p, const StreamlineSpec& spec);

// Coordinate indices (into {a, f, b}) spanned by a plane.
std::pair<int, int> plane_axes(Plane pl) noexcept;

}  // namespace burnstab
