#pragma once

#include <string>
#include <vector>

#include "atlas.hpp"
#include "feedback.hpp"
#include "model.hpp"
#include "simulate.hpp"
#include "stability.hpp"

namespace burnstab {

// All CSV numbers carry 17 significant digits so files round-trip doubles.
std::string format17(double x);

// Header `t,a,f,b`, one row per accepted step, events appended as comment
// lines `# event,<kind>,<t>`; a `# status,<name>` line marks early stops.
std::string to_csv(const Trajectory& traj);

// Header `t,x1,re_x2,im_x2,re_x3,im_x3,omega`.
std::string to_csv(const AugmentedTrajectory& traj);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

std::string to_json(const FeasibilityReport& r);
std::string to_json(const StabilityVerdict& v);
std::string equilibrium_json(const Params& p);  // equilibrium + feasibility
std::string classify_json(const Params& p);     // verdict + critical vartheta
std::string feedback_design_json(double lambda1, const FeedbackGains& g,
                                 const std::array<complexd, 4>& spectrum);
std::string ensemble_summary_json(const EnsembleSummary& s, RunStatus worst,
                                  const std::vector<std::string>& files);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace burnstab
