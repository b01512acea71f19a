#pragma once

#include <string>
#include <vector>

#include "simulate.hpp"

namespace burnstab {

// Minimal polyline renderings; plots are a pure view of trajectory data and
// never feed back into any numerical output.

// 2-D projection of one or more trajectories onto a coordinate plane, with
// the marker point (usually the equilibrium) drawn as a small circle.
std::string phase_svg(const std::vector<const Trajectory*>& trajs, Plane plane,
                      const State* marker = nullptr);

// Coordinate-vs-time panel; coord indexes {a, f, b}.
std::string series_svg(const std::vector<const Trajectory*>& trajs, int coord);

// Velocity field on a grid: one short segment per sample plus any short
// trajectories the grid carries.
std::string field_svg(const StreamlineField& field);

}  // namespace burnstab
