#pragma once

#include <iosfwd>

#include "sisim/trajectory.hpp"

namespace sisim {

/// Minimal standalone SVG of S, I and N against time with vertical markers
/// at the impulse instants.
void write_trajectory_svg(const Trajectory& traj, std::ostream& os);

} // namespace sisim
