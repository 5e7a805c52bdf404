#pragma once

#include <span>
#include <string>

#include "coverfollow/harness/episode.hpp"

namespace coverfollow::harness {

/// Top view: terrain shaded by height, objects as circles, one polyline per
/// episode, start and goal markers.
std::string trajectory_svg(const Scenario& scenario, std::span<const EpisodeLog> logs,
                           int size_px = 600);

/// Episode return with a trailing moving average of `window` episodes.
std::string learning_curve_svg(std::span<const double> curve, int window = 10,
                               int width_px = 640, int height_px = 360);

}  // namespace coverfollow::harness
