#pragma once

#include <array>
#include <span>
#include <vector>

#include "coverfollow/perception.hpp"

namespace coverfollow {

/// A previously visited position and its terrain elevation.
struct ElevationSample {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;

  friend bool operator==(const ElevationSample&, const ElevationSample&) = default;
};

/// Everything one reward evaluation needs about the transition t-1 -> t.
struct StepContext {
  double d_prev = 0.0;      ///< goal distance at t-1
  double d_cur = 0.0;       ///< goal distance at t
  double theta_prev = 0.0;  ///< heading at t-1
  double theta_cur = 0.0;   ///< heading at t
  double roll = 0.0;
  double pitch = 0.0;
  /// Most recent last. Only the newest n_history entries are used.
  std::vector<ElevationSample> elevation_history;
  double h_cur = 0.0;
  double d_cover = kNoCover;
};

enum RewardTerm { kGoal = 0, kDir, kStab, kElev, kCover };

struct RewardWeights {
  double w_elev = -1.0;
  int n_history = 5;
  double w_min = 0.67;  ///< shortest external robot dimension, meters
  std::array<double, 5> component_scales = {1.0, 1.0, 1.0, 1.0, 1.0};
};

struct RewardBreakdown {
  double r_goal = 0.0;
  double r_dir = 0.0;
  double r_stab = 0.0;
  double r_elev = 0.0;
  double r_cover = 0.0;
  double total = 0.0;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

inline constexpr double kCoverCollisionPenalty = -1000.0;

/// Progress toward the goal: d_prev - d_cur.
double r_goal(double d_prev, double d_cur);
/// -|wrap(theta_cur - theta_prev)|.
double r_dir(double theta_cur, double theta_prev);
/// exp(-(roll^2 + pitch^2)).
double r_stab(double roll, double pitch);
/// sum over the newest n_history samples of w_elev * |h_cur - h_i|.
/// Throws EmptyHistory if there is no sample.
double r_elev(const StepContext& ctx, const RewardWeights& weights);
/// 0 above 1.5 w_min (and for the no-cover sentinel), d - 0.5 w_min inside
/// [0.5 w_min, 1.5 w_min], -1000 below 0.5 w_min.
double r_cover(double d_cover, double w_min);

RewardBreakdown total_reward(const StepContext& ctx, const RewardWeights& weights);

/// Episode-level normalization, off by default. When enabled, every reward
/// is divided by max(1, max_cover) and -lambda * min_visibility is added to
/// the final step.
struct NormalizationConfig {
  bool enabled = false;
  double lambda = 0.0;
};

/// Throws DegenerateNormalizer when the denominator is zero or not finite.
std::vector<double> normalize_episode(std::span<const double> step_rewards, double max_cover,
                                      double min_visibility, const NormalizationConfig& cfg);

}  // namespace coverfollow
