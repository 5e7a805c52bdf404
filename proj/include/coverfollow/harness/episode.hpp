#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverfollow/harness/policy.hpp"

namespace coverfollow::harness {

struct StepRecord {
  long tick = 0;
  RobotState state;
  VelocityCommand command;
  RewardBreakdown reward;
  CoverVerdict verdict;
  StepEvent event = StepEvent::None;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Full trace of one episode. records[0] is the spawn state (tick 0, no
/// command); every later record is one control step.
struct EpisodeLog {
  std::string scenario_id;
  std::uint64_t seed = 0;
  Vec2 goal;
  double dt = 0.25;
  std::vector<StepRecord> records;
  StepEvent terminal = StepEvent::None;
  double wall_clock_s = 0.0;

  int steps() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
  double sim_time_s() const { return steps() * dt; }

  friend bool operator==(const EpisodeLog&, const EpisodeLog&) = default;
};

/// Runs one episode from episode_seed until GoalReached, Collision or the
/// step limit.
EpisodeLog run_episode(Policy& policy, const Scenario& scenario, const EnvConfig& config,
                       std::uint64_t episode_seed, std::uint64_t policy_seed);

/// Terminal event is GoalReached.
bool success(const EpisodeLog& log);
/// Sum of planar segment lengths between consecutive records.
double trajectory_length(const EpisodeLog& log);
/// Fraction of control steps whose verdict was in cover (0 without steps).
double in_cover_ratio(const EpisodeLog& log);
/// Sum of |z_k - z_{k-1}| over the trajectory.
double cumulative_abs_dh(const EpisodeLog& log);

}  // namespace coverfollow::harness
