#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "coverfollow/dwa.hpp"
#include "coverfollow/perception.hpp"
#include "coverfollow/reward.hpp"
#include "coverfollow/scenario.hpp"
#include "coverfollow/world.hpp"

namespace coverfollow {

struct EnvConfig {
  WorldConfig world;
  DwaConfig dwa;
  SensorConfig sensor;
  RewardWeights reward;
  NormalizationConfig normalization;
  int max_steps = 100;
  double goal_radius = kDefaultGoalRadius;
  /// Optional observer positions; visibility is the fraction of them with a
  /// clear line of sight to the robot's sensor point. Empty means 0.
  std::vector<Vec3> observers;
};

/// Fraction of observers that can see the point `eye`.
double visibility(const WorldState& world, const std::vector<Vec3>& observers, const Vec3& eye);

/// Episode-level wrapper around the simulator: spawns the robot, samples the
/// goal, keeps the dynamic-window history for observations and evaluates the
/// reward of every transition.
class NavigationEnv {
 public:
  struct StepResult {
    StepEvent event = StepEvent::None;
    RewardBreakdown reward;
    CoverVerdict verdict;
    bool truncated = false;  ///< step limit reached without a terminal event
    double visibility = 0.0;
  };

  NavigationEnv(Scenario scenario, EnvConfig config);

  /// Starts an episode. Spawn pose and goal are drawn from episode_seed.
  void reset(std::uint64_t episode_seed);
  StepResult step(VelocityCommand cmd);

  const WorldState& world() const { return world_; }
  const VelocityWindow& window() const { return windows_.back(); }
  const CoverVerdict& verdict() const { return verdict_; }
  ObservationMatrix observation() const;
  int steps_taken() const { return steps_; }
  bool done() const { return done_; }
  const EnvConfig& config() const { return config_; }
  const Scenario& scenario() const { return scenario_; }

 private:
  CoverVerdict perceive() const;

  Scenario scenario_;
  EnvConfig config_;
  WorldState world_;
  std::deque<VelocityWindow> windows_;
  std::deque<ElevationSample> history_;
  CoverVerdict verdict_;
  int steps_ = 0;
  bool done_ = false;
};

}  // namespace coverfollow
