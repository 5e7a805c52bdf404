#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "coverfollow/cover_object.hpp"
#include "coverfollow/geometry.hpp"
#include "coverfollow/rng.hpp"
#include "coverfollow/scenario.hpp"
#include "coverfollow/terrain.hpp"

namespace coverfollow {

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;        ///< terrain elevation at (x, y)
  double heading = 0.0;  ///< (-pi, pi]
  double v = 0.0;
  double omega = 0.0;
  double roll = 0.0;
  double pitch = 0.0;

  Vec2 xy() const { return {x, y}; }
  Vec3 xyz() const { return {x, y, z}; }

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct VelocityCommand {
  double v = 0.0;
  double omega = 0.0;

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

enum class StepEvent { None, Collision, GoalReached };
std::string_view to_string(StepEvent e);
std::optional<StepEvent> parse_step_event(std::string_view s);

struct WorldConfig {
  double robot_radius = 0.4;
  double goal_tolerance = 0.5;
  /// Longest explicit-Euler substep used by step().
  double max_substep = 0.1;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

/// Complete simulator state. Terrain and objects are immutable and shared
/// between successor states; everything else is copied by value.
struct WorldState {
  std::shared_ptr<const ElevationGrid> grid;
  std::shared_ptr<const std::vector<CoverObject>> objects;
  RobotState robot;
  Vec2 goal;
  long tick = 0;
  Rng rng;
  WorldConfig config;

  const ElevationGrid& terrain() const { return *grid; }
  const std::vector<CoverObject>& object_list() const { return *objects; }
};

/// World with the robot parked at the start-zone center and rng seeded.
WorldState make_world(const Scenario& scenario, std::uint64_t seed, WorldConfig config = {});

/// Region the robot center may occupy: the grid extent shrunk by
/// max(cell_size, robot_radius) so attitude is always computable.
Box2 navigable_bounds(const WorldState& world);

/// Uniform pose in the zone, heading uniform in (-pi, pi], zero velocities.
/// Advances world.rng. Throws InvalidZone if the zone leaves the navigable
/// bounds or comes within robot radius of an object footprint.
RobotState spawn_robot(WorldState& world, const Box2& start_zone);

inline constexpr double kDefaultGoalRadius = 12.0;
inline constexpr int kGoalSampleAttempts = 1000;

/// Goal uniform over the disc of max_radius around the robot, in bounds and
/// reachable (outside every footprint grown by the robot radius). Advances
/// world.rng. Throws NoValidGoal after kGoalSampleAttempts failures.
Vec2 sample_goal(WorldState& world, double max_radius = kDefaultGoalRadius);

/// True iff pos is within footprint_radius + robot_radius (strict) of any
/// object center, or outside the navigable bounds.
bool collision_check(const WorldState& world, Vec2 pos, double robot_radius);

struct Attitude {
  double roll = 0.0;
  double pitch = 0.0;
};

/// pitch = atan(slope along heading), roll = atan(slope to the left of heading).
Attitude roll_pitch_at(const ElevationGrid& grid, double x, double y, double heading);

/// One explicit-Euler unicycle update: heading first, then position.
/// Shared by step() and every rollout so both integrate identically.
inline void integrate_unicycle(double& x, double& y, double& heading, double v, double omega,
                               double h) {
  heading = wrap_angle(heading + omega * h);
  x += v * std::cos(heading) * h;
  y += v * std::sin(heading) * h;
}

/// Number of equal substeps step() uses for an interval dt.
int substep_count(double dt, double max_substep);

/// Advances the world by dt under a constant command. The interval is split
/// into equal substeps no longer than config.max_substep; after each substep
/// the robot is checked for collision (the pose reverts to the last free one
/// and velocities zero) and for arrival within goal_tolerance of the goal.
/// Leaving the navigable bounds is a Collision.
std::pair<WorldState, StepEvent> step(const WorldState& world, VelocityCommand cmd, double dt);

/// Segment a -> b clears the terrain (sampled at cell_size spacing) and no
/// object cylinder. Symmetric in its arguments.
bool line_of_sight(const WorldState& world, Vec3 a, Vec3 b);

/// As line_of_sight, ignoring the object with the given id.
bool line_of_sight_excluding(const WorldState& world, Vec3 a, Vec3 b,
                             std::optional<int> ignored_object);

/// Refreshes z, roll and pitch from the terrain.
void settle_on_terrain(const ElevationGrid& grid, RobotState& robot);

}  // namespace coverfollow
