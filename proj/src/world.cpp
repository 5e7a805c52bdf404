#include "coverfollow/world.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "coverfollow/errors.hpp"

namespace coverfollow {
namespace {

double canonical(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

bool lexicographically_less(const Vec3& a, const Vec3& b) {
  return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

bool terrain_clear(const ElevationGrid& grid, const Vec3& a, const Vec3& b) {
  constexpr double kTolerance = 1e-9;
  const double planar = std::hypot(b.x - a.x, b.y - a.y);
  const int samples = std::max(1, static_cast<int>(std::ceil(planar / grid.cell_size())));
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const double x = a.x + (b.x - a.x) * t;
    const double y = a.y + (b.y - a.y) * t;
    if (!grid.contains(x, y)) continue;
    const double z = a.z + (b.z - a.z) * t;
    if (z < elevation_at(grid, x, y) - kTolerance) return false;
  }
  return true;
}

bool segment_hits_cylinder(const Vec3& a, const Vec3& b, const CoverObject& obj) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double fx = a.x - obj.position.x;
  const double fy = a.y - obj.position.y;
  const double r = obj.footprint_radius;
  const double qa = dx * dx + dy * dy;
  const double qb = fx * dx + fy * dy;
  const double qc = fx * fx + fy * fy - r * r;
  double t0 = 0.0;
  double t1 = 1.0;
  if (qa == 0.0) {
    if (qc >= 0.0) return false;
  } else {
    const double disc = qb * qb - qa * qc;
    if (disc <= 0.0) return false;
    const double root = std::sqrt(disc);
    t0 = std::max(0.0, (-qb - root) / qa);
    t1 = std::min(1.0, (-qb + root) / qa);
    if (t0 >= t1) return false;
  }
  const double z0 = a.z + (b.z - a.z) * t0;
  const double z1 = a.z + (b.z - a.z) * t1;
  const double base = obj.position.z;
  const double top = base + obj.obj_height;
  return std::min(z0, z1) < top && std::max(z0, z1) > base;
}

}  // namespace

std::string_view to_string(StepEvent e) {
  switch (e) {
    case StepEvent::None: return "None";
    case StepEvent::Collision: return "Collision";
    case StepEvent::GoalReached: return "GoalReached";
  }
  return "None";
}

std::optional<StepEvent> parse_step_event(std::string_view s) {
  if (s == "None") return StepEvent::None;
  if (s == "Collision") return StepEvent::Collision;
  if (s == "GoalReached") return StepEvent::GoalReached;
  return std::nullopt;
}

void settle_on_terrain(const ElevationGrid& grid, RobotState& robot) {
  robot.z = elevation_at(grid, robot.x, robot.y);
  const Attitude att = roll_pitch_at(grid, robot.x, robot.y, robot.heading);
  robot.roll = att.roll;
  robot.pitch = att.pitch;
}

WorldState make_world(const Scenario& scenario, std::uint64_t seed, WorldConfig config) {
  WorldState world;
  world.grid = scenario.grid;
  world.objects = std::make_shared<const std::vector<CoverObject>>(scenario.objects);
  world.config = config;
  world.rng.seed(seed);
  const Vec2 c = scenario.start_zone.center();
  world.robot.x = c.x;
  world.robot.y = c.y;
  settle_on_terrain(*world.grid, world.robot);
  world.goal = scenario.fixed_goal.value_or(c);
  return world;
}

Box2 navigable_bounds(const WorldState& world) {
  const Box2 b = world.grid->bounds();
  const double m = std::max(world.grid->cell_size(), world.config.robot_radius);
  return {{b.min.x + m, b.min.y + m}, {b.max.x - m, b.max.y - m}};
}

RobotState spawn_robot(WorldState& world, const Box2& zone) {
  if (!(zone.min.x <= zone.max.x && zone.min.y <= zone.max.y))
    throw InvalidZone("start zone has negative extent");
  const Box2 nav = navigable_bounds(world);
  if (!nav.contains(zone.min) || !nav.contains(zone.max))
    throw InvalidZone("start zone leaves the navigable bounds");
  for (const auto& obj : *world.objects) {
    if (distance(zone, obj.center()) < obj.footprint_radius + world.config.robot_radius)
      throw InvalidZone("start zone intersects object " + std::to_string(obj.object_id));
  }
  RobotState robot;
  robot.x = zone.min.x + (zone.max.x - zone.min.x) * canonical(world.rng);
  robot.y = zone.min.y + (zone.max.y - zone.min.y) * canonical(world.rng);
  robot.heading = std::numbers::pi - 2.0 * std::numbers::pi * canonical(world.rng);
  settle_on_terrain(*world.grid, robot);
  return robot;
}

Vec2 sample_goal(WorldState& world, double max_radius) {
  if (!(max_radius >= 0.0)) throw std::invalid_argument("max_radius must be non-negative");
  const Vec2 origin = world.robot.xy();
  for (int attempt = 0; attempt < kGoalSampleAttempts; ++attempt) {
    const double r = max_radius * std::sqrt(canonical(world.rng));
    const double phi = 2.0 * std::numbers::pi * canonical(world.rng);
    const Vec2 p{origin.x + r * std::cos(phi), origin.y + r * std::sin(phi)};
    if (distance(p, origin) > max_radius) continue;
    if (!collision_check(world, p, world.config.robot_radius)) return p;
  }
  throw NoValidGoal("no free goal found within " + std::to_string(max_radius) + " m");
}

bool collision_check(const WorldState& world, Vec2 pos, double robot_radius) {
  if (!navigable_bounds(world).contains(pos)) return true;
  for (const auto& obj : *world.objects) {
    if (distance(obj.center(), pos) < obj.footprint_radius + robot_radius) return true;
  }
  return false;
}

Attitude roll_pitch_at(const ElevationGrid& grid, double x, double y, double heading) {
  const Slope s = gradient_at(grid, x, y);
  const double c = std::cos(heading);
  const double sn = std::sin(heading);
  const double along = s.dz_dx * c + s.dz_dy * sn;
  const double left = -s.dz_dx * sn + s.dz_dy * c;
  return {std::atan(left), std::atan(along)};
}

int substep_count(double dt, double max_substep) {
  return std::max(1, static_cast<int>(std::ceil(dt / max_substep - 1e-9)));
}

std::pair<WorldState, StepEvent> step(const WorldState& world, VelocityCommand cmd, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  WorldState next = world;
  RobotState& r = next.robot;
  const int n = substep_count(dt, world.config.max_substep);
  const double h = dt / n;
  StepEvent event = StepEvent::None;
  r.v = cmd.v;
  r.omega = cmd.omega;
  for (int k = 0; k < n; ++k) {
    const RobotState before = r;
    integrate_unicycle(r.x, r.y, r.heading, cmd.v, cmd.omega, h);
    if (collision_check(next, r.xy(), world.config.robot_radius)) {
      r = before;
      r.v = 0.0;
      r.omega = 0.0;
      event = StepEvent::Collision;
      break;
    }
    if (distance(r.xy(), next.goal) <= world.config.goal_tolerance) {
      event = StepEvent::GoalReached;
      break;
    }
  }
  settle_on_terrain(*next.grid, r);
  ++next.tick;
  return {std::move(next), event};
}

bool line_of_sight_excluding(const WorldState& world, Vec3 a, Vec3 b,
                             std::optional<int> ignored_object) {
  if (a == b) return true;
  if (lexicographically_less(b, a)) std::swap(a, b);
  if (!terrain_clear(*world.grid, a, b)) return false;
  for (const auto& obj : *world.objects) {
    if (ignored_object && obj.object_id == *ignored_object) continue;
    if (segment_hits_cylinder(a, b, obj)) return false;
  }
  return true;
}

bool line_of_sight(const WorldState& world, Vec3 a, Vec3 b) {
  return line_of_sight_excluding(world, a, b, std::nullopt);
}

}  // namespace coverfollow
