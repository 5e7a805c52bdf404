#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "coverfollow/env.hpp"
#include "coverfollow/scenario.hpp"
#include "coverfollow/world.hpp"

namespace coverfollow::testing {

/// Square grid of n x n samples at spacing cell with heights f(x, y).
inline std::shared_ptr<const ElevationGrid> grid_from(std::size_t n, double cell,
                                                      const std::function<double(double, double)>& f) {
  std::vector<double> h(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) h[j * n + i] = f(i * cell, j * cell);
  return std::make_shared<const ElevationGrid>(n, n, cell, Vec2{0.0, 0.0}, std::move(h));
}

inline std::shared_ptr<const ElevationGrid> flat_grid(double extent = 40.0, double cell = 0.25) {
  const auto n = static_cast<std::size_t>(extent / cell) + 1;
  return grid_from(n, cell, [](double, double) { return 0.0; });
}

inline CoverObject make_object(int id, CoverClass cls, double x, double y, double radius = 0.5,
                               double height = 1.0, double z = 0.0) {
  CoverObject o;
  o.object_id = id;
  o.cls = cls;
  o.position = {x, y, z};
  o.footprint_radius = radius;
  o.obj_height = height;
  return o;
}

/// Hand-built scenario: flat 40 m map unless a grid is given, start zone at the center.
inline Scenario custom_scenario(std::vector<CoverObject> objects = {},
                                std::shared_ptr<const ElevationGrid> grid = nullptr) {
  Scenario s;
  s.id = "custom";
  s.grid = grid ? std::move(grid) : flat_grid();
  s.objects = std::move(objects);
  const Vec2 c = s.grid->bounds().center();
  s.start_zone = {{c.x - 1.0, c.y - 1.0}, {c.x + 1.0, c.y + 1.0}};
  return s;
}

/// World with the robot placed by hand.
inline WorldState world_at(const Scenario& s, RobotState robot, Vec2 goal = {}) {
  WorldState w = make_world(s, 1);
  robot.z = elevation_at(*w.grid, robot.x, robot.y);
  w.robot = robot;
  w.goal = goal;
  return w;
}

}  // namespace coverfollow::testing
