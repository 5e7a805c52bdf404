#include "coverfollow/perception.hpp"

#include <algorithm>
#include <cmath>

namespace coverfollow {

double detection_confidence(const SensorConfig& cfg, double distance, bool partially_occluded) {
  double c = cfg.base_confidence - cfg.range_penalty * distance / cfg.max_range;
  if (partially_occluded) c -= cfg.occlusion_penalty;
  return std::clamp(c, 0.0, 1.0);
}

std::vector<Detection> sense(const WorldState& world, const SensorConfig& cfg) {
  std::vector<Detection> out;
  const RobotState& r = world.robot;
  const double ch = std::cos(r.heading);
  const double sh = std::sin(r.heading);
  const Vec3 eye{r.x, r.y, r.z + cfg.sensor_height};
  for (const auto& obj : *world.objects) {
    const double dx = obj.position.x - r.x;
    const double dy = obj.position.y - r.y;
    const double dz = obj.position.z - r.z;
    const double forward = dx * ch + dy * sh;
    const double left = -dx * sh + dy * ch;
    if (std::abs(std::atan2(left, forward)) > 0.5 * cfg.fov) continue;
    const double dist = cover_distance(r.xyz(), obj.position);
    if (dist > cfg.max_range) continue;

    const double mid_z = obj.position.z + 0.5 * obj.obj_height;
    if (!line_of_sight_excluding(world, eye, {obj.position.x, obj.position.y, mid_z},
                                 obj.object_id))
      continue;
    // Lateral edges of the footprint as seen from the robot.
    const double planar = std::hypot(dx, dy);
    bool partial = false;
    if (planar > 0.0) {
      const double px = -dy / planar * obj.footprint_radius;
      const double py = dx / planar * obj.footprint_radius;
      for (double side : {1.0, -1.0}) {
        const Vec3 edge{obj.position.x + side * px, obj.position.y + side * py, mid_z};
        if (!line_of_sight_excluding(world, eye, edge, obj.object_id)) partial = true;
      }
    }

    Detection d;
    d.frame_id = world.tick;
    d.class_id = static_cast<int>(obj.cls);
    d.class_name = std::string(to_string(obj.cls));
    d.confidence = detection_confidence(cfg, dist, partial);
    d.object_id = obj.object_id;
    d.x_pos = -left;
    d.y_pos = -dz;
    d.z_pos = forward;

    // Project the cylinder's bounding rectangle through a pinhole camera.
    const double depth = std::max(forward, 0.1);
    const double cx = 0.5 * cfg.image_width;
    const double cy = 0.5 * cfg.image_height;
    const double cam_y_top = -(dz + obj.obj_height - cfg.sensor_height);
    const double cam_y_bottom = -(dz - cfg.sensor_height);
    d.x_min = std::clamp(cx + cfg.focal_px * (d.x_pos - obj.footprint_radius) / depth, 0.0,
                         cfg.image_width);
    d.x_max = std::clamp(cx + cfg.focal_px * (d.x_pos + obj.footprint_radius) / depth, 0.0,
                         cfg.image_width);
    d.y_min = std::clamp(cy + cfg.focal_px * cam_y_top / depth, 0.0, cfg.image_height);
    d.y_max = std::clamp(cy + cfg.focal_px * cam_y_bottom / depth, 0.0, cfg.image_height);
    out.push_back(std::move(d));
  }
  return out;
}

double cover_distance(const Vec3& robot, const Vec3& obj) {
  const double dx = robot.x - obj.x;
  const double dy = robot.y - obj.y;
  const double dz = robot.z - obj.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

CoverVerdict detect_cover(std::span<const Detection> detections, const Vec3& robot_loc) {
  CoverVerdict verdict;
  for (const auto& d : detections) {
    const auto cls = parse_cover_class(d.class_name);
    if (!cls || !is_cover_class(*cls) || !(d.confidence >= kCoverConfidenceThreshold)) continue;
    const double dist = cover_distance(d.position(), robot_loc);
    const bool nearer = dist < verdict.cover_distance;
    const bool tie_lower_id = dist == verdict.cover_distance && verdict.nearest_object_id &&
                              d.object_id < *verdict.nearest_object_id;
    if (nearer || tie_lower_id) {
      verdict.cover_distance = dist;
      verdict.nearest_object_id = d.object_id;
      verdict.cover_bearing = std::atan2(-(d.x_pos - robot_loc.x), d.z_pos - robot_loc.z);
    }
  }
  verdict.is_cover = verdict.cover_distance <= kCoverDistanceThreshold;
  return verdict;
}

}  // namespace coverfollow
