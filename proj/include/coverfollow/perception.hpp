#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coverfollow/geometry.hpp"
#include "coverfollow/world.hpp"

namespace coverfollow {

/// One detected object. Positions are in the robot camera frame:
/// x_pos to the right, y_pos down, z_pos forward, relative to the robot base.
struct Detection {
  long frame_id = 0;
  int class_id = 0;
  std::string class_name;
  double confidence = 0.0;
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  int object_id = 0;
  double x_pos = 0.0;
  double y_pos = 0.0;
  double z_pos = 0.0;

  Vec3 position() const { return {x_pos, y_pos, z_pos}; }

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Minimum qualifying confidence and maximum cover distance (both inclusive).
inline constexpr double kCoverConfidenceThreshold = 0.85;
inline constexpr double kCoverDistanceThreshold = 10.0;

/// Sentinel distance when no qualifying object was detected.
inline constexpr double kNoCover = std::numeric_limits<double>::infinity();

struct CoverVerdict {
  bool is_cover = false;
  double cover_distance = kNoCover;
  std::optional<int> nearest_object_id;
  /// Bearing of the nearest qualifying object, radians, positive to the left
  /// of the heading; 0 when there is none.
  double cover_bearing = 0.0;

  bool has_cover_object() const { return nearest_object_id.has_value(); }

  friend bool operator==(const CoverVerdict&, const CoverVerdict&) = default;
};

struct SensorConfig {
  double fov = 2.0 * std::numbers::pi;  ///< full field of view, radians, in (0, 2*pi]
  double max_range = 20.0;              ///< meters
  double sensor_height = 0.6;           ///< above the robot base
  // Synthetic confidence: base - range_penalty * d / max_range - occlusion_penalty.
  double base_confidence = 1.0;
  double range_penalty = 0.3;
  double occlusion_penalty = 0.2;
  // Pinhole camera used only to synthesize bounding boxes.
  double image_width = 640.0;
  double image_height = 480.0;
  double focal_px = 320.0;
};

/// Confidence for an object at 3D distance d, clamped to [0, 1].
double detection_confidence(const SensorConfig& cfg, double distance, bool partially_occluded);

/// One Detection per object whose center lies within the field of view about
/// the heading and within max_range, with a clear line of sight from the
/// sensor to the object's mid-height center. An object is partially occluded
/// when the sight line to either lateral edge of its footprint is blocked.
std::vector<Detection> sense(const WorldState& world, const SensorConfig& cfg);

/// 3D Euclidean distance.
double cover_distance(const Vec3& robot, const Vec3& obj);

/// Single pass over the detections: objects of a cover class with confidence
/// >= 0.85 are considered, the nearest one (ties: lowest object_id) defines
/// cover_distance, and the robot is in cover when that distance is <= 10 m.
CoverVerdict detect_cover(std::span<const Detection> detections, const Vec3& robot_loc);

}  // namespace coverfollow
