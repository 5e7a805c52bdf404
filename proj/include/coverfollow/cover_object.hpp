#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "coverfollow/geometry.hpp"

namespace coverfollow {

/// Semantic classes of objects in the world. Every class except Other can
/// conceal the robot.
enum class CoverClass { Tree, Bush, Rock, Cottage, Building, House, DisabledVehicle, Other };

inline constexpr std::array<CoverClass, 8> kAllCoverClasses = {
    CoverClass::Tree,     CoverClass::Bush,  CoverClass::Rock,
    CoverClass::Cottage,  CoverClass::Building, CoverClass::House,
    CoverClass::DisabledVehicle, CoverClass::Other};

/// Canonical name, e.g. "Rock", "DisabledVehicle".
std::string_view to_string(CoverClass c);

/// Case-insensitive; accepts singular and plural forms and ignores spaces,
/// underscores and quotes ("rocks", "Rock", "disabled vehicles").
std::optional<CoverClass> parse_cover_class(std::string_view name);

constexpr bool is_cover_class(CoverClass c) { return c != CoverClass::Other; }

/// Static object modeled as a vertical cylinder standing on the terrain.
/// position.z is the terrain elevation at the base.
struct CoverObject {
  int object_id = 0;
  CoverClass cls = CoverClass::Other;
  Vec3 position;
  double footprint_radius = 0.5;
  double obj_height = 1.0;

  Vec2 center() const { return {position.x, position.y}; }

  friend bool operator==(const CoverObject&, const CoverObject&) = default;
};

}  // namespace coverfollow
