#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coverfollow/cover_object.hpp"
#include "coverfollow/terrain.hpp"

namespace coverfollow {

enum class ScenarioKind { NormalElevation, LowElevation, LowHighElevation, ForestJungle };

std::string_view to_string(ScenarioKind kind);
/// Accepts the enum names and the short forms "normal", "low", "low-high", "forest".
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::NormalElevation;
  std::uint64_t seed = 0;
  double extent = 40.0;          ///< meters per side
  double object_density = 1.0;   ///< objects per 100 m^2 (forest multiplies this)
  double cell_size = 0.25;       ///< meters

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Relief band each kind must satisfy: [min_relief, max_relief].
struct ReliefBand {
  double min_relief;
  double max_relief;
};
ReliefBand relief_band(ScenarioKind kind);

/// A generated (or loaded) world layout.
struct Scenario {
  std::string id;
  ScenarioSpec spec;
  std::shared_ptr<const ElevationGrid> grid;
  std::vector<CoverObject> objects;
  Box2 start_zone;
  /// When set, episodes use this goal instead of sampling one.
  std::optional<Vec2> fixed_goal;
};

/// Half side of the square start zone at the map center.
inline constexpr double kStartZoneHalfSide = 1.0;

/// Deterministic under spec.seed. Throws InvalidSpec for an invalid spec.
Scenario generate_scenario(const ScenarioSpec& spec);

void validate(const ScenarioSpec& spec);

/// Geometry of the cover-corridor layout, relative to the start-zone center
/// with the goal on the +x axis. A block outlined by tall non-cover posts
/// stands on the direct route. Its north face is a row of bushes, so the way
/// around the block on that side runs along cover while the south side is
/// bare. The first `blind_posts` elements of the bush row are posts, which
/// keeps the bushes partially occluded when seen along the row from the west.
struct CorridorLayout {
  double goal_distance = 11.0;
  double block_x_begin = 3.0;
  double block_x_end = 8.0;
  double block_y_begin = -2.0;
  double block_y_end = 1.0;  ///< line of the bush row
  double post_spacing = 0.5;
  double post_radius = 0.3;
  double post_height = 2.0;
  double bush_spacing = 0.6;
  double bush_radius = 0.3;
  int blind_posts = 1;
};

/// LowElevation terrain without random objects, a fixed goal and the block
/// between start and goal.
Scenario make_cover_corridor(std::uint64_t seed, const CorridorLayout& layout = {});

}  // namespace coverfollow
