#include "coverfollow/scenario.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "coverfollow/errors.hpp"
#include "coverfollow/rng.hpp"

namespace coverfollow {
namespace {

struct ClassShare {
  CoverClass cls;
  double weight;
  double radius_lo, radius_hi;
  double height_lo, height_hi;
};

struct KindProfile {
  int hills;
  double sigma_lo, sigma_hi;
  double relief_lo, relief_hi;  // target relief drawn from this sub-band
  double density_multiplier;
  std::vector<ClassShare> classes;
};

// Footprint radii and heights per class, in meters.
constexpr ClassShare kTree{CoverClass::Tree, 0, 0.25, 0.5, 4.0, 10.0};
constexpr ClassShare kBush{CoverClass::Bush, 0, 0.3, 0.7, 0.8, 1.6};
constexpr ClassShare kRock{CoverClass::Rock, 0, 0.3, 0.9, 0.5, 1.5};
constexpr ClassShare kCottage{CoverClass::Cottage, 0, 1.5, 2.5, 3.0, 4.0};
constexpr ClassShare kBuilding{CoverClass::Building, 0, 2.5, 3.5, 6.0, 10.0};
constexpr ClassShare kHouse{CoverClass::House, 0, 2.0, 3.0, 5.0, 7.0};
constexpr ClassShare kVehicle{CoverClass::DisabledVehicle, 0, 1.0, 1.4, 1.4, 1.8};
constexpr ClassShare kFence{CoverClass::Other, 0, 0.2, 0.4, 1.0, 1.5};

ClassShare weighted(ClassShare s, double w) {
  s.weight = w;
  return s;
}

KindProfile profile(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::NormalElevation:
      return {6, 6.0, 12.0, 0.05, 0.25, 1.0,
              {weighted(kTree, 0.4), weighted(kBush, 0.35), weighted(kRock, 0.25)}};
    case ScenarioKind::LowElevation:
      return {8, 3.0, 8.0, 0.3, 0.95, 1.0,
              {weighted(kBuilding, 0.1), weighted(kHouse, 0.1), weighted(kCottage, 0.1),
               weighted(kVehicle, 0.1), weighted(kBush, 0.2), weighted(kRock, 0.15),
               weighted(kTree, 0.1), weighted(kFence, 0.15)}};
    case ScenarioKind::LowHighElevation:
      return {10, 3.0, 7.0, 1.2, 2.8, 1.0,
              {weighted(kRock, 0.4), weighted(kTree, 0.3), weighted(kBush, 0.3)}};
    case ScenarioKind::ForestJungle:
      return {14, 2.0, 6.0, 4.2, 6.0, 3.0,
              {weighted(kTree, 0.6), weighted(kBush, 0.3), weighted(kRock, 0.1)}};
  }
  throw InvalidSpec("unknown scenario kind");
}

std::uint64_t kind_salt(ScenarioKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

std::vector<double> hill_field(const KindProfile& prof, std::size_t n, double cell, double extent,
                               Rng& rng) {
  struct Hill {
    double cx, cy, sigma, amp;
  };
  std::vector<Hill> hills;
  for (int k = 0; k < prof.hills; ++k) {
    const double amp = uniform(rng, 0.3, 1.0) * (uniform(rng, 0.0, 1.0) < 0.3 ? -1.0 : 1.0);
    hills.push_back({uniform(rng, 0.0, extent), uniform(rng, 0.0, extent),
                     uniform(rng, prof.sigma_lo, prof.sigma_hi), amp});
  }
  std::vector<double> heights(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) * cell;
      const double y = static_cast<double>(j) * cell;
      double h = 0.0;
      for (const auto& hill : hills) {
        const double r2 = (x - hill.cx) * (x - hill.cx) + (y - hill.cy) * (y - hill.cy);
        h += hill.amp * std::exp(-r2 / (2.0 * hill.sigma * hill.sigma));
      }
      heights[j * n + i] = h;
    }
  }
  // Normalize into the kind's band: minimum at 0, relief at the drawn target.
  const double target = uniform(rng, prof.relief_lo, prof.relief_hi);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double h : heights) {
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double scale = hi > lo ? target / (hi - lo) : 0.0;
  for (double& h : heights) h = (h - lo) * scale;
  return heights;
}

const ClassShare& pick_class(const std::vector<ClassShare>& classes, Rng& rng) {
  double total = 0.0;
  for (const auto& c : classes) total += c.weight;
  double u = uniform(rng, 0.0, total);
  for (const auto& c : classes) {
    if (u < c.weight) return c;
    u -= c.weight;
  }
  return classes.back();
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::NormalElevation: return "NormalElevation";
    case ScenarioKind::LowElevation: return "LowElevation";
    case ScenarioKind::LowHighElevation: return "LowHighElevation";
    case ScenarioKind::ForestJungle: return "ForestJungle";
  }
  return "NormalElevation";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  std::string key;
  for (char ch : name) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key == "normal" || key == "normalelevation") return ScenarioKind::NormalElevation;
  if (key == "low" || key == "lowelevation") return ScenarioKind::LowElevation;
  if (key == "lowhigh" || key == "lowhighelevation") return ScenarioKind::LowHighElevation;
  if (key == "forest" || key == "jungle" || key == "forestjungle" || key == "forestandjungle")
    return ScenarioKind::ForestJungle;
  return std::nullopt;
}

ReliefBand relief_band(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::NormalElevation: return {0.0, 0.3};
    case ScenarioKind::LowElevation: return {0.0, 1.0};
    case ScenarioKind::LowHighElevation: return {1.0, 3.0};
    case ScenarioKind::ForestJungle: return {4.0, std::numeric_limits<double>::infinity()};
  }
  return {0.0, 0.0};
}

void validate(const ScenarioSpec& spec) {
  if (!std::isfinite(spec.extent) || spec.extent < 30.0)
    throw InvalidSpec("extent must be at least 30 m");
  if (!std::isfinite(spec.object_density) || spec.object_density < 0.0)
    throw InvalidSpec("object_density must be non-negative");
  if (!std::isfinite(spec.cell_size) || spec.cell_size <= 0.0 || spec.cell_size > spec.extent / 4.0)
    throw InvalidSpec("cell_size must be positive and at most extent/4");
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  validate(spec);
  const KindProfile prof = profile(spec.kind);
  Rng rng(derive_seed(spec.seed, {kind_salt(spec.kind)}));

  const auto n = static_cast<std::size_t>(std::llround(spec.extent / spec.cell_size)) + 1;
  const double extent = static_cast<double>(n - 1) * spec.cell_size;
  auto grid = std::make_shared<const ElevationGrid>(
      n, n, spec.cell_size, Vec2{0.0, 0.0}, hill_field(prof, n, spec.cell_size, extent, rng));

  Scenario scenario;
  scenario.spec = spec;
  scenario.id = std::string(to_string(spec.kind)) + "-" + std::to_string(spec.seed);
  scenario.grid = grid;
  const Vec2 mid{0.5 * extent, 0.5 * extent};
  scenario.start_zone = {{mid.x - kStartZoneHalfSide, mid.y - kStartZoneHalfSide},
                         {mid.x + kStartZoneHalfSide, mid.y + kStartZoneHalfSide}};

  const double area = spec.extent * spec.extent;
  const auto target = static_cast<std::size_t>(
      std::llround(spec.object_density * prof.density_multiplier * area / 100.0));
  constexpr double kStartClearance = 1.0;  // robot radius plus margin
  constexpr double kGap = 0.2;
  const std::size_t max_attempts = 200 * target + 100;
  for (std::size_t attempt = 0; attempt < max_attempts && scenario.objects.size() < target;
       ++attempt) {
    const ClassShare& share = pick_class(prof.classes, rng);
    const double radius = uniform(rng, share.radius_lo, share.radius_hi);
    const double height = uniform(rng, share.height_lo, share.height_hi);
    const double margin = radius + 1.0;
    const Vec2 c{uniform(rng, margin, extent - margin), uniform(rng, margin, extent - margin)};
    if (distance(scenario.start_zone, c) <= radius + kStartClearance) continue;
    bool overlaps = false;
    for (const auto& o : scenario.objects) {
      if (distance(o.center(), c) <= o.footprint_radius + radius + kGap) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;
    CoverObject obj;
    obj.object_id = static_cast<int>(scenario.objects.size());
    obj.cls = share.cls;
    obj.position = {c.x, c.y, elevation_at(*grid, c.x, c.y)};
    obj.footprint_radius = radius;
    obj.obj_height = height;
    scenario.objects.push_back(obj);
  }
  return scenario;
}

Scenario make_cover_corridor(std::uint64_t seed, const CorridorLayout& layout) {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::LowElevation;
  spec.seed = seed;
  spec.object_density = 0.0;
  Scenario scenario = generate_scenario(spec);
  scenario.id = "CoverCorridor-" + std::to_string(seed);
  const Vec2 c = scenario.start_zone.center();
  scenario.fixed_goal = Vec2{c.x + layout.goal_distance, c.y};

  Rng rng(derive_seed(seed, {0xC0FF1D0Bu}));
  const auto& grid = *scenario.grid;
  auto place = [&](CoverClass cls, double x, double y, double radius, double height) {
    CoverObject obj;
    obj.object_id = static_cast<int>(scenario.objects.size());
    obj.cls = cls;
    obj.position = {c.x + x, c.y + y, elevation_at(grid, c.x + x, c.y + y)};
    obj.footprint_radius = radius;
    obj.obj_height = height;
    scenario.objects.push_back(obj);
  };
  auto post = [&](double x, double y) {
    place(CoverClass::Other, x, y, layout.post_radius, layout.post_height);
  };
  const double eps = 1e-9;
  for (double y = layout.block_y_begin; y < layout.block_y_end - eps; y += layout.post_spacing) {
    post(layout.block_x_begin, y);
    post(layout.block_x_end, y);
  }
  for (double x = layout.block_x_begin + layout.post_spacing; x < layout.block_x_end - eps;
       x += layout.post_spacing)
    post(x, layout.block_y_begin);
  int k = 0;
  for (double x = layout.block_x_begin; x <= layout.block_x_end + eps; x += layout.bush_spacing, ++k) {
    if (k < layout.blind_posts)
      post(x, layout.block_y_end);
    else
      place(CoverClass::Bush, x, layout.block_y_end, layout.bush_radius, uniform(rng, 0.6, 1.0));
  }
  return scenario;
}

}  // namespace coverfollow
