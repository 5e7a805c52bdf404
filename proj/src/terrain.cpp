#include "coverfollow/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coverfollow/errors.hpp"

namespace coverfollow {
namespace {

// Tolerance (in cells) for snapping queries onto cell centers and extent edges.
constexpr double kSnapCells = 1e-9;

struct CellCoord {
  std::size_t index;
  double frac;
};

CellCoord locate(double coord, double origin, double cell_size, std::size_t cells) {
  double f = (coord - origin) / cell_size;
  const double nearest = std::round(f);
  if (std::abs(f - nearest) < kSnapCells) f = nearest;
  const double last = static_cast<double>(cells - 1);
  f = std::clamp(f, 0.0, last);
  auto index = static_cast<std::size_t>(std::floor(f));
  if (index >= cells - 1) index = cells - 2;
  return {index, f - static_cast<double>(index)};
}

[[noreturn]] void throw_out_of_bounds(double x, double y) {
  throw OutOfBounds("query (" + std::to_string(x) + ", " + std::to_string(y) +
                    ") outside elevation grid");
}

}  // namespace

ElevationGrid::ElevationGrid(std::size_t width_cells, std::size_t height_cells, double cell_size,
                             Vec2 origin, std::vector<double> heights)
    : width_(width_cells),
      height_(height_cells),
      cell_size_(cell_size),
      origin_(origin),
      heights_(std::move(heights)) {
  if (width_ < 2 || height_ < 2) throw InvalidSpec("elevation grid needs at least 2x2 cells");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_))
    throw InvalidSpec("cell_size must be positive");
  if (heights_.size() != width_ * height_)
    throw InvalidSpec("heights length does not match grid dimensions");
  if (!std::isfinite(origin_.x) || !std::isfinite(origin_.y))
    throw InvalidSpec("grid origin must be finite");
  if (!std::all_of(heights_.begin(), heights_.end(), [](double h) { return std::isfinite(h); }))
    throw InvalidSpec("heights must be finite");
}

Box2 ElevationGrid::bounds() const {
  return {origin_, cell_center(width_ - 1, height_ - 1)};
}

bool ElevationGrid::contains(double x, double y) const {
  const double tol = kSnapCells * cell_size_;
  const Box2 b = bounds();
  return x >= b.min.x - tol && x <= b.max.x + tol && y >= b.min.y - tol && y <= b.max.y + tol;
}

double ElevationGrid::min_height() const {
  return *std::min_element(heights_.begin(), heights_.end());
}

double ElevationGrid::max_height() const {
  return *std::max_element(heights_.begin(), heights_.end());
}

double elevation_at(const ElevationGrid& grid, double x, double y) {
  if (!grid.contains(x, y)) throw_out_of_bounds(x, y);
  const auto cx = locate(x, grid.origin().x, grid.cell_size(), grid.width_cells());
  const auto cy = locate(y, grid.origin().y, grid.cell_size(), grid.height_cells());
  const double h00 = grid.at(cx.index, cy.index);
  const double h10 = grid.at(cx.index + 1, cy.index);
  const double h01 = grid.at(cx.index, cy.index + 1);
  const double h11 = grid.at(cx.index + 1, cy.index + 1);
  // Weighted form keeps the result exact when a fraction is 0 or 1.
  const double lower = (1.0 - cx.frac) * h00 + cx.frac * h10;
  const double upper = (1.0 - cx.frac) * h01 + cx.frac * h11;
  return (1.0 - cy.frac) * lower + cy.frac * upper;
}

Slope gradient_at(const ElevationGrid& grid, double x, double y) {
  const double h = grid.cell_size();
  if (!grid.contains(x - h, y - h) || !grid.contains(x + h, y + h)) throw_out_of_bounds(x, y);
  return {(elevation_at(grid, x + h, y) - elevation_at(grid, x - h, y)) / (2.0 * h),
          (elevation_at(grid, x, y + h) - elevation_at(grid, x, y - h)) / (2.0 * h)};
}

double delta_h(const ElevationGrid& grid, Vec2 cur, Vec2 prev) {
  return elevation_at(grid, cur.x, cur.y) - elevation_at(grid, prev.x, prev.y);
}

}  // namespace coverfollow
