#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coverfollow/geometry.hpp"

namespace coverfollow {

/// Uniform 2.5D height field. Heights are samples at the cell centers
/// origin + (i * cell_size, j * cell_size), stored row-major (row = j, along y).
/// The queryable extent spans the outermost cell centers. Immutable after
/// construction, so a grid can be shared freely between readers.
class ElevationGrid {
 public:
  ElevationGrid(std::size_t width_cells, std::size_t height_cells, double cell_size, Vec2 origin,
                std::vector<double> heights);

  std::size_t width_cells() const { return width_; }
  std::size_t height_cells() const { return height_; }
  double cell_size() const { return cell_size_; }
  Vec2 origin() const { return origin_; }
  std::span<const double> heights() const { return heights_; }

  double at(std::size_t i, std::size_t j) const { return heights_[j * width_ + i]; }
  Vec2 cell_center(std::size_t i, std::size_t j) const {
    return {origin_.x + static_cast<double>(i) * cell_size_,
            origin_.y + static_cast<double>(j) * cell_size_};
  }

  /// Extent covered by cell centers.
  Box2 bounds() const;
  bool contains(double x, double y) const;

  double min_height() const;
  double max_height() const;
  double relief() const { return max_height() - min_height(); }

  friend bool operator==(const ElevationGrid&, const ElevationGrid&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  double cell_size_;
  Vec2 origin_;
  std::vector<double> heights_;
};

/// Bilinear interpolation of the four surrounding cell heights; exact at cell centers.
/// Throws OutOfBounds outside the grid extent.
double elevation_at(const ElevationGrid& grid, double x, double y);

struct Slope {
  double dz_dx = 0.0;
  double dz_dy = 0.0;
};

/// Central finite differences of elevation_at over one cell. The query point must
/// lie at least one cell inside the extent, otherwise OutOfBounds.
Slope gradient_at(const ElevationGrid& grid, double x, double y);

/// Elevation change h(cur) - h(prev).
double delta_h(const ElevationGrid& grid, Vec2 cur, Vec2 prev);

}  // namespace coverfollow
