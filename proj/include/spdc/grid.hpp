#pragma once

#include <cstddef>

#include "spdc/vec2.hpp"

namespace spdc {

/// Uniform square grid in the transverse momentum plane. Points along each
/// axis run from center - half_extent to center + half_extent inclusive, so
/// spacing = 2*half_extent/(n-1). n must be even and >= 8.
class TransverseGrid {
 public:
  TransverseGrid(int n_points_per_axis, double half_extent, Vec2 center = {});

  int n() const { return n_; }
  double half_extent() const { return half_extent_; }
  double spacing() const { return spacing_; }
  Vec2 center() const { return center_; }

  double axis_x(std::size_t i) const { return center_.x - half_extent_ + spacing_ * static_cast<double>(i); }
  double axis_y(std::size_t j) const { return center_.y - half_extent_ + spacing_ * static_cast<double>(j); }
  Vec2 point(std::size_t ix, std::size_t iy) const { return {axis_x(ix), axis_y(iy)}; }

  std::size_t size() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }

  /// Grid with the same shape reflected through k = 0.
  TransverseGrid reflected() const { return TransverseGrid(n_, half_extent_, -center_); }

  friend bool operator==(const TransverseGrid& a, const TransverseGrid& b) {
    return a.n_ == b.n_ && a.half_extent_ == b.half_extent_ && a.center_ == b.center_;
  }

 private:
  int n_;
  double half_extent_;
  double spacing_;
  Vec2 center_;
};

}  // namespace spdc
