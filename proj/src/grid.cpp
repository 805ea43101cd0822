#include "spdc/grid.hpp"

#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

TransverseGrid::TransverseGrid(int n_points_per_axis, double half_extent, Vec2 center)
    : n_(n_points_per_axis), half_extent_(half_extent), center_(center) {
  if (n_ < 8 || n_ % 2 != 0) throw DomainError("grid points per axis must be even and >= 8");
  if (!(half_extent_ > 0.0) || !std::isfinite(half_extent_)) {
    throw DomainError("grid half extent must be positive and finite");
  }
  spacing_ = 2.0 * half_extent_ / static_cast<double>(n_ - 1);
}

}  // namespace spdc
