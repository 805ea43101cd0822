#pragma once

#include <complex>
#include <vector>

#include "spdc/grid.hpp"

namespace spdc {

/// Second-moment summary of an intensity distribution |f|^2 on a grid.
struct FieldMoments {
  Vec2 centroid;        // intensity-weighted mean transverse k
  double sigma_major;   // sqrt of larger principal second central moment
  double sigma_minor;   // sqrt of smaller principal second central moment
  double major_axis_azimuth;  // rad
};

/// Complex amplitude sampled on a TransverseGrid, stored row-major with the
/// x index fastest: value(ix, iy) = values[iy*n + ix].
class ComplexField {
 public:
  using Complex = std::complex<double>;

  ComplexField(TransverseGrid grid, std::vector<Complex> values);
  explicit ComplexField(TransverseGrid grid);  // zero-initialized

  const TransverseGrid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }

  Complex at(std::size_t ix, std::size_t iy) const {
    return values_[iy * static_cast<std::size_t>(grid_.n()) + ix];
  }
  Complex& at(std::size_t ix, std::size_t iy) {
    return values_[iy * static_cast<std::size_t>(grid_.n()) + ix];
  }

  /// Discrete L2 norm: sqrt(sum |v|^2 * spacing^2).
  double norm_l2() const;

  /// Scales values so norm_l2() == 1. Throws DataError on an all-zero field.
  void normalize_l2();

  /// Point reflection through k = 0; the result lives on grid().reflected().
  ComplexField reflected() const;

 private:
  TransverseGrid grid_;
  std::vector<Complex> values_;
};

/// Discrete inner product <a, b> = sum conj(a)*b * spacing^2.
/// Requires identical grids.
std::complex<double> inner_product(const ComplexField& a, const ComplexField& b);

/// Intensity centroid and principal second central moments of |field|^2.
FieldMoments field_moments(const ComplexField& field);

/// Ratio sigma_major/sigma_minor of the intensity distribution, >= 1.
/// Throws DataError on a zero field.
double ellipticity(const ComplexField& field);

}  // namespace spdc
