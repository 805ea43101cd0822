#include "spdc/field.hpp"

#include <cmath>
#include <utility>

#include "spdc/errors.hpp"

namespace spdc {

ComplexField::ComplexField(TransverseGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("field value array does not match grid shape");
  }
}

ComplexField::ComplexField(TransverseGrid grid) : grid_(grid), values_(grid.size()) {}

double ComplexField::norm_l2() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return std::sqrt(sum) * grid_.spacing();
}

void ComplexField::normalize_l2() {
  const double n = norm_l2();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DataError("cannot normalize a zero or non-finite field");
  }
  const double inv = 1.0 / n;
  for (auto& v : values_) v *= inv;
}

ComplexField ComplexField::reflected() const {
  const std::size_t n = static_cast<std::size_t>(grid_.n());
  ComplexField out(grid_.reflected());
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      out.at(ix, iy) = at(n - 1 - ix, n - 1 - iy);
    }
  }
  return out;
}

std::complex<double> inner_product(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw DomainError("inner product requires identical grids");
  std::complex<double> sum = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) sum += std::conj(av[i]) * bv[i];
  const double w = a.grid().spacing() * a.grid().spacing();
  return sum * w;
}

FieldMoments field_moments(const ComplexField& field) {
  const auto& g = field.grid();
  const std::size_t n = static_cast<std::size_t>(g.n());
  double total = 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double w = std::norm(field.at(ix, iy));
      total += w;
      mx += w * g.axis_x(ix);
      my += w * g.axis_y(iy);
    }
  }
  if (!(total > 0.0)) throw DataError("field moments of a zero field are undefined");
  mx /= total;
  my /= total;

  double mxx = 0.0, myy = 0.0, mxy = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    const double dy = g.axis_y(iy) - my;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double dx = g.axis_x(ix) - mx;
      const double w = std::norm(field.at(ix, iy));
      mxx += w * dx * dx;
      myy += w * dy * dy;
      mxy += w * dx * dy;
    }
  }
  mxx /= total;
  myy /= total;
  mxy /= total;

  const double half_trace = 0.5 * (mxx + myy);
  const double disc = std::sqrt(0.25 * (mxx - myy) * (mxx - myy) + mxy * mxy);
  const double lam_major = half_trace + disc;
  const double lam_minor = half_trace - disc;

  FieldMoments m;
  m.centroid = {mx, my};
  m.sigma_major = std::sqrt(std::max(lam_major, 0.0));
  m.sigma_minor = std::sqrt(std::max(lam_minor, 0.0));
  m.major_axis_azimuth = 0.5 * std::atan2(2.0 * mxy, mxx - myy);
  return m;
}

double ellipticity(const ComplexField& field) {
  const FieldMoments m = field_moments(field);
  if (!(m.sigma_minor > 0.0)) throw DataError("ellipticity undefined: degenerate minor axis");
  return m.sigma_major / m.sigma_minor;
}

}  // namespace spdc
