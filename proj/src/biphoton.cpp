#include "spdc/biphoton.hpp"

#include <cmath>
#include <utility>

#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"

namespace spdc {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double pump_angular_spectrum(const PumpBeam& pump, Vec2 q) {
  const double w = pump.waist;
  return std::exp(-w * w * q.norm2() / 4.0);
}

double spatial_filter(double spatial_width, Vec2 k) {
  if (!(spatial_width > 0.0)) throw DomainError("spatial filter width must be positive");
  return std::exp(-0.5 * spatial_width * spatial_width * k.norm2());
}

double frequency_filter(const FilterSpec& spec, double omega) {
  if (!(spec.bandwidth > 0.0)) throw DomainError("filter bandwidth must be positive");
  const double d = omega - spec.center_frequency;
  return std::exp(-d * d / (2.0 * spec.bandwidth * spec.bandwidth));
}

ComplexField reference_mode(const CollectionMode& mode, const TransverseGrid& grid) {
  mode.validate();
  ComplexField out(grid);
  const std::size_t n = static_cast<std::size_t>(grid.n());
  const double w2 = mode.waist * mode.waist;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const Vec2 d = grid.point(ix, iy) - mode.center_transverse_k;
      out.at(ix, iy) = std::exp(-w2 * d.norm2() / 4.0);
    }
  }
  return out;
}

JointAmplitude::JointAmplitude(TransverseGrid grid_s, TransverseGrid grid_i, Evaluator evaluator,
                               std::optional<std::string> coverage_warning)
    : grid_s_(grid_s),
      grid_i_(grid_i),
      evaluator_(std::move(evaluator)),
      coverage_warning_(std::move(coverage_warning)) {
  if (!evaluator_) throw DomainError("joint amplitude requires an evaluator");
}

ComplexField JointAmplitude::slice_fixed_idler(std::size_t ix, std::size_t iy) const {
  const Vec2 ki = grid_i_.point(ix, iy);
  ComplexField out(grid_s_);
  const std::size_t n = static_cast<std::size_t>(grid_s_.n());
  for (std::size_t sy = 0; sy < n; ++sy) {
    for (std::size_t sx = 0; sx < n; ++sx) {
      out.at(sx, sy) = evaluator_(grid_s_.point(sx, sy), ki);
    }
  }
  return out;
}

ComplexField JointAmplitude::slice_fixed_signal(std::size_t ix, std::size_t iy) const {
  const Vec2 ks = grid_s_.point(ix, iy);
  ComplexField out(grid_i_);
  const std::size_t n = static_cast<std::size_t>(grid_i_.n());
  for (std::size_t jy = 0; jy < n; ++jy) {
    for (std::size_t jx = 0; jx < n; ++jx) {
      out.at(jx, jy) = evaluator_(ks, grid_i_.point(jx, jy));
    }
  }
  return out;
}

std::vector<JointAmplitude::Complex> JointAmplitude::materialize() const {
  if (grid_s_.n() > 32 || grid_i_.n() > 32) {
    throw DomainError("materialize() is limited to grids of at most 32 points per axis");
  }
  const std::size_t ns = static_cast<std::size_t>(grid_s_.n());
  const std::size_t ni = static_cast<std::size_t>(grid_i_.n());
  std::vector<Complex> out;
  out.reserve(ns * ns * ni * ni);
  for (std::size_t sy = 0; sy < ns; ++sy) {
    for (std::size_t sx = 0; sx < ns; ++sx) {
      const Vec2 ks = grid_s_.point(sx, sy);
      for (std::size_t jy = 0; jy < ni; ++jy) {
        for (std::size_t jx = 0; jx < ni; ++jx) {
          out.push_back(evaluator_(ks, grid_i_.point(jx, jy)));
        }
      }
    }
  }
  return out;
}

namespace {

// Scans the boundary of grid_a, pairing each point with its conjugate on the
// other arm, and reports the largest |Phi| seen. Mass at the boundary means
// the grid clips the amplitude.
double boundary_peak(const JointAmplitude::Evaluator& eval, const TransverseGrid& grid_a,
                     bool a_is_signal) {
  const std::size_t n = static_cast<std::size_t>(grid_a.n());
  double peak = 0.0;
  auto probe = [&](std::size_t ix, std::size_t iy) {
    const Vec2 ka = grid_a.point(ix, iy);
    const Vec2 kb = -ka;  // conjugate emission direction
    const std::complex<double> v = a_is_signal ? eval(ka, kb) : eval(kb, ka);
    peak = std::max(peak, std::abs(v));
  };
  for (std::size_t i = 0; i < n; ++i) {
    probe(i, 0);
    probe(i, n - 1);
    probe(0, i);
    probe(n - 1, i);
  }
  return peak;
}

}  // namespace

JointAmplitude joint_mode_function(const TransverseGrid& grid_s, const TransverseGrid& grid_i,
                                   const PumpBeam& pump, const Crystal& crystal,
                                   const PhaseMatchModel& model) {
  pump.validate();
  crystal.validate();
  model.validate();

  const PumpBeam pump_copy = pump;
  const Crystal crystal_copy = crystal;
  const PhaseMatchModel model_copy = model;
  const double half_length = 0.5 * crystal.thickness;

  JointAmplitude::Evaluator eval = [pump_copy, crystal_copy, model_copy,
                                    half_length](Vec2 ks, Vec2 ki) -> std::complex<double> {
    const double dk = phase_mismatch(ks, ki, pump_copy, crystal_copy, model_copy);
    const double arg = dk * half_length;
    const double amp = pump_angular_spectrum(pump_copy, ks + ki) * sinc(arg);
    return amp * std::complex<double>(std::cos(arg), std::sin(arg));
  };

  std::optional<std::string> warning;
  const double clip = std::max(boundary_peak(eval, grid_s, true), boundary_peak(eval, grid_i, false));
  if (clip > 1e-3) {
    warning = "joint amplitude reaches the grid boundary (peak boundary magnitude " +
              std::to_string(clip) + "); enlarge the grid extent";
  }
  return JointAmplitude(grid_s, grid_i, std::move(eval), std::move(warning));
}

ComplexField conditional_projection(const JointAmplitude& joint, const ComplexField& herald,
                                    ModeLabel which) {
  const TransverseGrid& herald_grid = which == ModeLabel::Signal ? joint.grid_i() : joint.grid_s();
  const TransverseGrid& out_grid = which == ModeLabel::Signal ? joint.grid_s() : joint.grid_i();
  if (!(herald.grid() == herald_grid)) {
    throw DomainError("herald field must live on the opposite photon's grid");
  }

  const std::size_t n_out = static_cast<std::size_t>(out_grid.n());
  const std::size_t n_h = static_cast<std::size_t>(herald_grid.n());
  const double weight = herald_grid.spacing() * herald_grid.spacing();

  ComplexField out(out_grid);
  parallel_for(n_out, [&](std::size_t oy) {
    for (std::size_t ox = 0; ox < n_out; ++ox) {
      const Vec2 k_out = out_grid.point(ox, oy);
      std::complex<double> acc = 0.0;
      for (std::size_t hy = 0; hy < n_h; ++hy) {
        for (std::size_t hx = 0; hx < n_h; ++hx) {
          const std::complex<double> u = herald.at(hx, hy);
          if (u == std::complex<double>(0.0, 0.0)) continue;
          const Vec2 k_h = herald_grid.point(hx, hy);
          const std::complex<double> phi =
              which == ModeLabel::Signal ? joint.eval(k_out, k_h) : joint.eval(k_h, k_out);
          acc += phi * u;
        }
      }
      out.at(ox, oy) = acc * weight;
    }
  });
  return out;
}

ComplexField conditional_mode(const JointAmplitude& joint, const ComplexField& herald,
                              ModeLabel which) {
  ComplexField out = conditional_projection(joint, herald, which);
  const double norm = out.norm_l2();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DataError("conditional mode is identically zero: herald does not overlap the joint amplitude");
  }
  out.normalize_l2();
  return out;
}

}  // namespace spdc
