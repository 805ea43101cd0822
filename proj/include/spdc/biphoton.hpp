#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spdc/field.hpp"
#include "spdc/grid.hpp"
#include "spdc/optics.hpp"

namespace spdc {

/// Pump transverse amplitude distribution E_0(q) = exp(-w_p^2 |q|^2 / 4),
/// real and positive with peak value 1 at q = 0.
double pump_angular_spectrum(const PumpBeam& pump, Vec2 q);

/// Spatial collection filter exp(-w_c^2 |k|^2 / 2), in (0, 1].
double spatial_filter(double spatial_width, Vec2 k);

/// Frequency collection filter exp(-(omega - omega_c0)^2 / (2 B_c^2)), in (0, 1].
double frequency_filter(const FilterSpec& spec, double omega);

/// Heralding reference mode u(k) = exp(-w_0^2 |k - center|^2 / 4) sampled on
/// the grid; un-normalized with peak value 1 at the mode center.
ComplexField reference_mode(const CollectionMode& mode, const TransverseGrid& grid);

/// Joint two-photon amplitude over the product of a signal and an idler grid.
/// Values are produced on demand from a pure evaluator, so the full 4D tensor
/// never needs to be held in memory; slices over either grid reproduce
/// identical values bit-for-bit.
class JointAmplitude {
 public:
  using Complex = std::complex<double>;
  using Evaluator = std::function<Complex(Vec2 k_s, Vec2 k_i)>;

  JointAmplitude(TransverseGrid grid_s, TransverseGrid grid_i, Evaluator evaluator,
                 std::optional<std::string> coverage_warning = std::nullopt);

  const TransverseGrid& grid_s() const { return grid_s_; }
  const TransverseGrid& grid_i() const { return grid_i_; }
  const std::optional<std::string>& coverage_warning() const { return coverage_warning_; }

  Complex eval(Vec2 k_s, Vec2 k_i) const { return evaluator_(k_s, k_i); }

  /// Phi(. , k_i) for the idler grid point (ix, iy), as a field on grid_s.
  ComplexField slice_fixed_idler(std::size_t ix, std::size_t iy) const;
  /// Phi(k_s, .) for the signal grid point (ix, iy), as a field on grid_i.
  ComplexField slice_fixed_signal(std::size_t ix, std::size_t iy) const;

  /// All values in signal-major order: index = ((sy*n_s + sx)*n_i + iy)*n_i + ix.
  /// Guarded to grids of at most 32 points per axis.
  std::vector<Complex> materialize() const;

 private:
  TransverseGrid grid_s_;
  TransverseGrid grid_i_;
  Evaluator evaluator_;
  std::optional<std::string> coverage_warning_;
};

/// Builds the joint amplitude
///   Phi(k_s, k_i) = E_0(k_s + k_i) * sinc(dk L / 2) * exp(i dk L / 2)
/// with dk from phase_mismatch(). A non-fatal coverage warning is attached
/// when significant amplitude reaches the boundary of either grid.
JointAmplitude joint_mode_function(const TransverseGrid& grid_s, const TransverseGrid& grid_i,
                                   const PumpBeam& pump, const Crystal& crystal,
                                   const PhaseMatchModel& model);

/// Normalized conditional mode of one photon given its partner is projected
/// onto the herald field: for which == Signal,
///   phi_s(k_s) = N_s * sum_i Phi(k_s, k_i) * u(k_i) * spacing_i^2
/// with N_s fixing the discrete L2 norm to 1. The herald must live on the
/// opposite photon's grid. Throws DataError if the projection vanishes.
ComplexField conditional_mode(const JointAmplitude& joint, const ComplexField& herald,
                              ModeLabel which);

/// Un-normalized conditional projection; building block for conditional_mode
/// and the coupling integrals.
ComplexField conditional_projection(const JointAmplitude& joint, const ComplexField& herald,
                                    ModeLabel which);

double sinc(double x);

}  // namespace spdc
