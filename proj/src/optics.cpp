#include "spdc/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spdc/errors.hpp"

namespace spdc {

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}
}  // namespace

void PumpBeam::validate() const {
  require_positive(wavelength_vacuum, "pump wavelength");
  require_positive(waist, "pump waist");
  if (!(refractive_index >= 1.0)) throw DomainError("pump refractive index must be >= 1");
}

double PumpBeam::wavenumber() const {
  return spdc::wavenumber(wavelength_vacuum, refractive_index);
}

void Crystal::validate() const {
  require_positive(thickness, "crystal thickness");
  if (!(phase_matching_angle > 0.0 && phase_matching_angle < std::numbers::pi / 2)) {
    throw DomainError("phase matching angle must lie in (0, pi/2)");
  }
}

void CollectionMode::validate() const { require_positive(waist, "collection mode waist"); }

void FilterSpec::validate() const {
  require_positive(bandwidth, "filter bandwidth");
  require_positive(spatial_width, "filter spatial width");
}

void PhaseMatchModel::validate() const {
  if (cone_half_angle < 0.0) throw DomainError("cone half-angle must be >= 0");
}

double wavenumber(double wavelength_vacuum, double refractive_index) {
  require_positive(wavelength_vacuum, "wavelength");
  if (!(refractive_index >= 1.0)) throw DomainError("refractive index must be >= 1");
  return 2.0 * std::numbers::pi * refractive_index / wavelength_vacuum;
}

double focusing_parameter(double thickness, double pump_wavenumber, double pump_waist) {
  require_positive(thickness, "thickness");
  require_positive(pump_wavenumber, "pump wavenumber");
  require_positive(pump_waist, "pump waist");
  return thickness / (pump_wavenumber * pump_waist * pump_waist);
}

double waist_for_focusing(double thickness, double pump_wavenumber, double xi_p) {
  require_positive(thickness, "thickness");
  require_positive(pump_wavenumber, "pump wavenumber");
  require_positive(xi_p, "focusing parameter");
  return std::sqrt(thickness / (pump_wavenumber * xi_p));
}

double thin_crystal_efficiency(double thickness, double pump_wavenumber, double xi_p,
                               double collection_waist) {
  require_positive(thickness, "thickness");
  require_positive(pump_wavenumber, "pump wavenumber");
  require_positive(collection_waist, "collection waist");
  if (xi_p < 0.0 || !std::isfinite(xi_p)) throw DomainError("focusing parameter must be >= 0");
  const double g = pump_wavenumber * xi_p * collection_waist * collection_waist;
  const double denom = g + 2.0 * thickness;
  return 4.0 * thickness * (g + thickness) / (denom * denom);
}

double phase_mismatch(Vec2 k_s_perp, Vec2 k_i_perp, const PumpBeam& pump,
                      const Crystal& crystal, const PhaseMatchModel& model) {
  const double k_p = pump.wavenumber();
  const double k_s = 0.5 * k_p;  // degenerate photons, same effective index as pump
  const double k_i = k_s;
  const Vec2 q = k_s_perp + k_i_perp;

  double dk = -k_s_perp.norm2() / (2.0 * k_s) - k_i_perp.norm2() / (2.0 * k_i) +
              q.norm2() / (2.0 * k_p);
  if (model.mode == PhaseMatchMode::ConeExpansion) {
    const double theta0 = model.cone_half_angle;
    dk += 0.5 * (k_s + k_i) * theta0 * theta0;
    dk += model.anisotropy_coefficient * q.dot(unit_from_azimuth(crystal.walk_off_azimuth));
  }
  return dk;
}

CrystalRegime classify_regime(double thickness, double effective_length) {
  require_positive(thickness, "thickness");
  require_positive(effective_length, "effective length");
  return thickness < effective_length ? CrystalRegime::Short : CrystalRegime::Long;
}

}  // namespace spdc
