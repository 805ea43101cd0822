#pragma once

#include "spdc/vec2.hpp"

namespace spdc {

enum class CrystalType { TypeI };
enum class ModeLabel { Signal, Idler };
enum class CrystalRegime { Short, Long };

/// Which longitudinal phase-mismatch expansion to use.
///   ParaxialQuadratic — collinear second-order expansion of the z wave-vector
///                       components; the zero set is the axis itself.
///   ConeExpansion     — expansion about a non-collinear emission cone of
///                       half-angle theta_0, with a linear walk-off term that
///                       couples the summed transverse momentum to the
///                       walk-off azimuth.
enum class PhaseMatchMode { ParaxialQuadratic, ConeExpansion };

struct PumpBeam {
  double wavelength_vacuum = 405e-9;  // m
  double waist = 114e-6;              // w_p at the focus inside the crystal, m
  double refractive_index = 1.0;      // n_p; enters k_p = 2*pi*n_p/lambda
  double power = 0.3;                 // W, informational only

  void validate() const;
  double wavenumber() const;  // k_p
};

struct Crystal {
  double thickness = 2e-3;              // L, m
  double phase_matching_angle = 0.5231; // optic axis to pump normal, rad
  double walk_off_azimuth = 0.0;        // phi_w, rad
  CrystalType type = CrystalType::TypeI;

  void validate() const;
};

struct CollectionMode {
  double waist = 456e-6;         // w_0 imaged onto the crystal plane, m
  Vec2 center_transverse_k{};    // rad/m
  ModeLabel label = ModeLabel::Signal;

  void validate() const;
};

struct FilterSpec {
  double center_frequency;  // omega_c0, rad/s
  double bandwidth;         // B_c, rad/s
  double spatial_width;     // w_c, m

  void validate() const;
};

struct PhaseMatchModel {
  PhaseMatchMode mode = PhaseMatchMode::ConeExpansion;
  double cone_half_angle = 0.0;           // theta_0, rad; read in ConeExpansion mode
  double anisotropy_coefficient = 0.0;    // rho; slope of delta-k vs pump transverse k along phi_w

  void validate() const;
};

/// k = 2*pi*n/lambda for vacuum wavelength lambda.
double wavenumber(double wavelength_vacuum, double refractive_index);

/// Pump focusing parameter xi_p = L/(k_p*w_p^2).
double focusing_parameter(double thickness, double pump_wavenumber, double pump_waist);

/// Pump waist that realizes a given focusing parameter: w_p = sqrt(L/(k_p*xi_p)).
double waist_for_focusing(double thickness, double pump_wavenumber, double xi_p);

/// Closed-form thin-crystal coupling efficiency
///   chi = 4*L*(k_p*xi_p*w_0^2 + L) / (k_p*xi_p*w_0^2 + 2*L)^2,
/// valid in the regime where the longitudinal mismatch is negligible over the
/// collected bandwidth of transverse momenta. Result lies in (0, 1].
double thin_crystal_efficiency(double thickness, double pump_wavenumber, double xi_p,
                               double collection_waist);

/// Longitudinal phase mismatch for degenerate down-conversion. The signal and
/// idler wavenumbers are taken as k_p/2 (same effective index as the pump).
///
/// ConeExpansion:
///   dk = (k_s+k_i)*theta_0^2/2 - |ks|^2/(2 k_s) - |ki|^2/(2 k_i)
///        + |ks+ki|^2/(2 k_p) + rho*((ks+ki) . w_hat)
/// which vanishes when both photons sit on the cone with zero pump transverse
/// momentum, and reduces to the paraxial quadratic form for theta_0 = rho = 0.
double phase_mismatch(Vec2 k_s_perp, Vec2 k_i_perp, const PumpBeam& pump,
                      const Crystal& crystal, const PhaseMatchModel& model);

/// Short iff L < L_eff; the boundary L == L_eff maps to Long.
CrystalRegime classify_regime(double thickness, double effective_length);

}  // namespace spdc
