#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdc/optics.hpp"

namespace spdc {

struct GridSettings {
  int points_per_axis = 64;
  double extent_scale = 4.0;  // grid half-extent in units of the dominant e-fold radius
};

struct DetectorSettings {
  int image_size_px = 512;
  double pixel_pitch = 16e-6;        // m per pixel
  double far_field_distance = 70e-3; // m; maps k_perp -> position as z * k_perp / k_s
};

struct SweepSettings {
  std::vector<double> xi_values;       // efficiency sweeps
  std::vector<double> w0_values;       // m
  std::vector<double> ring_xi_values;  // ring-asymmetry sweeps
};

/// Full description of one simulated setup. Collection-mode centers are not
/// stored; they resolve to the phase-matched cone intersections (or the axis
/// in paraxial mode) via collection_mode().
struct ExperimentConfig {
  PumpBeam pump;
  Crystal crystal;
  PhaseMatchModel phase_match;
  double signal_waist = 456e-6;        // m
  double idler_waist = 456e-6;         // m
  FilterSpec frequency_filter{};
  double spatial_filter_width = 0.0;   // m; 0 disables the spatial filter
  GridSettings grid;
  DetectorSettings detector;
  SweepSettings sweep;

  void validate() const;

  double pump_wavenumber() const { return pump.wavenumber(); }
  /// Degenerate photon wavenumber k_s = k_i = k_p / 2.
  double photon_wavenumber() const { return 0.5 * pump.wavenumber(); }
  /// Focusing parameter implied by the configured pump waist.
  double focusing() const;
  /// Degenerate photon angular frequency (vacuum dispersion).
  double degenerate_frequency() const;

  /// Radius of the phase-matched cone in transverse momentum (0 when paraxial).
  double cone_radius() const;
  /// Collection mode with its center resolved on the cone: the signal sits at
  /// +r0 along the walk-off azimuth, the idler diametrically opposite.
  CollectionMode collection_mode(ModeLabel label) const;
  /// Collection waist with the spatial filter folded in:
  /// w_eff^2 = w_0^2 + 2 w_c^2 (both factors are Gaussian in k).
  double effective_collection_waist(ModeLabel label) const;
};

ExperimentConfig default_config();

/// Parses a JSON config document (unit-suffixed keys, see README). Missing
/// keys fall back to defaults; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// User-facing JSON document with unit-suffixed keys, parseable by parse_config.
std::string config_to_json(const ExperimentConfig& cfg);

/// Canonical SI-unit dump used for hashing; key order is deterministic.
std::string normalized_config_json(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash of normalized_config_json, as fixed-width hex.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace spdc
