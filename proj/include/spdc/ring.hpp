#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spdc/config.hpp"
#include "spdc/vec2.hpp"

namespace spdc {

enum class ImageProvenance { Synthesized, Ingested };

/// Real-valued far-field intensity raster. Pixel (ix, iy) sits at physical
/// position ((ix - (W-1)/2) * pitch, (iy - (H-1)/2) * pitch) relative to the
/// optical axis; iy grows with +y.
struct RingImage {
  std::vector<double> pixels;  // row-major, index = iy*width + ix, all >= 0
  int width = 0;
  int height = 0;
  double pixel_pitch = 16e-6;  // m per pixel
  Vec2 center_estimate{};      // pixels
  ImageProvenance provenance = ImageProvenance::Synthesized;

  double at(int ix, int iy) const {
    return pixels[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(ix)];
  }
  void validate() const;
};

/// Radial intensity cut at a fixed azimuth. Radii are physical lengths in the
/// image plane, strictly increasing.
struct RingProfile {
  double azimuth = 0.0;
  std::vector<double> radii;
  std::vector<double> intensity;
  double fwhm = 0.0;
  double peak_radius = 0.0;
};

/// Ring widths at two diametrically opposite azimuths and the asymmetry
/// factor af = 1 - b/a with a >= b.
struct AsymmetryResult {
  double a = 0.0;
  double b = 0.0;
  double af = 0.0;
  double azimuth_of_a = 0.0;
};

/// Far-field singles intensity I(k_s) = integral |Phi(k_s, k_i)|^2 dk_i,
/// mapped to the image plane via x = z_ff * k_perp / k_s. The idler integral
/// runs over a disk around the conjugate direction -k_s sized by the pump
/// angular spectrum (which confines k_s + k_i), at negligible mass error.
RingImage synthesize_ring(const ExperimentConfig& cfg, int image_size);

/// Warns when the phase-matched ring does not fit into the requested image.
std::optional<std::string> ring_coverage_warning(const ExperimentConfig& cfg, int image_size);

/// Bilinearly interpolated radial cut from the image's center estimate.
/// FWHM is measured about the outermost prominent peak above the profile
/// floor; throws DataError when no such peak exists.
RingProfile radial_profile(const RingImage& image, double azimuth, int n_samples);

/// Same cut taken from an explicit center (pixels).
RingProfile radial_profile_from(const RingImage& image, Vec2 center_px, double azimuth,
                                int n_samples);

/// Ring widths at walk_off_azimuth and its antipode; a is the larger FWHM.
AsymmetryResult asymmetry_factor(const RingImage& image, double walk_off_azimuth);

/// Scans diameters and returns the one maximizing |1 - b/a|.
AsymmetryResult asymmetry_autoscan(const RingImage& image, int n_azimuths = 32);

/// Intensity-weighted centroid refined by fitting a circle through the
/// radial-profile peaks at a fan of azimuths. Returns pixels.
Vec2 find_ring_center(const RingImage& image);

}  // namespace spdc
