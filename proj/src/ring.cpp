#include "spdc/ring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spdc/biphoton.hpp"
#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"

namespace spdc {

void RingImage::validate() const {
  if (width < 64 || height < 64) throw DomainError("ring image must be at least 64x64");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DomainError("ring image pixel buffer does not match dimensions");
  }
  if (!(pixel_pitch > 0.0)) throw DomainError("pixel pitch must be positive");
  for (double v : pixels) {
    if (v < 0.0 || !std::isfinite(v)) throw DomainError("ring image pixels must be >= 0 and finite");
  }
}

RingImage synthesize_ring(const ExperimentConfig& cfg, int image_size) {
  cfg.validate();
  if (image_size < 64) throw DomainError("image size must be >= 64 pixels");

  const double k_s = cfg.photon_wavenumber();
  const double z = cfg.detector.far_field_distance;
  const double pitch = cfg.detector.pixel_pitch;
  const int w = image_size;
  const int h = image_size;
  const double cx = 0.5 * (w - 1);
  const double cy = 0.5 * (h - 1);

  // Idler quadrature: k_i = -k_s + q with q confined by the pump spectrum.
  // 5x the pump amplitude e-fold radius keeps all but ~1e-11 of the mass.
  const int m = 41;
  const double q_max = 5.0 * 2.0 / cfg.pump.waist;
  const double dq = 2.0 * q_max / (m - 1);
  const double dq_weight = dq * dq;

  const PumpBeam pump = cfg.pump;
  const Crystal crystal = cfg.crystal;
  const PhaseMatchModel model = cfg.phase_match;
  const double half_length = 0.5 * crystal.thickness;

  RingImage img;
  img.width = w;
  img.height = h;
  img.pixel_pitch = pitch;
  img.center_estimate = {cx, cy};
  img.provenance = ImageProvenance::Synthesized;
  img.pixels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);

  parallel_for(static_cast<std::size_t>(h), [&](std::size_t iy) {
    const double y = (static_cast<double>(iy) - cy) * pitch;
    for (int ix = 0; ix < w; ++ix) {
      const double x = (static_cast<double>(ix) - cx) * pitch;
      const Vec2 ks{x * k_s / z, y * k_s / z};
      double acc = 0.0;
      for (int qy = 0; qy < m; ++qy) {
        const double qyv = -q_max + dq * qy;
        for (int qx = 0; qx < m; ++qx) {
          const Vec2 q{-q_max + dq * qx, qyv};
          const Vec2 ki = q - ks;
          const double dk = phase_mismatch(ks, ki, pump, crystal, model);
          const double s = sinc(dk * half_length);
          const double e0 = pump_angular_spectrum(pump, q);
          acc += e0 * e0 * s * s;
        }
      }
      img.pixels[iy * static_cast<std::size_t>(w) + static_cast<std::size_t>(ix)] =
          acc * dq_weight;
    }
  });
  return img;
}

std::optional<std::string> ring_coverage_warning(const ExperimentConfig& cfg, int image_size) {
  const double k_s = cfg.photon_wavenumber();
  const double ring_px =
      cfg.cone_radius() / k_s * cfg.detector.far_field_distance / cfg.detector.pixel_pitch;
  const double half = 0.5 * (image_size - 1);
  if (ring_px > 0.85 * half) {
    std::ostringstream msg;
    msg << "phase-matched ring radius (" << ring_px
        << " px) approaches the image boundary (" << half << " px half-size)";
    return msg.str();
  }
  return std::nullopt;
}

namespace {

double bilinear(const RingImage& img, double x, double y) {
  // Clamped bilinear sample in pixel coordinates.
  x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
  const int x0 = std::min(static_cast<int>(x), img.width - 2);
  const int y0 = std::min(static_cast<int>(y), img.height - 2);
  const double fx = x - x0;
  const double fy = y - y0;
  return img.at(x0, y0) * (1 - fx) * (1 - fy) + img.at(x0 + 1, y0) * fx * (1 - fy) +
         img.at(x0, y0 + 1) * (1 - fx) * fy + img.at(x0 + 1, y0 + 1) * fx * fy;
}

struct PeakInfo {
  std::size_t index;
  double value;
};

// Outermost local maximum that rises meaningfully above the profile floor.
PeakInfo find_outer_peak(const std::vector<double>& v) {
  const double vmax = *std::max_element(v.begin(), v.end());
  const double vmin = *std::min_element(v.begin(), v.end());
  if (!(vmax > 0.0) || vmax - vmin <= 0.05 * vmax) {
    throw DataError("no ring: profile has no peak above the noise floor");
  }
  const double threshold = vmin + 0.25 * (vmax - vmin);
  for (std::size_t i = v.size() - 2; i >= 1; --i) {
    if (v[i] >= threshold && v[i] >= v[i - 1] && v[i] >= v[i + 1] &&
        (v[i] > v[i - 1] || v[i] > v[i + 1])) {
      return {i, v[i]};
    }
  }
  throw DataError("no ring: profile has no interior peak");
}

}  // namespace

RingProfile radial_profile_from(const RingImage& image, Vec2 center_px, double azimuth,
                                int n_samples) {
  image.validate();
  if (n_samples < 32) throw DomainError("radial profile requires at least 32 samples");

  const double dx = std::cos(azimuth);
  const double dy = std::sin(azimuth);
  // Largest radius that stays inside the raster along this ray.
  double r_max_px = std::numeric_limits<double>::infinity();
  if (dx > 1e-12) r_max_px = std::min(r_max_px, (image.width - 1 - center_px.x) / dx);
  if (dx < -1e-12) r_max_px = std::min(r_max_px, -center_px.x / dx);
  if (dy > 1e-12) r_max_px = std::min(r_max_px, (image.height - 1 - center_px.y) / dy);
  if (dy < -1e-12) r_max_px = std::min(r_max_px, -center_px.y / dy);
  if (!(r_max_px > 1.0)) throw DataError("no ring: center estimate lies on the image boundary");

  RingProfile p;
  p.azimuth = azimuth;
  p.radii.resize(static_cast<std::size_t>(n_samples));
  p.intensity.resize(static_cast<std::size_t>(n_samples));
  const double dr = r_max_px / n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double r = (i + 0.5) * dr;
    p.radii[static_cast<std::size_t>(i)] = r * image.pixel_pitch;
    p.intensity[static_cast<std::size_t>(i)] =
        bilinear(image, center_px.x + r * dx, center_px.y + r * dy);
  }

  const PeakInfo peak = find_outer_peak(p.intensity);
  const double floor = *std::min_element(p.intensity.begin(), p.intensity.end());
  const double level = floor + 0.5 * (peak.value - floor);

  // Half-maximum crossings on both flanks, linearly interpolated.
  double r_out = -1.0;
  for (std::size_t i = peak.index; i + 1 < p.intensity.size(); ++i) {
    if (p.intensity[i] >= level && p.intensity[i + 1] < level) {
      const double t = (p.intensity[i] - level) / (p.intensity[i] - p.intensity[i + 1]);
      r_out = p.radii[i] + t * (p.radii[i + 1] - p.radii[i]);
      break;
    }
  }
  double r_in = -1.0;
  for (std::size_t i = peak.index; i >= 1; --i) {
    if (p.intensity[i] >= level && p.intensity[i - 1] < level) {
      const double t = (p.intensity[i] - level) / (p.intensity[i] - p.intensity[i - 1]);
      r_in = p.radii[i] - t * (p.radii[i] - p.radii[i - 1]);
      break;
    }
  }
  if (r_out < 0.0 || r_in < 0.0) {
    throw DataError("no ring: half-maximum crossings not found around the peak");
  }
  p.fwhm = r_out - r_in;

  // Parabolic refinement of the peak position.
  p.peak_radius = p.radii[peak.index];
  if (peak.index >= 1 && peak.index + 1 < p.intensity.size()) {
    const double y0 = p.intensity[peak.index - 1];
    const double y1 = p.intensity[peak.index];
    const double y2 = p.intensity[peak.index + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (std::abs(denom) > 1e-300) {
      const double shift = 0.5 * (y0 - y2) / denom;
      p.peak_radius += shift * (p.radii[1] - p.radii[0]);
    }
  }
  return p;
}

RingProfile radial_profile(const RingImage& image, double azimuth, int n_samples) {
  return radial_profile_from(image, image.center_estimate, azimuth, n_samples);
}

AsymmetryResult asymmetry_factor(const RingImage& image, double walk_off_azimuth) {
  const int samples = 512;
  const RingProfile p1 = radial_profile(image, walk_off_azimuth, samples);
  const RingProfile p2 = radial_profile(image, walk_off_azimuth + std::numbers::pi, samples);

  AsymmetryResult r;
  if (p1.fwhm >= p2.fwhm) {
    r.a = p1.fwhm;
    r.b = p2.fwhm;
    r.azimuth_of_a = p1.azimuth;
  } else {
    r.a = p2.fwhm;
    r.b = p1.fwhm;
    r.azimuth_of_a = p2.azimuth;
  }
  r.af = 1.0 - r.b / r.a;
  return r;
}

AsymmetryResult asymmetry_autoscan(const RingImage& image, int n_azimuths) {
  if (n_azimuths < 2) throw DomainError("autoscan requires at least 2 azimuths");
  AsymmetryResult best;
  bool have = false;
  for (int i = 0; i < n_azimuths; ++i) {
    const double az = std::numbers::pi * i / n_azimuths;  // diameters: [0, pi) suffices
    try {
      const AsymmetryResult r = asymmetry_factor(image, az);
      if (!have || r.af > best.af) {
        best = r;
        have = true;
      }
    } catch (const DataError&) {
      // ray may miss the ring near the image corners; skip
    }
  }
  if (!have) throw DataError("no ring: autoscan found no measurable diameter");
  return best;
}

Vec2 find_ring_center(const RingImage& image) {
  image.validate();

  // Seed from the intensity-weighted centroid.
  double total = 0.0, sx = 0.0, sy = 0.0;
  for (int iy = 0; iy < image.height; ++iy) {
    for (int ix = 0; ix < image.width; ++ix) {
      const double v = image.at(ix, iy);
      total += v;
      sx += v * ix;
      sy += v * iy;
    }
  }
  if (!(total > 0.0)) throw DataError("no ring: image is empty");
  Vec2 center{sx / total, sy / total};

  // Refine by fitting a circle through the radial-profile peaks.
  const int n_az = 16;
  const int samples = 256;
  for (int iter = 0; iter < 5; ++iter) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n_az; ++i) {
      const double az = 2.0 * std::numbers::pi * i / n_az;
      try {
        const RingProfile p = radial_profile_from(image, center, az, samples);
        const double r_px = p.peak_radius / image.pixel_pitch;
        pts.push_back({center.x + r_px * std::cos(az), center.y + r_px * std::sin(az)});
      } catch (const DataError&) {
        // ray without a measurable peak; skip
      }
    }
    if (pts.size() < 6) throw DataError("no ring: too few radial peaks for center refinement");

    // Kasa algebraic circle fit: minimize sum (|p|^2 - 2 p.c - d)^2.
    double sxx = 0, sxy = 0, syy = 0, sx1 = 0, sy1 = 0, sxz = 0, syz = 0, sz = 0;
    const double n = static_cast<double>(pts.size());
    for (const Vec2& p : pts) {
      const double z = p.x * p.x + p.y * p.y;
      sxx += p.x * p.x;
      sxy += p.x * p.y;
      syy += p.y * p.y;
      sx1 += p.x;
      sy1 += p.y;
      sxz += p.x * z;
      syz += p.y * z;
      sz += z;
    }
    const double a11 = 2.0 * (sxx - sx1 * sx1 / n);
    const double a12 = 2.0 * (sxy - sx1 * sy1 / n);
    const double a22 = 2.0 * (syy - sy1 * sy1 / n);
    const double b1 = sxz - sx1 * sz / n;
    const double b2 = syz - sy1 * sz / n;
    const double det = a11 * a22 - a12 * a12;
    if (std::abs(det) < 1e-12) break;
    const Vec2 next{(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
    const double step = (next - center).norm();
    center = next;
    if (step < 0.05) break;
  }
  return center;
}

}  // namespace spdc
