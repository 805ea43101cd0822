#include "spdc/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

using nlohmann::json;

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw DomainError(path + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw DomainError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<double> get_array(const json& obj, const std::string& path, const char* key,
                              std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array()) throw DomainError(path + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw DomainError(path + "." + key + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw DomainError(path + "." + it.key() + ": unknown key");
  }
}

double omega_from_wavelength(double lambda) {
  return 2.0 * std::numbers::pi * kSpeedOfLight / lambda;
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    pump.validate();
  } catch (const DomainError& e) {
    throw DomainError(std::string("pump: ") + e.what());
  }
  try {
    crystal.validate();
  } catch (const DomainError& e) {
    throw DomainError(std::string("crystal: ") + e.what());
  }
  try {
    phase_match.validate();
  } catch (const DomainError& e) {
    throw DomainError(std::string("phase_match: ") + e.what());
  }
  if (!(signal_waist > 0.0)) throw DomainError("signal_mode.waist_um: must be > 0");
  if (!(idler_waist > 0.0)) throw DomainError("idler_mode.waist_um: must be > 0");
  if (!(frequency_filter.center_frequency > 0.0)) {
    throw DomainError("filters.center_wavelength_nm: must be > 0");
  }
  if (!(frequency_filter.bandwidth > 0.0)) throw DomainError("filters.bandwidth_nm: must be > 0");
  if (spatial_filter_width < 0.0) throw DomainError("filters.spatial_width_um: must be >= 0");
  if (grid.points_per_axis < 8 || grid.points_per_axis % 2 != 0) {
    throw DomainError("grid.points_per_axis: must be even and >= 8");
  }
  if (!(grid.extent_scale > 0.0)) throw DomainError("grid.extent_scale: must be > 0");
  if (detector.image_size_px < 64) throw DomainError("detector.image_size_px: must be >= 64");
  if (!(detector.pixel_pitch > 0.0)) throw DomainError("detector.pixel_pitch_um: must be > 0");
  if (!(detector.far_field_distance > 0.0)) {
    throw DomainError("detector.far_field_distance_mm: must be > 0");
  }
  for (double xi : sweep.xi_values) {
    if (!(xi > 0.0)) throw DomainError("sweep.xi_values: entries must be > 0");
  }
  for (double w0 : sweep.w0_values) {
    if (!(w0 > 0.0)) throw DomainError("sweep.w0_values_um: entries must be > 0");
  }
  for (double xi : sweep.ring_xi_values) {
    if (!(xi > 0.0)) throw DomainError("sweep.ring_xi_values: entries must be > 0");
  }
}

double ExperimentConfig::focusing() const {
  return focusing_parameter(crystal.thickness, pump_wavenumber(), pump.waist);
}

double ExperimentConfig::degenerate_frequency() const {
  return omega_from_wavelength(2.0 * pump.wavelength_vacuum);
}

double ExperimentConfig::cone_radius() const {
  if (phase_match.mode != PhaseMatchMode::ConeExpansion) return 0.0;
  return photon_wavenumber() * phase_match.cone_half_angle;
}

CollectionMode ExperimentConfig::collection_mode(ModeLabel label) const {
  CollectionMode m;
  m.label = label;
  m.waist = effective_collection_waist(label);
  const Vec2 w_hat = unit_from_azimuth(crystal.walk_off_azimuth);
  const double r0 = cone_radius();
  m.center_transverse_k = (label == ModeLabel::Signal ? r0 : -r0) * w_hat;
  return m;
}

double ExperimentConfig::effective_collection_waist(ModeLabel label) const {
  const double w0 = label == ModeLabel::Signal ? signal_waist : idler_waist;
  const double wc = spatial_filter_width;
  return std::sqrt(w0 * w0 + 2.0 * wc * wc);
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.pump.wavelength_vacuum = 405e-9;
  cfg.pump.waist = 114e-6;
  cfg.pump.refractive_index = 1.0;
  cfg.pump.power = 0.3;

  cfg.crystal.thickness = 2e-3;
  cfg.crystal.phase_matching_angle = 29.97 * std::numbers::pi / 180.0;
  cfg.crystal.walk_off_azimuth = 0.0;
  cfg.crystal.type = CrystalType::TypeI;

  cfg.phase_match.mode = PhaseMatchMode::ConeExpansion;
  cfg.phase_match.cone_half_angle = 29.3e-3;
  cfg.phase_match.anisotropy_coefficient = 12.1e-3;

  cfg.signal_waist = 456e-6;
  cfg.idler_waist = 456e-6;

  cfg.frequency_filter.center_frequency = omega_from_wavelength(810e-9);
  cfg.frequency_filter.bandwidth =
      omega_from_wavelength(810e-9) - omega_from_wavelength(820e-9);
  cfg.frequency_filter.spatial_width = 0.0;  // spatial filter disabled by default
  cfg.spatial_filter_width = 0.0;

  cfg.grid.points_per_axis = 64;
  cfg.grid.extent_scale = 4.0;

  cfg.detector.image_size_px = 512;
  cfg.detector.pixel_pitch = 16e-6;
  cfg.detector.far_field_distance = 70e-3;

  cfg.sweep.xi_values = {0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.832};
  cfg.sweep.w0_values = {100e-6, 300e-6, 456e-6, 700e-6};
  // Lens set used for the ring images (f = 750...100 mm mapped to xi_p).
  cfg.sweep.ring_xi_values = {0.0037, 0.0058, 0.023, 0.052, 0.092, 0.21};
  return cfg;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config: top-level document must be an object");
  reject_unknown(doc, "config",
                 {"pump", "crystal", "phase_match", "signal_mode", "idler_mode", "filters",
                  "grid", "detector", "sweep"});

  ExperimentConfig cfg = default_config();

  if (doc.contains("pump")) {
    const json& p = doc.at("pump");
    reject_unknown(p, "pump", {"wavelength_nm", "waist_um", "refractive_index", "power_mw"});
    cfg.pump.wavelength_vacuum =
        get_number(p, "pump", "wavelength_nm", cfg.pump.wavelength_vacuum * 1e9) * 1e-9;
    cfg.pump.waist = get_number(p, "pump", "waist_um", cfg.pump.waist * 1e6) * 1e-6;
    cfg.pump.refractive_index =
        get_number(p, "pump", "refractive_index", cfg.pump.refractive_index);
    cfg.pump.power = get_number(p, "pump", "power_mw", cfg.pump.power * 1e3) * 1e-3;
  }
  if (doc.contains("crystal")) {
    const json& c = doc.at("crystal");
    reject_unknown(c, "crystal",
                   {"thickness_mm", "phase_matching_angle_deg", "walk_off_azimuth_deg", "type"});
    cfg.crystal.thickness =
        get_number(c, "crystal", "thickness_mm", cfg.crystal.thickness * 1e3) * 1e-3;
    cfg.crystal.phase_matching_angle =
        get_number(c, "crystal", "phase_matching_angle_deg",
                   cfg.crystal.phase_matching_angle * 180.0 / std::numbers::pi) *
        std::numbers::pi / 180.0;
    cfg.crystal.walk_off_azimuth =
        get_number(c, "crystal", "walk_off_azimuth_deg",
                   cfg.crystal.walk_off_azimuth * 180.0 / std::numbers::pi) *
        std::numbers::pi / 180.0;
    if (c.contains("type")) {
      const std::string t = c.at("type").get<std::string>();
      if (t != "type-i") throw DomainError("crystal.type: only \"type-i\" is supported");
    }
  }
  if (doc.contains("phase_match")) {
    const json& m = doc.at("phase_match");
    reject_unknown(m, "phase_match", {"model", "cone_half_angle_mrad", "anisotropy"});
    if (m.contains("model")) {
      const std::string mode = m.at("model").get<std::string>();
      if (mode == "cone-expansion") {
        cfg.phase_match.mode = PhaseMatchMode::ConeExpansion;
      } else if (mode == "paraxial-quadratic") {
        cfg.phase_match.mode = PhaseMatchMode::ParaxialQuadratic;
      } else {
        throw DomainError(
            "phase_match.model: expected \"cone-expansion\" or \"paraxial-quadratic\"");
      }
    }
    cfg.phase_match.cone_half_angle =
        get_number(m, "phase_match", "cone_half_angle_mrad",
                   cfg.phase_match.cone_half_angle * 1e3) * 1e-3;
    cfg.phase_match.anisotropy_coefficient =
        get_number(m, "phase_match", "anisotropy", cfg.phase_match.anisotropy_coefficient);
  }
  if (doc.contains("signal_mode")) {
    const json& s = doc.at("signal_mode");
    reject_unknown(s, "signal_mode", {"waist_um"});
    cfg.signal_waist = get_number(s, "signal_mode", "waist_um", cfg.signal_waist * 1e6) * 1e-6;
  }
  if (doc.contains("idler_mode")) {
    const json& s = doc.at("idler_mode");
    reject_unknown(s, "idler_mode", {"waist_um"});
    cfg.idler_waist = get_number(s, "idler_mode", "waist_um", cfg.idler_waist * 1e6) * 1e-6;
  }
  if (doc.contains("filters")) {
    const json& f = doc.at("filters");
    reject_unknown(f, "filters", {"center_wavelength_nm", "bandwidth_nm", "spatial_width_um"});
    const double lambda_c =
        get_number(f, "filters", "center_wavelength_nm",
                   2.0 * std::numbers::pi * kSpeedOfLight / cfg.frequency_filter.center_frequency *
                       1e9) * 1e-9;
    cfg.frequency_filter.center_frequency = omega_from_wavelength(lambda_c);
    if (f.contains("bandwidth_nm")) {
      const double d_lambda = get_number(f, "filters", "bandwidth_nm", 10.0) * 1e-9;
      if (!(d_lambda > 0.0)) throw DomainError("filters.bandwidth_nm: must be > 0");
      cfg.frequency_filter.bandwidth =
          2.0 * std::numbers::pi * kSpeedOfLight * d_lambda / (lambda_c * lambda_c);
    }
    cfg.spatial_filter_width =
        get_number(f, "filters", "spatial_width_um", cfg.spatial_filter_width * 1e6) * 1e-6;
    cfg.frequency_filter.spatial_width = cfg.spatial_filter_width;
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, "grid", {"points_per_axis", "extent_scale"});
    cfg.grid.points_per_axis = get_int(g, "grid", "points_per_axis", cfg.grid.points_per_axis);
    cfg.grid.extent_scale = get_number(g, "grid", "extent_scale", cfg.grid.extent_scale);
  }
  if (doc.contains("detector")) {
    const json& d = doc.at("detector");
    reject_unknown(d, "detector", {"image_size_px", "pixel_pitch_um", "far_field_distance_mm"});
    cfg.detector.image_size_px = get_int(d, "detector", "image_size_px", cfg.detector.image_size_px);
    cfg.detector.pixel_pitch =
        get_number(d, "detector", "pixel_pitch_um", cfg.detector.pixel_pitch * 1e6) * 1e-6;
    cfg.detector.far_field_distance =
        get_number(d, "detector", "far_field_distance_mm", cfg.detector.far_field_distance * 1e3) *
        1e-3;
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    reject_unknown(s, "sweep", {"xi_values", "w0_values_um", "ring_xi_values"});
    cfg.sweep.xi_values = get_array(s, "sweep", "xi_values", cfg.sweep.xi_values);
    std::vector<double> w0_um;
    for (double v : cfg.sweep.w0_values) w0_um.push_back(v * 1e6);
    w0_um = get_array(s, "sweep", "w0_values_um", w0_um);
    cfg.sweep.w0_values.clear();
    for (double v : w0_um) cfg.sweep.w0_values.push_back(v * 1e-6);
    cfg.sweep.ring_xi_values = get_array(s, "sweep", "ring_xi_values", cfg.sweep.ring_xi_values);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["pump"] = {{"wavelength_nm", cfg.pump.wavelength_vacuum * 1e9},
                 {"waist_um", cfg.pump.waist * 1e6},
                 {"refractive_index", cfg.pump.refractive_index},
                 {"power_mw", cfg.pump.power * 1e3}};
  doc["crystal"] = {{"thickness_mm", cfg.crystal.thickness * 1e3},
                    {"phase_matching_angle_deg",
                     cfg.crystal.phase_matching_angle * 180.0 / std::numbers::pi},
                    {"walk_off_azimuth_deg",
                     cfg.crystal.walk_off_azimuth * 180.0 / std::numbers::pi},
                    {"type", "type-i"}};
  doc["phase_match"] = {
      {"model", cfg.phase_match.mode == PhaseMatchMode::ConeExpansion ? "cone-expansion"
                                                                      : "paraxial-quadratic"},
      {"cone_half_angle_mrad", cfg.phase_match.cone_half_angle * 1e3},
      {"anisotropy", cfg.phase_match.anisotropy_coefficient}};
  doc["signal_mode"] = {{"waist_um", cfg.signal_waist * 1e6}};
  doc["idler_mode"] = {{"waist_um", cfg.idler_waist * 1e6}};
  doc["filters"] = {
      {"center_wavelength_nm",
       2.0 * std::numbers::pi * kSpeedOfLight / cfg.frequency_filter.center_frequency * 1e9},
      {"bandwidth_nm",
       cfg.frequency_filter.bandwidth *
           std::pow(2.0 * std::numbers::pi * kSpeedOfLight / cfg.frequency_filter.center_frequency,
                    2) /
           (2.0 * std::numbers::pi * kSpeedOfLight) * 1e9},
      {"spatial_width_um", cfg.spatial_filter_width * 1e6}};
  doc["grid"] = {{"points_per_axis", cfg.grid.points_per_axis},
                 {"extent_scale", cfg.grid.extent_scale}};
  doc["detector"] = {{"image_size_px", cfg.detector.image_size_px},
                     {"pixel_pitch_um", cfg.detector.pixel_pitch * 1e6},
                     {"far_field_distance_mm", cfg.detector.far_field_distance * 1e3}};
  doc["sweep"] = {{"xi_values", cfg.sweep.xi_values},
                  {"w0_values_um", json::array()},
                  {"ring_xi_values", cfg.sweep.ring_xi_values}};
  for (double v : cfg.sweep.w0_values) doc["sweep"]["w0_values_um"].push_back(v * 1e6);
  return doc.dump(2) + "\n";
}

std::string normalized_config_json(const ExperimentConfig& cfg) {
  json doc;
  doc["pump"] = {{"wavelength_m", cfg.pump.wavelength_vacuum},
                 {"waist_m", cfg.pump.waist},
                 {"refractive_index", cfg.pump.refractive_index},
                 {"power_w", cfg.pump.power}};
  doc["crystal"] = {{"thickness_m", cfg.crystal.thickness},
                    {"phase_matching_angle_rad", cfg.crystal.phase_matching_angle},
                    {"walk_off_azimuth_rad", cfg.crystal.walk_off_azimuth},
                    {"type", "type-i"}};
  doc["phase_match"] = {
      {"model", cfg.phase_match.mode == PhaseMatchMode::ConeExpansion ? "cone-expansion"
                                                                      : "paraxial-quadratic"},
      {"cone_half_angle_rad", cfg.phase_match.cone_half_angle},
      {"anisotropy", cfg.phase_match.anisotropy_coefficient}};
  doc["signal_waist_m"] = cfg.signal_waist;
  doc["idler_waist_m"] = cfg.idler_waist;
  doc["frequency_filter"] = {{"center_rad_per_s", cfg.frequency_filter.center_frequency},
                             {"bandwidth_rad_per_s", cfg.frequency_filter.bandwidth}};
  doc["spatial_filter_width_m"] = cfg.spatial_filter_width;
  doc["grid"] = {{"points_per_axis", cfg.grid.points_per_axis},
                 {"extent_scale", cfg.grid.extent_scale}};
  doc["detector"] = {{"image_size_px", cfg.detector.image_size_px},
                     {"pixel_pitch_m", cfg.detector.pixel_pitch},
                     {"far_field_distance_m", cfg.detector.far_field_distance}};
  doc["sweep"] = {{"xi_values", cfg.sweep.xi_values},
                  {"w0_values_m", cfg.sweep.w0_values},
                  {"ring_xi_values", cfg.sweep.ring_xi_values}};
  return doc.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = normalized_config_json(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace spdc
