#include "spdc/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/field.hpp"
#include "spdc/image_io.hpp"
#include "spdc/json_writer.hpp"
#include "spdc/manifest.hpp"
#include "spdc/metrics.hpp"
#include "spdc/parallel.hpp"
#include "spdc/ring.hpp"
#include "spdc/version.hpp"

namespace spdc {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) { return JsonWriter::format_double(v); }

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
};

ExperimentConfig resolve_config(const CommonOptions& opt) {
  ExperimentConfig cfg =
      opt.config_path.empty() ? default_config() : load_config(opt.config_path);
  cfg.validate();
  return cfg;
}

void resolve_threads(const CommonOptions& opt) {
  int n = opt.threads;
  if (n <= 0) {
    if (const char* env = std::getenv("SPDC_THREADS")) n = std::atoi(env);
  }
  set_max_threads(n);
}

fs::path ensure_out_dir(const CommonOptions& opt) {
  fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory: " + dir.string());
  return dir;
}

struct StopWatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void finish_manifest(const ExperimentConfig& cfg, const std::string& subcommand,
                     const std::vector<std::string>& outputs, const fs::path& dir,
                     const StopWatch& watch) {
  RunManifest m;
  m.config_hash = config_hash(cfg);
  m.tool_version = kVersion;
  m.subcommand = subcommand;
  m.output_paths = outputs;
  m.wall_ms = watch.elapsed_ms();
  write_manifest(m, (dir / "manifest.json").string());
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  if (sxx > 0.0 && syy > 0.0) {
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = (sxy * sxy) / (sxx * syy);
  }
  return f;
}

/// Intensity raster |field|^2 mapped to the far-field image plane.
RingImage field_intensity_image(const ComplexField& field, const ExperimentConfig& cfg) {
  const auto& g = field.grid();
  const int n = g.n();
  RingImage img;
  img.width = n;
  img.height = n;
  img.pixel_pitch = g.spacing() / cfg.photon_wavenumber() * cfg.detector.far_field_distance;
  img.center_estimate = {0.5 * (n - 1), 0.5 * (n - 1)};
  img.provenance = ImageProvenance::Synthesized;
  img.pixels.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      img.pixels[static_cast<std::size_t>(iy) * n + static_cast<std::size_t>(ix)] =
          std::norm(field.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy)));
    }
  }
  return img;
}

int cmd_sweep_efficiency(const CommonOptions& opt, std::vector<double> xi_values,
                         std::vector<double> w0_um_values) {
  StopWatch watch;
  const ExperimentConfig cfg = resolve_config(opt);
  if (xi_values.empty()) xi_values = cfg.sweep.xi_values;
  std::vector<double> w0_values;
  if (w0_um_values.empty()) {
    w0_values = cfg.sweep.w0_values;
  } else {
    for (double v : w0_um_values) w0_values.push_back(v * 1e-6);
  }
  if (xi_values.empty()) throw DomainError("sweep requires at least one xi value");
  if (w0_values.empty()) throw DomainError("sweep requires at least one w0 value");

  const fs::path dir = ensure_out_dir(opt);
  const std::vector<SweepRow> rows = efficiency_sweep(cfg, xi_values, w0_values);

  std::string csv = "xi_p,w0_m,chi_numeric,chi_closed_form,rel_diff\n";
  for (const SweepRow& r : rows) {
    csv += fmt(r.xi_p) + "," + fmt(r.w0) + "," + fmt(r.chi_numeric) + "," +
           fmt(r.chi_closed_form) + "," + fmt(r.rel_diff) + "\n";
  }
  const fs::path csv_path = dir / "sweep_efficiency.csv";
  write_text_file(csv_path.string(), csv);

  // Monotonicity verdict: chi non-increasing in xi for each w0 column.
  bool monotone = true;
  double max_rel_diff = 0.0;
  for (std::size_t wi = 0; wi < w0_values.size(); ++wi) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t xi = 0; xi < xi_values.size(); ++xi) {
      const SweepRow& r = rows[xi * w0_values.size() + wi];
      if (r.chi_numeric > prev + 1e-6) monotone = false;
      prev = r.chi_numeric;
      max_rel_diff = std::max(max_rel_diff, std::abs(r.rel_diff));
    }
  }

  JsonWriter summary;
  summary.put("subcommand", "sweep-efficiency")
      .put("config_hash", config_hash(cfg))
      .put("rows", static_cast<long long>(rows.size()))
      .put("xi_values", xi_values)
      .put("w0_values_m", w0_values)
      .put("chi_monotone_non_increasing_in_xi", monotone)
      .put("max_abs_rel_diff_vs_closed_form", max_rel_diff)
      .put("csv", csv_path.filename().string());
  const fs::path json_path = dir / "sweep_efficiency.json";
  write_text_file(json_path.string(), summary.str());

  finish_manifest(cfg, "sweep-efficiency", {csv_path.string(), json_path.string()}, dir, watch);
  std::cout << csv_path.string() << "\n" << json_path.string() << "\n";
  return 0;
}

int cmd_conditional_mode(const CommonOptions& opt, double xi_p) {
  StopWatch watch;
  const ExperimentConfig cfg = resolve_config(opt);
  const double xi = xi_p > 0.0 ? xi_p : cfg.focusing();
  const fs::path dir = ensure_out_dir(opt);

  const ComplexField mode = conditional_mode_for(cfg, xi, ModeLabel::Signal);
  const double norm = mode.norm_l2();
  const double ell = ellipticity(mode);
  const FieldMoments mom = field_moments(mode);

  RingImage img = field_intensity_image(mode, cfg);
  const fs::path pgm_path = dir / "conditional_mode.pgm";
  write_pgm16(img, pgm_path.string());

  JsonWriter out;
  out.put("subcommand", "conditional-mode")
      .put("config_hash", config_hash(cfg))
      .put("xi_p", xi)
      .put("norm", norm)
      .put("ellipticity", ell)
      .put("sigma_major_rad_per_m", mom.sigma_major)
      .put("sigma_minor_rad_per_m", mom.sigma_minor)
      .put("major_axis_azimuth_rad", mom.major_axis_azimuth)
      .put("image", pgm_path.filename().string());
  const fs::path json_path = dir / "conditional_mode.json";
  write_text_file(json_path.string(), out.str());

  finish_manifest(cfg, "conditional-mode", {pgm_path.string(), json_path.string()}, dir, watch);
  std::cout << json_path.string() << "\n";
  return 0;
}

int cmd_ring(const CommonOptions& opt, std::vector<double> xi_values, int image_size) {
  StopWatch watch;
  const ExperimentConfig cfg = resolve_config(opt);
  if (xi_values.empty()) xi_values = cfg.sweep.ring_xi_values;
  if (xi_values.empty()) throw DomainError("ring sweep requires at least one xi value");
  const int size = image_size > 0 ? image_size : cfg.detector.image_size_px;

  const fs::path dir = ensure_out_dir(opt);
  std::vector<std::string> outputs;
  std::string csv = "xi_p,af,a_m,b_m\n";
  std::vector<double> xs, ys;

  for (std::size_t i = 0; i < xi_values.size(); ++i) {
    const double xi = xi_values[i];
    ExperimentConfig c = cfg;
    c.pump.waist = waist_for_focusing(c.crystal.thickness, c.pump_wavenumber(), xi);
    if (auto warn = ring_coverage_warning(c, size)) {
      std::cerr << "warning: xi_p=" << fmt(xi) << ": " << *warn << "\n";
    }
    try {
      const RingImage img = synthesize_ring(c, size);
      const AsymmetryResult af = asymmetry_factor(img, c.crystal.walk_off_azimuth);

      char name[64];
      std::snprintf(name, sizeof(name), "ring_%02zu_xi%s.pgm", i, fmt(xi).c_str());
      const fs::path pgm_path = dir / name;
      write_pgm16(img, pgm_path.string());
      outputs.push_back(pgm_path.string());

      csv += fmt(xi) + "," + fmt(af.af) + "," + fmt(af.a) + "," + fmt(af.b) + "\n";
      xs.push_back(xi);
      ys.push_back(af.af);
    } catch (const DataError& e) {
      throw DataError("ring row (xi_p=" + fmt(xi) + "): " + e.what());
    }
  }

  const fs::path csv_path = dir / "ring_asymmetry.csv";
  write_text_file(csv_path.string(), csv);
  outputs.push_back(csv_path.string());

  const LinearFit fit = linear_fit(xs, ys);
  JsonWriter out;
  out.put("subcommand", "ring")
      .put("config_hash", config_hash(cfg))
      .put("xi_values", xs)
      .put("asymmetry_factors", ys)
      .put("fit_slope", fit.slope)
      .put("fit_intercept", fit.intercept)
      .put("fit_r_squared", fit.r_squared)
      .put("csv", csv_path.filename().string());
  const fs::path json_path = dir / "ring_asymmetry.json";
  write_text_file(json_path.string(), out.str());
  outputs.push_back(json_path.string());

  finish_manifest(cfg, "ring", outputs, dir, watch);
  std::cout << json_path.string() << "\n";
  return 0;
}

int cmd_analyze_image(const CommonOptions& opt, const std::string& path, double pitch_um,
                      double azimuth_deg, bool have_azimuth, const std::string& format_name) {
  StopWatch watch;
  const ExperimentConfig cfg = resolve_config(opt);

  ImageFormat format;
  if (format_name == "pgm16") {
    format = ImageFormat::PGM16;
  } else if (format_name == "csv") {
    format = ImageFormat::CSV;
  } else if (format_name.empty()) {
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".pgm") {
      format = ImageFormat::PGM16;
    } else if (ext == ".csv") {
      format = ImageFormat::CSV;
    } else {
      throw DomainError("cannot infer image format from extension '" + ext +
                        "'; pass --format pgm16|csv");
    }
  } else {
    throw DomainError("unknown format '" + format_name + "'; expected pgm16 or csv");
  }

  RingImage img = ingest_image(path, pitch_um * 1e-6, format);
  img.center_estimate = find_ring_center(img);

  AsymmetryResult res;
  if (have_azimuth) {
    res = asymmetry_factor(img, azimuth_deg * std::numbers::pi / 180.0);
  } else {
    res = asymmetry_autoscan(img);
  }

  JsonWriter out;
  out.put("subcommand", "analyze-image")
      .put("input", path)
      .put("a_m", res.a)
      .put("b_m", res.b)
      .put("af", res.af)
      .put("azimuth_of_a_rad", res.azimuth_of_a)
      .put("center_x_px", img.center_estimate.x)
      .put("center_y_px", img.center_estimate.y)
      .put("pixel_pitch_m", img.pixel_pitch);
  const std::string text = out.str();
  std::cout << text;

  const fs::path dir = ensure_out_dir(opt);
  const fs::path json_path = dir / "analysis.json";
  write_text_file(json_path.string(), text);
  finish_manifest(cfg, "analyze-image", {json_path.string()}, dir, watch);
  return 0;
}

int cmd_match_metrics(const CommonOptions& opt, double xi_p) {
  StopWatch watch;
  const ExperimentConfig cfg = resolve_config(opt);
  const double xi = xi_p > 0.0 ? xi_p : cfg.focusing();
  const fs::path dir = ensure_out_dir(opt);

  const CouplingReport r = evaluate_coupling(cfg, xi);
  const double transmission = frequency_filter(cfg.frequency_filter, cfg.degenerate_frequency());

  JsonWriter out;
  out.put("subcommand", "match-metrics")
      .put("config_hash", config_hash(cfg))
      .put("xi_p", xi)
      .put("chi_si", r.chi_si)
      .put("c_si", r.c_si)
      .put("c_s", r.c_s)
      .put("c_i", r.c_i)
      .put("m_si", r.m_si)
      .put("purity_s", r.purity_s)
      .put("purity_i", r.purity_i)
      .put("cs_satisfied", r.cs_satisfied)
      .put("cs_gap", r.cs_gap)
      .put("frequency_filter_transmission", transmission);
  const std::string text = out.str();
  std::cout << text;

  const fs::path json_path = dir / "match_metrics.json";
  write_text_file(json_path.string(), text);
  finish_manifest(cfg, "match-metrics", {json_path.string()}, dir, watch);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Biphoton mode structure and fiber-coupling model for non-collinear "
               "Type-I down-conversion"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions opt;
  app.add_option("--config", opt.config_path, "JSON config file (defaults used when omitted)");
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", opt.threads, "worker threads (SPDC_THREADS env as fallback)");

  std::vector<double> xi_list;
  std::vector<double> w0_um_list;
  auto* sweep = app.add_subcommand("sweep-efficiency",
                                   "coupling efficiency over xi_p and collection waists");
  sweep->add_option("--xi", xi_list, "focusing parameter values");
  sweep->add_option("--w0-um", w0_um_list, "collection waists in micrometers");

  double xi_single = 0.0;
  auto* cond = app.add_subcommand("conditional-mode",
                                  "conditional signal mode image and ellipticity");
  cond->add_option("--xi", xi_single, "focusing parameter (config pump waist when omitted)");

  std::vector<double> ring_xi_list;
  int ring_size = 0;
  auto* ring = app.add_subcommand("ring", "far-field ring images and asymmetry factors");
  ring->add_option("--xi", ring_xi_list, "focusing parameter values");
  ring->add_option("--image-size", ring_size, "image size in pixels (config default when omitted)");

  std::string image_path;
  double pitch_um = 16.0;
  double azimuth_deg = 0.0;
  std::string format_name;
  auto* analyze = app.add_subcommand("analyze-image", "asymmetry factor of a ring image file");
  analyze->add_option("path", image_path, "PGM16 or CSV ring image")->required();
  analyze->add_option("--pitch-um", pitch_um, "pixel pitch for PGM input")->capture_default_str();
  auto* az_opt = analyze->add_option("--azimuth-deg", azimuth_deg,
                                     "measurement azimuth (auto-scan when omitted)");
  analyze->add_option("--format", format_name, "pgm16 or csv (inferred from extension)");

  double xi_metrics = 0.0;
  auto* metrics = app.add_subcommand("match-metrics",
                                     "mode matching, purity and coupling report");
  metrics->add_option("--xi", xi_metrics, "focusing parameter (config pump waist when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    resolve_threads(opt);
    if (sweep->parsed()) return cmd_sweep_efficiency(opt, xi_list, w0_um_list);
    if (cond->parsed()) return cmd_conditional_mode(opt, xi_single);
    if (ring->parsed()) return cmd_ring(opt, ring_xi_list, ring_size);
    if (analyze->parsed()) {
      return cmd_analyze_image(opt, image_path, pitch_um, azimuth_deg, az_opt->count() > 0,
                               format_name);
    }
    if (metrics->parsed()) return cmd_match_metrics(opt, xi_metrics);
    std::cerr << "usage error: no subcommand given\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace spdc
