#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spdc/biphoton.hpp"
#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/field.hpp"
#include "spdc/image_io.hpp"
#include "spdc/metrics.hpp"
#include "spdc/optics.hpp"
#include "spdc/ring.hpp"
#include "spdc/version.hpp"

namespace py = pybind11;
using namespace spdc;

namespace {

py::array_t<double> field_intensity(const ComplexField& f) {
  const int n = f.grid().n();
  py::array_t<double> out({n, n});
  auto buf = out.mutable_unchecked<2>();
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      buf(iy, ix) = std::norm(f.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy)));
    }
  }
  return out;
}

py::array_t<std::complex<double>> field_values(const ComplexField& f) {
  const int n = f.grid().n();
  py::array_t<std::complex<double>> out({n, n});
  auto buf = out.mutable_unchecked<2>();
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      buf(iy, ix) = f.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
    }
  }
  return out;
}

py::array_t<double> image_pixels(const RingImage& img) {
  py::array_t<double> out({img.height, img.width});
  auto buf = out.mutable_unchecked<2>();
  for (int iy = 0; iy < img.height; ++iy) {
    for (int ix = 0; ix < img.width; ++ix) buf(iy, ix) = img.at(ix, iy);
  }
  return out;
}

RingImage image_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                           double pixel_pitch) {
  if (arr.ndim() != 2) throw DomainError("image array must be 2-D");
  RingImage img;
  img.height = static_cast<int>(arr.shape(0));
  img.width = static_cast<int>(arr.shape(1));
  img.pixel_pitch = pixel_pitch;
  img.center_estimate = {0.5 * (img.width - 1), 0.5 * (img.height - 1)};
  img.provenance = ImageProvenance::Ingested;
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
  auto buf = arr.unchecked<2>();
  for (int iy = 0; iy < img.height; ++iy) {
    for (int ix = 0; ix < img.width; ++ix) {
      img.pixels[static_cast<std::size_t>(iy) * img.width + static_cast<std::size_t>(ix)] =
          buf(iy, ix);
    }
  }
  img.validate();
  return img;
}

py::dict report_to_dict(const CouplingReport& r) {
  py::dict d;
  d["chi_si"] = r.chi_si;
  d["c_si"] = r.c_si;
  d["c_s"] = r.c_s;
  d["c_i"] = r.c_i;
  d["m_si"] = r.m_si;
  d["purity_s"] = r.purity_s;
  d["purity_i"] = r.purity_i;
  d["cs_satisfied"] = r.cs_satisfied;
  d["cs_gap"] = r.cs_gap;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Biphoton mode structure and fiber-coupling model for Type-I SPDC";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

  m.def("wavenumber", &wavenumber, py::arg("wavelength_vacuum"), py::arg("refractive_index") = 1.0);
  m.def("focusing_parameter", &focusing_parameter, py::arg("thickness"),
        py::arg("pump_wavenumber"), py::arg("pump_waist"));
  m.def("waist_for_focusing", &waist_for_focusing, py::arg("thickness"),
        py::arg("pump_wavenumber"), py::arg("xi_p"));
  m.def("thin_crystal_efficiency", &thin_crystal_efficiency, py::arg("thickness"),
        py::arg("pump_wavenumber"), py::arg("xi_p"), py::arg("collection_waist"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("defaults", &default_config)
      .def_static("from_json", &parse_config, py::arg("json_text"))
      .def("to_json", &config_to_json)
      .def("hash", &config_hash)
      .def_property_readonly("xi_p", &ExperimentConfig::focusing)
      .def_property_readonly("pump_wavenumber", &ExperimentConfig::pump_wavenumber);

  m.def(
      "conditional_mode",
      [](const ExperimentConfig& cfg, double xi_p, bool signal_arm) {
        const ComplexField f =
            conditional_mode_for(cfg, xi_p, signal_arm ? ModeLabel::Signal : ModeLabel::Idler);
        py::dict d;
        d["values"] = field_values(f);
        d["intensity"] = field_intensity(f);
        d["spacing"] = f.grid().spacing();
        d["norm"] = f.norm_l2();
        d["ellipticity"] = ellipticity(f);
        return d;
      },
      py::arg("config"), py::arg("xi_p"), py::arg("signal_arm") = true);

  m.def(
      "coupling_report",
      [](const ExperimentConfig& cfg, double xi_p, double w0_override) {
        return report_to_dict(evaluate_coupling(cfg, xi_p, w0_override));
      },
      py::arg("config"), py::arg("xi_p"), py::arg("w0_override") = 0.0);

  m.def(
      "efficiency_sweep",
      [](const ExperimentConfig& cfg, const std::vector<double>& xi,
         const std::vector<double>& w0) {
        const auto rows = efficiency_sweep(cfg, xi, w0);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["xi_p"] = r.xi_p;
          d["w0"] = r.w0;
          d["chi_numeric"] = r.chi_numeric;
          d["chi_closed_form"] = r.chi_closed_form;
          d["rel_diff"] = r.rel_diff;
          out.append(d);
        }
        return out;
      },
      py::arg("config"), py::arg("xi_values"), py::arg("w0_values"));

  m.def(
      "synthesize_ring",
      [](const ExperimentConfig& cfg, int image_size) {
        const RingImage img =
            synthesize_ring(cfg, image_size > 0 ? image_size : cfg.detector.image_size_px);
        py::dict d;
        d["pixels"] = image_pixels(img);
        d["pixel_pitch"] = img.pixel_pitch;
        return d;
      },
      py::arg("config"), py::arg("image_size") = 0);

  m.def(
      "asymmetry_factor",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> pixels,
         double pixel_pitch, double walk_off_azimuth) {
        RingImage img = image_from_array(pixels, pixel_pitch);
        img.center_estimate = find_ring_center(img);
        const AsymmetryResult r = asymmetry_factor(img, walk_off_azimuth);
        py::dict d;
        d["a"] = r.a;
        d["b"] = r.b;
        d["af"] = r.af;
        d["azimuth_of_a"] = r.azimuth_of_a;
        return d;
      },
      py::arg("pixels"), py::arg("pixel_pitch"), py::arg("walk_off_azimuth") = 0.0);
}
