#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spdc/errors.hpp"
#include "spdc/optics.hpp"

using namespace spdc;

namespace {

PumpBeam pump_405(double waist = 100e-6, double n = 1.0) {
  PumpBeam p;
  p.wavelength_vacuum = 405e-9;
  p.waist = waist;
  p.refractive_index = n;
  return p;
}

Crystal crystal_2mm(double walk_off_azimuth = 0.0) {
  Crystal c;
  c.thickness = 2e-3;
  c.phase_matching_angle = 29.97 * std::numbers::pi / 180.0;
  c.walk_off_azimuth = walk_off_azimuth;
  return c;
}

// Exact z-component bookkeeping for full 3D wave vectors, degenerate photons.
double exact_mismatch(Vec2 ks, Vec2 ki, double k_p) {
  const double k_s = 0.5 * k_p;
  const double q2 = (ks + ki).norm2();
  return (std::sqrt(k_s * k_s - ks.norm2()) - k_s) + (std::sqrt(k_s * k_s - ki.norm2()) - k_s) -
         (std::sqrt(k_p * k_p - q2) - k_p);
}

}  // namespace

TEST_CASE("wavenumber") {
  const double k405 = wavenumber(405e-9, 1.0);
  CHECK(k405 == doctest::Approx(1.5514e7).epsilon(1e-4));
  CHECK(wavenumber(810e-9, 1.0) == doctest::Approx(0.5 * k405).epsilon(1e-12));
  CHECK(wavenumber(405e-9, 1.66) == doctest::Approx(1.66 * k405).epsilon(1e-12));
  CHECK_THROWS_AS(wavenumber(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(wavenumber(-405e-9, 1.0), DomainError);
  CHECK_THROWS_AS(wavenumber(405e-9, 0.5), DomainError);
}

TEST_CASE("focusing parameter") {
  const double k405 = 1.5514e7;
  CHECK(focusing_parameter(2e-3, k405, 100e-6) == doctest::Approx(0.01289).epsilon(1e-3));

  // collimated limit
  CHECK(focusing_parameter(2e-3, k405, 1.0) < 1e-9);

  // inversion at the quoted tight-focusing anchor
  const double wp = waist_for_focusing(2e-3, k405, 0.832);
  CHECK(wp == doctest::Approx(12.4e-6).epsilon(5e-3));
  CHECK(focusing_parameter(2e-3, k405, wp) == doctest::Approx(0.832).epsilon(1e-12));

  CHECK_THROWS_AS(focusing_parameter(0.0, k405, 1e-4), DomainError);
  CHECK_THROWS_AS(focusing_parameter(2e-3, -1.0, 1e-4), DomainError);
  CHECK_THROWS_AS(focusing_parameter(2e-3, k405, 0.0), DomainError);
}

TEST_CASE("focusing parameter homogeneity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double L = dist(rng) * 1e-3;
    const double k = dist(rng) * 1e7;
    const double w = dist(rng) * 1e-4;
    const double c = dist(rng);
    const double a = focusing_parameter(L, k, w);
    const double b = focusing_parameter(c * L, k, std::sqrt(c) * w);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("thin crystal efficiency closed form") {
  // xi -> 0 limit
  CHECK(thin_crystal_efficiency(2e-3, 1.5514e7, 0.0, 456e-6) == doctest::Approx(1.0));
  // k_p*xi*w0^2 == L
  CHECK(thin_crystal_efficiency(1.0, 1.0, 1.0, 1.0) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  // k_p*xi*w0^2 == 2L
  CHECK(thin_crystal_efficiency(1.0, 1.0, 1.0, std::sqrt(2.0)) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(thin_crystal_efficiency(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(thin_crystal_efficiency(1.0, 1.0, -1.0, 1.0), DomainError);
}

TEST_CASE("thin crystal efficiency properties") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double L = dist(rng) * 1e-3;
    const double k = dist(rng) * 1e7;
    const double xi = dist(rng) * 0.05;
    const double w0 = dist(rng) * 1e-4;
    const double chi = thin_crystal_efficiency(L, k, xi, w0);
    CHECK(chi > 0.0);
    CHECK(chi <= 1.0);

    // equivalent single-ratio form
    const double r = k * xi * w0 * w0 / L;
    const double chi_ratio = 4.0 * (r + 1.0) / ((r + 2.0) * (r + 2.0));
    CHECK(chi == doctest::Approx(chi_ratio).epsilon(1e-12));

    // strictly decreasing in xi and in w0
    CHECK(thin_crystal_efficiency(L, k, xi * 1.5, w0) < chi);
    CHECK(thin_crystal_efficiency(L, k, xi, w0 * 1.5) < chi);
  }
}

TEST_CASE("phase mismatch vanishes on the cone") {
  PhaseMatchModel model;
  model.mode = PhaseMatchMode::ConeExpansion;
  model.cone_half_angle = 0.03;
  model.anisotropy_coefficient = 0.012;
  const PumpBeam pump = pump_405();
  const Crystal crystal = crystal_2mm();
  const double k_s = 0.5 * pump.wavenumber();
  const double r0 = k_s * model.cone_half_angle;

  for (double az : {0.0, 0.7, 2.1, 4.4}) {
    const Vec2 ks = r0 * unit_from_azimuth(az);
    const Vec2 ki = -ks;  // opposite azimuth, zero pump transverse momentum
    CHECK(std::abs(phase_mismatch(ks, ki, pump, crystal, model)) < 1e-6);
  }
}

TEST_CASE("paraxial mode matches exact z bookkeeping at small angles") {
  PhaseMatchModel model;
  model.mode = PhaseMatchMode::ParaxialQuadratic;
  const PumpBeam pump = pump_405();
  const Crystal crystal = crystal_2mm();
  const double k_p = pump.wavenumber();
  const double k_s = 0.5 * k_p;

  auto err_at = [&](double t) {
    const Vec2 ks{t * k_s, 0.3 * t * k_s};
    const Vec2 ki{-0.5 * t * k_s, 0.2 * t * k_s};
    const double model_dk = phase_mismatch(ks, ki, pump, crystal, model);
    const double exact_dk = exact_mismatch(ks, ki, k_p);
    CHECK(std::abs(model_dk - exact_dk) < 5e-4 * std::abs(exact_dk));
    return std::abs(model_dk - exact_dk);
  };
  const double e2 = err_at(0.02);
  const double e1 = err_at(0.01);
  CHECK(e1 < e2 / 8.0);  // quartic remainder: halving the angle gains ~16x
}

TEST_CASE("walk-off term is linear along the walk-off azimuth") {
  PhaseMatchModel model;
  model.mode = PhaseMatchMode::ConeExpansion;
  model.cone_half_angle = 0.03;
  model.anisotropy_coefficient = 0.017;
  const PumpBeam pump = pump_405();
  const double phi_w = 0.6;
  const Crystal crystal = crystal_2mm(phi_w);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double scale = 0.5 * pump.wavenumber() * 0.03;
  for (int i = 0; i < 100; ++i) {
    const Vec2 ks{scale * dist(rng), scale * dist(rng)};
    const Vec2 ki{scale * dist(rng), scale * dist(rng)};
    const double d1 = phase_mismatch(ks, ki, pump, crystal, model);
    const double d2 = phase_mismatch(-ks, -ki, pump, crystal, model);
    const double expected =
        2.0 * model.anisotropy_coefficient * (ks + ki).dot(unit_from_azimuth(phi_w));
    CHECK(d1 - d2 == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("rotation symmetry of the cone expansion") {
  PhaseMatchModel iso;
  iso.mode = PhaseMatchMode::ConeExpansion;
  iso.cone_half_angle = 0.03;
  iso.anisotropy_coefficient = 0.0;
  const PumpBeam pump = pump_405();
  const double k_s = 0.5 * pump.wavenumber();

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto rotate = [](Vec2 v, double a) {
    return Vec2{v.x * std::cos(a) - v.y * std::sin(a), v.x * std::sin(a) + v.y * std::cos(a)};
  };
  for (int i = 0; i < 100; ++i) {
    const Vec2 ks{0.05 * k_s * dist(rng), 0.05 * k_s * dist(rng)};
    const Vec2 ki{0.05 * k_s * dist(rng), 0.05 * k_s * dist(rng)};
    const double angle = 3.0 * dist(rng);

    // isotropic model: any joint rotation leaves dk unchanged
    const Crystal crystal = crystal_2mm(0.0);
    const double d0 = phase_mismatch(ks, ki, pump, crystal, iso);
    const double d1 = phase_mismatch(rotate(ks, angle), rotate(ki, angle), pump, crystal, iso);
    CHECK(d1 == doctest::Approx(d0).epsilon(1e-9));

    // anisotropic model: invariant only when the walk-off azimuth co-rotates
    PhaseMatchModel aniso = iso;
    aniso.anisotropy_coefficient = 0.017;
    const double a0 = phase_mismatch(ks, ki, pump, crystal_2mm(0.3), aniso);
    const double a1 = phase_mismatch(rotate(ks, angle), rotate(ki, angle), pump,
                                     crystal_2mm(0.3 + angle), aniso);
    CHECK(a1 == doctest::Approx(a0).epsilon(1e-9));
  }
}

TEST_CASE("crystal regime classification") {
  CHECK(classify_regime(2e-3, 12.3e-3) == CrystalRegime::Short);
  CHECK(classify_regime(2e-3, 13.9e-3) == CrystalRegime::Short);
  CHECK(classify_regime(5e-3, 5e-3) == CrystalRegime::Long);  // boundary maps to Long
  CHECK(classify_regime(20e-3, 12.3e-3) == CrystalRegime::Long);
  CHECK_THROWS_AS(classify_regime(0.0, 1e-3), DomainError);
  CHECK_THROWS_AS(classify_regime(1e-3, 0.0), DomainError);
}

TEST_CASE("domain type validation") {
  PumpBeam p = pump_405();
  p.waist = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);

  Crystal c = crystal_2mm();
  c.phase_matching_angle = 2.0;
  CHECK_THROWS_AS(c.validate(), DomainError);

  CollectionMode m;
  m.waist = -1e-6;
  CHECK_THROWS_AS(m.validate(), DomainError);

  PhaseMatchModel pm;
  pm.cone_half_angle = -0.1;
  CHECK_THROWS_AS(pm.validate(), DomainError);
}
