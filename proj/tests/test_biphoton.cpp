#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "spdc/biphoton.hpp"
#include "spdc/errors.hpp"

using namespace spdc;

namespace {

PumpBeam pump_405(double waist) {
  PumpBeam p;
  p.wavelength_vacuum = 405e-9;
  p.waist = waist;
  return p;
}

Crystal crystal_2mm() {
  Crystal c;
  c.thickness = 2e-3;
  c.phase_matching_angle = 29.97 * std::numbers::pi / 180.0;
  return c;
}

PhaseMatchModel cone_model(double theta0, double rho) {
  PhaseMatchModel m;
  m.mode = PhaseMatchMode::ConeExpansion;
  m.cone_half_angle = theta0;
  m.anisotropy_coefficient = rho;
  return m;
}

PhaseMatchModel paraxial_model() {
  PhaseMatchModel m;
  m.mode = PhaseMatchMode::ParaxialQuadratic;
  return m;
}

}  // namespace

TEST_CASE("pump angular spectrum") {
  const PumpBeam pump = pump_405(114e-6);
  CHECK(pump_angular_spectrum(pump, {0.0, 0.0}) == 1.0);

  const double efold = 2.0 / pump.waist;
  CHECK(pump_angular_spectrum(pump, {efold, 0.0}) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  for (int i = 0; i < 50; ++i) {
    const Vec2 q{dist(rng) * efold, dist(rng) * efold};
    const double ratio = pump_angular_spectrum(pump, q) / pump_angular_spectrum(pump, 2.0 * q);
    CHECK(ratio == doctest::Approx(std::exp(3.0 * pump.waist * pump.waist * q.norm2() / 4.0))
                       .epsilon(1e-9));
  }
}

TEST_CASE("spatial filter") {
  const double wc = 50e-6;
  CHECK(spatial_filter(wc, {0.0, 0.0}) == 1.0);
  CHECK(spatial_filter(wc, {1.0 / wc, 0.0}) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  double prev = 2.0;
  for (int i = 0; i < 20; ++i) {
    const double v = spatial_filter(wc, {i * 1e3, 0.0});
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(spatial_filter(0.0, {1.0, 0.0}), DomainError);
}

TEST_CASE("frequency filter") {
  FilterSpec spec;
  spec.center_frequency = 2.3e15;
  spec.bandwidth = 3e13;
  spec.spatial_width = 50e-6;
  CHECK(frequency_filter(spec, spec.center_frequency) == 1.0);
  CHECK(frequency_filter(spec, spec.center_frequency + spec.bandwidth) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(frequency_filter(spec, spec.center_frequency - spec.bandwidth) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double d = dist(rng) * spec.bandwidth;
    CHECK(frequency_filter(spec, spec.center_frequency + d) ==
          doctest::Approx(frequency_filter(spec, spec.center_frequency - d)).epsilon(1e-12));
  }
}

TEST_CASE("reference mode") {
  CollectionMode mode;
  mode.waist = 456e-6;
  mode.center_transverse_k = {3e3, -1e3};

  TransverseGrid grid(96, 4.5 * 2.0 / mode.waist, mode.center_transverse_k);
  const ComplexField u = reference_mode(mode, grid);

  // peak value 1 at the center (center falls between samples on an even grid,
  // so probe the evaluator's symmetry instead: max sample close to 1)
  double vmax = 0.0;
  for (const auto& v : u.values()) vmax = std::max(vmax, std::abs(v));
  CHECK(vmax > 0.99);

  // e-fold radius 2/w0
  const Vec2 probe = mode.center_transverse_k + Vec2{2.0 / mode.waist, 0.0};
  // nearest grid point check via direct formula instead:
  const double direct =
      std::exp(-mode.waist * mode.waist * (probe - mode.center_transverse_k).norm2() / 4.0);
  CHECK(direct == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // discrete L2 norm^2 approaches the analytic 2*pi/w0^2
  const double n2 = u.norm_l2() * u.norm_l2();
  CHECK(n2 == doctest::Approx(2.0 * std::numbers::pi / (mode.waist * mode.waist)).epsilon(1e-6));
}

TEST_CASE("joint mode function on and off the cone") {
  const PumpBeam pump = pump_405(114e-6);
  const Crystal crystal = crystal_2mm();
  const PhaseMatchModel model = cone_model(0.0293, 0.0);
  const double k_s = 0.5 * pump.wavenumber();
  const double r0 = k_s * model.cone_half_angle;

  TransverseGrid gs(64, 4.0 * r0 * 0.2 + r0, {r0, 0.0});
  TransverseGrid gi(64, 4.0 * r0 * 0.2 + r0, {-r0, 0.0});
  const JointAmplitude joint = joint_mode_function(gs, gi, pump, crystal, model);

  // on-cone points with zero pump transverse momentum: dk = 0, so the phase
  // factor is 1 and Phi equals the pump spectrum peak
  const std::complex<double> on_cone = joint.eval({r0, 0.0}, {-r0, 0.0});
  CHECK(on_cone.real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(on_cone.imag()) < 1e-9);

  // first sinc zero: paraxial collinear with ki = 0, dk = -ks^2/(4 k_s)
  const PhaseMatchModel par = paraxial_model();
  TransverseGrid gp(64, 1e6, {0.0, 0.0});
  const JointAmplitude jp = joint_mode_function(gp, gp, pump, crystal, par);
  const double ks_zero = std::sqrt(8.0 * std::numbers::pi * k_s / crystal.thickness);
  CHECK(std::abs(jp.eval({ks_zero, 0.0}, {0.0, 0.0})) < 1e-12);

  // pump decay bound: |q| >> 2/w_p
  const double q_far = 8.0 / pump.waist;
  CHECK(std::abs(jp.eval({q_far / 2, 0.0}, {q_far / 2, 0.0})) < 1e-6);

  // |Phi| <= 1 everywhere
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec2 ks{dist(rng) * 2 * r0, dist(rng) * 2 * r0};
    const Vec2 ki{dist(rng) * 2 * r0, dist(rng) * 2 * r0};
    CHECK(std::abs(joint.eval(ks, ki)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("joint slices are deterministic and consistent") {
  const PumpBeam pump = pump_405(50e-6);
  const Crystal crystal = crystal_2mm();
  const PhaseMatchModel model = cone_model(0.01, 0.005);

  TransverseGrid gs(16, 2e5, {1e4, 0.0});
  TransverseGrid gi(16, 2e5, {-1e4, 0.0});
  const JointAmplitude joint = joint_mode_function(gs, gi, pump, crystal, model);

  const ComplexField by_idler = joint.slice_fixed_idler(3, 7);
  const ComplexField by_signal = joint.slice_fixed_signal(5, 11);
  // shared sample: fixed idler slice at the signal point == fixed signal slice
  // at the idler point, bit for bit
  CHECK(by_idler.at(5, 11) == by_signal.at(3, 7));

  const ComplexField again = joint.slice_fixed_idler(3, 7);
  for (std::size_t i = 0; i < again.values().size(); ++i) {
    CHECK(again.values()[i] == by_idler.values()[i]);
  }

  const auto all = joint.materialize();
  const std::size_t n = 16;
  // signal-major layout: index = ((sy*n + sx)*n + iy)*n + ix
  CHECK(all[((11 * n + 5) * n + 7) * n + 3] == by_idler.at(5, 11));

  TransverseGrid big(64, 1e5);
  const JointAmplitude too_big = joint_mode_function(big, big, pump, crystal, model);
  CHECK_THROWS_AS((void)too_big.materialize(), DomainError);
}

TEST_CASE("coverage warning fires on clipped grids") {
  const PumpBeam pump = pump_405(114e-6);
  const Crystal crystal = crystal_2mm();
  const PhaseMatchModel model = cone_model(0.0293, 0.0);
  const double r0 = 0.5 * pump.wavenumber() * model.cone_half_angle;

  // grid centered on the axis, far smaller than the cone radius: the ring
  // falls outside and the boundary carries no mass -> the real hazard is a
  // grid whose boundary crosses the ring
  TransverseGrid clipped(32, r0 * 1.05, {r0, 0.0});
  const JointAmplitude bad = joint_mode_function(clipped, clipped.reflected(), pump, crystal, model);
  CHECK(bad.coverage_warning().has_value());

  TransverseGrid ample(64, 6e5, {r0, 0.0});
  const JointAmplitude good = joint_mode_function(ample, ample.reflected(), pump, crystal, model);
  CHECK_FALSE(good.coverage_warning().has_value());
}

TEST_CASE("conditional mode is normalized and matches the gaussian oracle") {
  // thin-crystal limit: Phi = E_0(ks + ki) only
  const double w_p = 60e-6;
  const double w_i = 120e-6;
  const Vec2 herald_center{5e3, -2e3};

  const double a = w_p * w_p / 4.0;
  const double b = w_i * w_i / 4.0;

  TransverseGrid gs(96, 4.0 * std::sqrt(1.0 / a + 1.0 / b) / 2.0 * 2.0, -1.0 * herald_center);
  TransverseGrid gi(96, 4.0 * (2.0 / w_i), herald_center);

  JointAmplitude thin(gs, gi, [w_p](Vec2 ks, Vec2 ki) -> std::complex<double> {
    return std::exp(-w_p * w_p * (ks + ki).norm2() / 4.0);
  });

  CollectionMode herald;
  herald.waist = w_i;
  herald.center_transverse_k = herald_center;
  herald.label = ModeLabel::Idler;
  const ComplexField u = reference_mode(herald, gi);

  const ComplexField phi = conditional_mode(thin, u, ModeLabel::Signal);
  CHECK(phi.norm_l2() == doctest::Approx(1.0).epsilon(1e-9));

  // analytic: phi_s ~ exp(-(ab/(a+b)) |ks + c_i|^2), normalized on the grid
  ComplexField oracle(gs);
  const double cpl = a * b / (a + b);
  for (std::size_t iy = 0; iy < static_cast<std::size_t>(gs.n()); ++iy) {
    for (std::size_t ix = 0; ix < static_cast<std::size_t>(gs.n()); ++ix) {
      const Vec2 k = gs.point(ix, iy) + herald_center;
      oracle.at(ix, iy) = std::exp(-cpl * k.norm2());
    }
  }
  oracle.normalize_l2();

  double peak = 0.0;
  for (const auto& v : phi.values()) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < phi.values().size(); ++i) {
    const double mag = std::abs(phi.values()[i]);
    if (mag > 1e-3 * peak) {
      CHECK(std::abs(phi.values()[i] - oracle.values()[i]) <= 1e-6 * mag);
    }
  }
}

TEST_CASE("conditional mode rejects a zero herald") {
  TransverseGrid g(16, 1e5);
  JointAmplitude thin(g, g, [](Vec2, Vec2) -> std::complex<double> { return 1.0; });
  ComplexField zero(g);
  CHECK_THROWS_AS((void)conditional_mode(thin, zero, ModeLabel::Signal), DataError);

  // herald on the wrong grid
  TransverseGrid other(16, 2e5);
  ComplexField wrong(other);
  wrong.at(1, 1) = 1.0;
  CHECK_THROWS_AS((void)conditional_mode(thin, wrong, ModeLabel::Signal), DomainError);
}
