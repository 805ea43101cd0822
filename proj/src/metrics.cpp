#include "spdc/metrics.hpp"

#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

ComplexField conjugated(const ComplexField& f) {
  ComplexField out = f;
  for (auto& v : out.values()) v = std::conj(v);
  return out;
}

}  // namespace

double mode_matching(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw DomainError("mode matching requires identical grids");
  const double na = a.norm_l2();
  const double nb = b.norm_l2();
  if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("mode matching requires nonzero fields");
  return std::abs(inner_product(a, b)) / (na * nb);
}

double purity(const ComplexField& field) {
  if (!(field.norm_l2() > 0.0)) throw DomainError("purity requires a nonzero field");
  return 1.0;
}

double purity_mixture(std::span<const double> weights, std::span<const ComplexField> fields) {
  if (weights.size() != fields.size() || weights.empty()) {
    throw DomainError("mixture requires matching, nonempty weight and field lists");
  }
  double total = 0.0;
  for (double p : weights) {
    if (p < 0.0) throw DomainError("mixture weights must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("mixture weights must sum to 1 within 1e-9");

  std::vector<ComplexField> normed;
  normed.reserve(fields.size());
  for (const auto& f : fields) {
    ComplexField g = f;
    g.normalize_l2();
    normed.push_back(std::move(g));
  }
  double tr = 0.0;
  for (std::size_t m = 0; m < normed.size(); ++m) {
    for (std::size_t n = 0; n < normed.size(); ++n) {
      const double ov = std::abs(inner_product(normed[m], normed[n]));
      tr += weights[m] * weights[n] * ov * ov;
    }
  }
  return tr;
}

std::pair<bool, double> cauchy_schwarz_check(double m_si, double p_s, double p_i, double tol) {
  const double gap = p_s * p_i - m_si * m_si;
  return {m_si * m_si <= p_s * p_i + tol, gap};
}

CouplingReport coupling_efficiency_numeric(const JointAmplitude& joint,
                                           const ComplexField& mode_s,
                                           const ComplexField& mode_i) {
  if (!(mode_s.grid() == joint.grid_s()) || !(mode_i.grid() == joint.grid_i())) {
    throw DomainError("collection modes must live on the joint amplitude's grids");
  }

  ComplexField u_s = mode_s;
  ComplexField u_i = mode_i;
  u_s.normalize_l2();
  u_i.normalize_l2();

  // psi_s(k_s) = sum_ki Phi * conj(u_i) * di^2, and symmetrically psi_i.
  const ComplexField psi_s = conditional_projection(joint, conjugated(u_i), ModeLabel::Signal);
  const ComplexField psi_i = conditional_projection(joint, conjugated(u_s), ModeLabel::Idler);

  const double c_s = psi_s.norm_l2() * psi_s.norm_l2();
  const double c_i = psi_i.norm_l2() * psi_i.norm_l2();
  if (!(c_s > 0.0) || !(c_i > 0.0)) {
    throw DataError("zero singles: collection modes do not overlap the joint amplitude");
  }
  const double c_si = std::norm(inner_product(u_s, psi_s));

  CouplingReport r;
  r.c_si = c_si;
  r.c_s = c_s;
  r.c_i = c_i;
  r.chi_si = c_si / std::sqrt(c_s * c_i);

  ComplexField phi_s = psi_s;
  ComplexField phi_i = psi_i;
  phi_s.normalize_l2();
  phi_i.normalize_l2();
  if (!(joint.grid_i().reflected() == joint.grid_s())) {
    throw DomainError("mode matching requires mirror-congruent signal/idler grids");
  }
  r.m_si = mode_matching(phi_s, phi_i.reflected());
  r.purity_s = purity(phi_s);
  r.purity_i = purity(phi_i);
  auto [ok, gap] = cauchy_schwarz_check(r.m_si, r.purity_s, r.purity_i, 1e-9);
  r.cs_satisfied = ok;
  r.cs_gap = gap;
  return r;
}

namespace {

struct ScenarioGrids {
  TransverseGrid fine_s;
  TransverseGrid fine_i;
  TransverseGrid wide_s;
  TransverseGrid wide_i;
};

// Quadrature grids sized to the integrands they serve: the fine pair resolves
// the collection modes for the triple overlap; the wide pair covers the full
// conditional-mode support (pump convolution plus the sinc ring width).
ScenarioGrids make_grids(const ExperimentConfig& cfg, double pump_waist, double w_eff_s,
                         double w_eff_i) {
  const int n = cfg.grid.points_per_axis;
  const double scale = cfg.grid.extent_scale;
  const Vec2 c_s = cfg.collection_mode(ModeLabel::Signal).center_transverse_k;
  const Vec2 c_i = cfg.collection_mode(ModeLabel::Idler).center_transverse_k;

  const double fine_ext = scale * 2.0 / std::min(w_eff_s, w_eff_i);

  const double w_eff_min = std::min(w_eff_s, w_eff_i);
  const double conv =
      2.0 * std::sqrt(1.0 / (pump_waist * pump_waist) + 1.0 / (w_eff_min * w_eff_min));
  double sinc_fwhm = 0.0;
  if (cfg.phase_match.mode == PhaseMatchMode::ConeExpansion &&
      cfg.phase_match.cone_half_angle > 0.0) {
    sinc_fwhm = 5.566 / (cfg.crystal.thickness * cfg.phase_match.cone_half_angle);
  }
  const double wide_ext = scale * conv + sinc_fwhm;

  return ScenarioGrids{TransverseGrid(n, fine_ext, c_s), TransverseGrid(n, fine_ext, c_i),
                       TransverseGrid(n, wide_ext, c_s), TransverseGrid(n, wide_ext, c_i)};
}

}  // namespace

CouplingReport evaluate_coupling(const ExperimentConfig& cfg, double xi_p, double w0_override) {
  cfg.validate();
  if (!(xi_p > 0.0)) throw DomainError("focusing parameter must be > 0");
  if (w0_override < 0.0) throw DomainError("collection waist override must be >= 0");

  ExperimentConfig c = cfg;
  c.pump.waist = waist_for_focusing(c.crystal.thickness, c.pump_wavenumber(), xi_p);
  if (w0_override > 0.0) {
    c.signal_waist = w0_override;
    c.idler_waist = w0_override;
  }

  const CollectionMode sig = c.collection_mode(ModeLabel::Signal);
  const CollectionMode idl = c.collection_mode(ModeLabel::Idler);
  const ScenarioGrids g = make_grids(c, c.pump.waist, sig.waist, idl.waist);

  const JointAmplitude joint_fine =
      joint_mode_function(g.fine_s, g.fine_i, c.pump, c.crystal, c.phase_match);
  const JointAmplitude joint_cs =
      joint_mode_function(g.wide_s, g.fine_i, c.pump, c.crystal, c.phase_match);
  const JointAmplitude joint_ci =
      joint_mode_function(g.fine_s, g.wide_i, c.pump, c.crystal, c.phase_match);

  ComplexField u_s_fine = reference_mode(sig, g.fine_s);
  ComplexField u_i_fine = reference_mode(idl, g.fine_i);
  u_s_fine.normalize_l2();
  u_i_fine.normalize_l2();

  // Triple overlap on the fine pair.
  const ComplexField psi_fine =
      conditional_projection(joint_fine, conjugated(u_i_fine), ModeLabel::Signal);
  const double c_si_raw = std::norm(inner_product(u_s_fine, psi_fine));

  // Singles norms on the wide grids.
  const ComplexField psi_s =
      conditional_projection(joint_cs, conjugated(u_i_fine), ModeLabel::Signal);
  const ComplexField psi_i =
      conditional_projection(joint_ci, conjugated(u_s_fine), ModeLabel::Idler);
  const double c_s_raw = psi_s.norm_l2() * psi_s.norm_l2();
  const double c_i_raw = psi_i.norm_l2() * psi_i.norm_l2();
  if (!(c_s_raw > 0.0) || !(c_i_raw > 0.0)) {
    throw DataError("zero singles: collection modes do not overlap the joint amplitude");
  }

  // Frequency filter at the degenerate band, one factor per collected photon.
  const double gamma = frequency_filter(c.frequency_filter, c.degenerate_frequency());
  const double g2 = gamma * gamma;

  CouplingReport r;
  r.c_si = c_si_raw * g2 * g2;
  r.c_s = c_s_raw * g2;
  r.c_i = c_i_raw * g2;
  r.chi_si = r.c_si / std::sqrt(r.c_s * r.c_i);

  ComplexField phi_s = psi_s;
  ComplexField phi_i = psi_i;
  phi_s.normalize_l2();
  phi_i.normalize_l2();
  r.m_si = mode_matching(phi_s, phi_i.reflected());
  r.purity_s = purity(phi_s);
  r.purity_i = purity(phi_i);
  auto [ok, gap] = cauchy_schwarz_check(r.m_si, r.purity_s, r.purity_i, 1e-9);
  r.cs_satisfied = ok;
  r.cs_gap = gap;
  return r;
}

ComplexField conditional_mode_for(const ExperimentConfig& cfg, double xi_p, ModeLabel which) {
  cfg.validate();
  if (!(xi_p > 0.0)) throw DomainError("focusing parameter must be > 0");

  ExperimentConfig c = cfg;
  c.pump.waist = waist_for_focusing(c.crystal.thickness, c.pump_wavenumber(), xi_p);

  const CollectionMode sig = c.collection_mode(ModeLabel::Signal);
  const CollectionMode idl = c.collection_mode(ModeLabel::Idler);
  const ScenarioGrids g = make_grids(c, c.pump.waist, sig.waist, idl.waist);

  if (which == ModeLabel::Signal) {
    const JointAmplitude joint =
        joint_mode_function(g.wide_s, g.fine_i, c.pump, c.crystal, c.phase_match);
    return conditional_mode(joint, reference_mode(idl, g.fine_i), ModeLabel::Signal);
  }
  const JointAmplitude joint =
      joint_mode_function(g.fine_s, g.wide_i, c.pump, c.crystal, c.phase_match);
  return conditional_mode(joint, reference_mode(sig, g.fine_s), ModeLabel::Idler);
}

std::vector<SweepRow> efficiency_sweep(const ExperimentConfig& cfg,
                                       std::span<const double> xi_values,
                                       std::span<const double> w0_values) {
  if (xi_values.empty() || w0_values.empty()) {
    throw DomainError("sweep requires nonempty xi and w0 lists");
  }
  for (double xi : xi_values) {
    if (!(xi > 0.0)) throw DomainError("sweep xi values must be > 0");
  }
  for (double w0 : w0_values) {
    if (!(w0 > 0.0)) throw DomainError("sweep w0 values must be > 0");
  }

  std::vector<SweepRow> rows;
  rows.reserve(xi_values.size() * w0_values.size());
  for (double xi : xi_values) {
    for (double w0 : w0_values) {
      SweepRow row;
      row.xi_p = xi;
      row.w0 = w0;
      try {
        row.report = evaluate_coupling(cfg, xi, w0);
        row.chi_numeric = row.report.chi_si;
        row.chi_closed_form =
            thin_crystal_efficiency(cfg.crystal.thickness, cfg.pump_wavenumber(), xi, w0);
        row.rel_diff = (row.chi_numeric - row.chi_closed_form) / row.chi_closed_form;
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "sweep row (xi_p=" << xi << ", w0_um=" << w0 * 1e6 << "): " << e.what();
        throw DataError(msg.str());
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace spdc
