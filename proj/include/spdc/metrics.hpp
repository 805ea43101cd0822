#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/config.hpp"
#include "spdc/field.hpp"

namespace spdc {

/// Coupling and mode-quality summary for one configuration.
///   chi_si = c_si / sqrt(c_s * c_i)  (heralding efficiency, in [0, 1])
///   m_si   = |<phi_s, phi_i>| under L2 normalization
///   cs_gap = purity_s*purity_i - m_si^2 (>= 0 up to tolerance)
struct CouplingReport {
  double chi_si = 0.0;
  double c_si = 0.0;
  double c_s = 0.0;
  double c_i = 0.0;
  double m_si = 0.0;
  double purity_s = 1.0;
  double purity_i = 1.0;
  bool cs_satisfied = true;
  double cs_gap = 0.0;
};

/// Normalized overlap |<a,b>| / (||a|| ||b||), in [0, 1]. Both fields must be
/// nonzero and live on identical grids.
double mode_matching(const ComplexField& a, const ComplexField& b);

/// A single normalized mode is a pure state: returns exactly 1.
double purity(const ComplexField& field);

/// Tr(rho^2) of a statistical mixture {(p_n, phi_n)}: the fields are
/// L2-normalized internally and the weights must sum to 1 within 1e-9.
double purity_mixture(std::span<const double> weights, std::span<const ComplexField> fields);

/// Optimal-matching criterion m_si^2 <= p_s * p_i (+tol).
/// Returns {satisfied, gap} with gap = p_s*p_i - m_si^2.
std::pair<bool, double> cauchy_schwarz_check(double m_si, double p_s, double p_i, double tol);

/// Triple-overlap coupling efficiency on the joint amplitude's own grids:
///   C_si = |sum Phi u_s* u_i* ds^2 di^2|^2
///   C_s  = sum_ks |sum_ki Phi u_i* di^2|^2 ds^2   (and symmetrically C_i)
/// with u_s, u_i L2-normalized copies of the supplied collection modes.
/// m_si compares the two conditional modes at conjugate momenta (the idler
/// arm is reflected through k = 0), which requires grid_i == -grid_s.
CouplingReport coupling_efficiency_numeric(const JointAmplitude& joint,
                                           const ComplexField& mode_s,
                                           const ComplexField& mode_i);

/// Coupling report for a configuration at a given focusing parameter, with
/// optional collection-waist override. Each coupling integral is evaluated on
/// a quadrature grid sized to its own integrand: the triple overlap on grids
/// resolving the collection modes, the singles norms on grids wide enough for
/// the conditional modes. Grid sizes follow cfg.grid.
CouplingReport evaluate_coupling(const ExperimentConfig& cfg, double xi_p,
                                 double w0_override = 0.0);

/// Normalized conditional mode of one arm at the given focusing parameter,
/// heralded by the opposite arm's collection mode; lives on the wide
/// scenario grid centered at the arm's cone point.
ComplexField conditional_mode_for(const ExperimentConfig& cfg, double xi_p, ModeLabel which);

struct SweepRow {
  double xi_p = 0.0;
  double w0 = 0.0;
  double chi_numeric = 0.0;
  double chi_closed_form = 0.0;
  double rel_diff = 0.0;
  CouplingReport report;
};

/// Cross product of xi and w0 values, xi-major ordering; each row is an
/// independent evaluate_coupling call plus the closed-form reference.
std::vector<SweepRow> efficiency_sweep(const ExperimentConfig& cfg,
                                       std::span<const double> xi_values,
                                       std::span<const double> w0_values);

}  // namespace spdc
