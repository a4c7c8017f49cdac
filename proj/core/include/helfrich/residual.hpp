#pragma once

// Pointwise evaluation of the axisymmetric shape equation in three forms,
// grid reports, and the round-sphere specialization.

#include <optional>
#include <string>
#include <vector>

#include "helfrich/geometry.hpp"

namespace helfrich {

/// Bending rigidity and the normalized multipliers lambda_bar = lambda / beta,
/// p_bar = Delta P / beta.
struct MembraneParams {
  double beta = 1.0;
  double c0 = 0.0;
  double lambda_bar = 0.0;
  double p_bar = 0.0;

  /// Throws DomainError unless beta > 0 and every field is finite.
  void validate() const;
};

enum class ResidualForm { third_order, psi_form, u_form };
std::string to_string(ResidualForm f);

/// `corrected` restores the terms of the third-order equation that make round
/// spheres satisfying the sphere constraint exact solutions; `as_printed`
/// keeps the variant with psi'' in place of psi'' psi', lambda sin(psi) in
/// place of lambda sin(psi)/r, sin^2 in place of sin^3 in the 1/r^3 term and
/// the opposite sign on the c0 sin(psi)/r coupling.
enum class ThirdOrderVariant { corrected, as_printed };

enum class DerivativeSource { analytic, finite_difference };
std::string to_string(DerivativeSource s);

struct ResidualOptions {
  ThirdOrderVariant variant = ThirdOrderVariant::corrected;
  bool allow_finite_difference = true;
};

/// The u-form residual split by parameter dependence:
/// value = base + c0^2 c0_sq + c0 c0_lin + p_bar pressure + lambda_bar tension.
struct UFormTerms {
  double base = 0.0;
  double c0_sq = 0.0;
  double c0_lin = 0.0;
  double pressure = 0.0;
  double tension = 0.0;

  double combine(const MembraneParams& p) const {
    return base + p.c0 * p.c0 * c0_sq + p.c0 * c0_lin + p.p_bar * pressure + p.lambda_bar * tension;
  }
};
UFormTerms u_form_terms(const SlopeJet& s, double r);

double residual_u_form(const ProfileCurve& profile, const MembraneParams& params, double r);
double residual_psi_form(const ProfileCurve& profile, const MembraneParams& params, double r,
                         SignConvention convention);

struct ThirdOrderValue {
  double value = 0.0;
  DerivativeSource source = DerivativeSource::analytic;
  /// Richardson estimate of the finite-difference error in u''' (0 when analytic).
  double u3_error = 0.0;
};
ThirdOrderValue residual_third_order(const ProfileCurve& profile, const MembraneParams& params, double r,
                                     SignConvention convention, const ResidualOptions& options = {});

/// Evaluate a form at one radius.
double residual_at(const ProfileCurve& profile, const MembraneParams& params, ResidualForm form, double r,
                   SignConvention convention, const ResidualOptions& options = {});

struct ResidualReport {
  ResidualForm form = ResidualForm::u_form;
  SignConvention convention = SignConvention::plus;
  std::vector<double> grid;
  std::vector<double> residuals;
  double sup_norm = 0.0;
  /// sqrt of the Gauss-Chebyshev approximation of the integral of
  /// 2 pi r sqrt(1+u^2) H^2 over the margined domain.
  double l2_norm = 0.0;
  DerivativeSource third_derivative = DerivativeSource::analytic;
  double max_u3_error = 0.0;
};

/// Chebyshev nodes of the first kind on the domain shrunk by margin * width at each end, increasing.
std::vector<double> chebyshev_grid(Interval domain, int n_points, double margin);

ResidualReport residual_report(const ProfileCurve& profile, const MembraneParams& params, ResidualForm form,
                               int n_points, double margin, SignConvention convention,
                               const ResidualOptions& options = {});

/// Euler-Lagrange residual 2 dH + (2H - c0)(2H^2 - 2K + c0 H) + p_bar - 2 lambda_bar H on a
/// round sphere of radius a: orientation I uses H = -1/a, orientation II uses H = +1/a.
/// Equals (p_bar a^2 +/- (c0^2 + 2 lambda_bar) a + 2 c0) / a^2 with + for I.
double sphere_el_residual(double a, const MembraneParams& params, Orientation orientation);

/// Positive radii solving the sphere constraint, ascending. Throws
/// IdenticallyZero when the constraint holds for every radius.
std::vector<double> sphere_solve(const MembraneParams& params, Orientation orientation);

/// Pressure making a sphere of radius a an equilibrium for the given c0 and lambda_bar.
double sphere_pressure(double a, double c0, double lambda_bar, Orientation orientation);

/// Runs the cross-form harness on the Cassini family and returns the unique
/// convention under which the psi-form and u-form residuals coincide.
SignConvention select_sign_convention();
/// select_sign_convention(), evaluated once per process.
SignConvention resolved_sign_convention();

}  // namespace helfrich
