#pragma once

// Area, volume and bending energy of closed axisymmetric surfaces, and the
// least-squares fit of (c0, lambda_bar, p_bar) to a Cassini oval.

#include <array>
#include <string>

#include "helfrich/geometry.hpp"
#include "helfrich/quadrature.hpp"
#include "helfrich/residual.hpp"

namespace helfrich {

struct EnergyComponents {
  double bending = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double total = 0.0;
};

struct EnergyBreakdown {
  double bending = 0.0;  // integral of beta (2H - c0)^2 dS
  double area = 0.0;
  double volume = 0.0;
  /// bending + beta lambda_bar area + beta p_bar volume.
  double total = 0.0;
  /// Absolute quadrature error estimates.
  EnergyComponents quad_error;
};

/// Assembles total from its parts.
EnergyBreakdown assemble_energy(double bending, double area, double volume, const MembraneParams& params,
                                EnergyComponents quad_error);

/// The profile must close: a vertical tangent at r_max with z = 0 there, and
/// either a regular axis crossing or a vertical tangent at r_min.
void require_closed(const ProfileCurve& profile);

/// A = 2 * integral of 2 pi r sqrt(1 + u^2) dr (both branches).
QuadratureValue surface_area(const ProfileCurve& profile, const QuadratureOptions& options = {});
/// V = integral of 4 pi r z_upper dr.
QuadratureValue enclosed_volume(const ProfileCurve& profile, const QuadratureOptions& options = {});
/// Bending uses H from the pointwise curvature under `convention`. Throws
/// DomainError when the profile meets the axis at a corner (divergent bending).
EnergyBreakdown helfrich_energy(const ProfileCurve& profile, const MembraneParams& params,
                                SignConvention convention, const QuadratureOptions& options = {});

enum class FitWeight { surface_measure, uniform };
std::string to_string(FitWeight w);

struct FitOptions {
  FitWeight weight = FitWeight::surface_measure;
  double margin = 0.05;
  /// c0 is searched in [-bracket, bracket] / r_max.
  double c0_bracket = 10.0;
  int seeds = 64;
  QuadratureOptions quadrature{1e-12, 4000, 0.0};
  /// Grid size for the sup norm.
  int sup_points = 64;
};

struct FitResult {
  double epsilon = 0.0;
  double c0_opt = 0.0;
  double lambda_opt = 0.0;
  double p_opt = 0.0;
  /// sqrt of the weighted integral of the residual squared at the optimum.
  double l2_residual = 0.0;
  /// Error estimate of l2_residual propagated from the quadrature.
  double l2_error = 0.0;
  double sup_residual = 0.0;
  int iterations = 0;
  /// The minimizer is not unique; the minimum-norm parameters are reported.
  bool degenerate = false;
};

/// J(c0, lambda, P) = integral of w(r) H_u(r)^2 over the margined Cassini
/// domain, evaluated through the Gram matrix of the u-form basis terms.
class FitProblem {
 public:
  FitProblem(double epsilon, const FitOptions& options = {});

  double epsilon() const { return profile_.epsilon(); }
  const CassiniProfile& profile() const { return profile_; }
  double a() const { return a_; }
  double b() const { return b_; }
  /// Order: base, c0_sq, c0_lin, pressure, tension.
  const std::array<std::array<double, 5>, 5>& gram() const { return gram_; }

  double objective(double c0, double lambda_bar, double p_bar) const;
  /// dJ/d(lambda, P) in closed form.
  std::array<double, 2> gradient_lambda_pressure(double c0, double lambda_bar, double p_bar) const;

  struct Inner {
    double lambda_bar = 0.0;
    double p_bar = 0.0;
    double value = 0.0;
    bool rank_deficient = false;
  };
  /// Minimum-norm least-squares (lambda, P) for fixed c0.
  Inner solve_inner(double c0) const;
  /// Upper bound of |J| set by the magnitudes of the terms, used as the scale for tolerances.
  double objective_scale(double c0, double lambda_bar, double p_bar) const;

  /// Integral of w H^2 and its error estimate by direct quadrature.
  QuadratureValue direct_objective(const MembraneParams& params) const;
  double weight(double r) const;
  double basis_magnitude() const { return magnitude_; }

 private:
  CassiniProfile profile_;
  FitOptions options_;
  double a_ = 0.0, b_ = 0.0;
  /// Integral of w times the sum of squared basis terms.
  double magnitude_ = 0.0;
  std::array<std::array<double, 5>, 5> gram_{};
};

FitResult fit_parameters(double epsilon, const FitOptions& options = {});

}  // namespace helfrich
