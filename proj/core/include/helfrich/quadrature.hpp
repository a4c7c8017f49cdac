#pragma once

// Adaptive Gauss-Kronrod quadrature over radial intervals whose ends may
// carry an inverse-square-root singularity.

#include <functional>
#include <vector>

namespace helfrich {

struct QuadratureOptions {
  /// Relative accuracy target, measured against the integral of |f|.
  double rel_tol = 1e-11;
  /// Cap on the number of Gauss-Kronrod panels.
  int max_panels = 4000;
  /// Absolute error accepted regardless of the relative target.
  double abs_tol = 0.0;
};

struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;
};

/// Integrates f over [a, b]. A flagged end uses r = end -/+ tau^2, which turns
/// a (distance)^(-1/2) blow-up into a bounded integrand. Interior breakpoints
/// split the range. Panels are bisected worst-first until the summed error
/// estimate meets max(rel_tol * integral of |f|, abs_tol); QuadratureFailure
/// is thrown when the panel cap is hit first.
QuadratureValue integrate_radial(const std::function<double(double)>& f, double a, double b, bool singular_at_a,
                                 bool singular_at_b, const std::vector<double>& breakpoints = {},
                                 const QuadratureOptions& options = {});

}  // namespace helfrich
