#pragma once

// Piecewise constant-mean-curvature profiles with (H - kappa0)^2 = a^2: an
// inner branch regular at the axis joined with slope continuity to an outer
// branch that closes at a vertical tangent.

#include <vector>

#include "helfrich/functional.hpp"
#include "helfrich/geometry.hpp"

namespace helfrich {

/// Constant-H solution of the mean-curvature relation: sin(psi) = -H r + C / r.
struct CMCBranch {
  double h_const = 0.0;
  double c_int = 0.0;
  Interval r_range;

  double sin_psi(double r) const { return -h_const * r + c_int / r; }
};

struct BranchAngle {
  double psi = 0.0;
  double dpsi_dr = 0.0;
};

/// psi = arcsin(-H r + C/r) on the principal branch. Throws OutOfRange when
/// |sin psi| > 1 and DomainError for r <= 0. On the axis (r = 0, C = 0) the
/// limit psi = 0, psi' = -H is returned.
BranchAngle branch_psi(const CMCBranch& branch, double r);

struct CompositeProfile {
  CMCBranch inner;
  CMCBranch outer;
  double r_inflection = 0.0;
  /// Radius of the vertical tangent closing the outer branch.
  double r_rim = 0.0;
  /// dz_upper/dr = slope_sign * tan(psi); chosen so z_upper > 0 inside the rim.
  double slope_sign = 1.0;
  /// z_upper at each branch's reference radius: the rim for the outer
  /// branch (0) and the inflection circle for the inner one.
  double z_offset_outer = 0.0;
  double z_offset_inner = 0.0;
  SignConvention convention = SignConvention::plus;

  const CMCBranch& branch_at(double r) const { return r <= r_inflection ? inner : outer; }
  /// 0 for the inner branch, 1 for the outer one.
  int branch_id(double r) const { return r <= r_inflection ? 0 : 1; }
  /// Height of the upper half; the lower half is its mirror image.
  double z_upper(double r) const;
};

/// Inner H = kappa0 + inner_sign a with C = 0, outer H = kappa0 - inner_sign a
/// with C = (H_out - H_in) r_inflection^2. Throws InfeasibleJunction when the
/// inner branch leaves [-1, 1] before the junction or the surface crosses
/// the equatorial plane, and OpenProfile when the outer branch never reaches
/// a vertical tangent.
CompositeProfile build_composite(double kappa0, double a, double r_inflection, int inner_sign,
                                 SignConvention convention);

/// Area, volume and bending of the closed composite surface.
EnergyBreakdown composite_metrics(const CompositeProfile& profile, const MembraneParams& params,
                                  const QuadratureOptions& options = {});

}  // namespace helfrich
