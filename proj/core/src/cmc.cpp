#include "helfrich/cmc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace helfrich {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double s) { return std::clamp(s, -1.0, 1.0); }

// Roots of r (1 - t sin psi) = t H r^2 + r - t C, t = +/-1: the radii where sin psi = t.
struct UnitRoots {
  double A = 0.0, C = 0.0;
  bool real = false;
  double r1 = 0.0, r2 = 0.0;
};

UnitRoots unit_roots(const CMCBranch& b, double t) {
  UnitRoots u;
  u.A = t * b.h_const;
  u.C = -t * b.c_int;
  if (u.A == 0.0) {
    u.real = true;
    u.r1 = u.r2 = -u.C;
    return u;
  }
  const double disc = 1.0 - 4.0 * u.A * u.C;
  if (disc < 0.0) return u;
  const double q = -0.5 * (1.0 + std::sqrt(disc));
  u.real = true;
  u.r1 = q / u.A;
  u.r2 = u.C / q;
  return u;
}

// 1 - t sin psi through its roots, accurate where sin psi approaches t.
double one_minus(const CMCBranch& b, double t, double r) {
  const UnitRoots u = unit_roots(b, t);
  if (u.A == 0.0) return (r - u.r1) / r;
  if (!u.real) return (u.A * r * r + r + u.C) / r;
  return u.A * (r - u.r1) * (r - u.r2) / r;
}

double cos_squared(const CMCBranch& b, double r) {
  return std::max(0.0, one_minus(b, 1.0, r) * one_minus(b, -1.0, r));
}

double tan_psi(const CMCBranch& b, double r) { return clamp_unit(b.sin_psi(r)) / std::sqrt(cos_squared(b, r)); }

double sec_psi(const CMCBranch& b, double r) { return 1.0 / std::sqrt(cos_squared(b, r)); }

// First radius above r0 where |sin psi| = 1.
double first_unit_crossing(const CMCBranch& b, double r0) {
  double best = INFINITY;
  for (double t : {1.0, -1.0}) {
    const UnitRoots u = unit_roots(b, t);
    if (!u.real) continue;
    for (double r : {u.r1, u.r2})
      if (r > r0 && r < best) best = r;
  }
  return best;
}

}  // namespace

BranchAngle branch_psi(const CMCBranch& branch, double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("branch radius must be finite and non-negative");
  if (r == 0.0) {
    if (branch.c_int != 0.0) throw DomainError("branch with C != 0 is singular on the axis");
    return {0.0, -branch.h_const};
  }
  const double s = branch.sin_psi(r);
  if (std::abs(s) > 1.0 + 1e-14) {
    std::ostringstream os;
    os << "sin(psi) = " << s << " at r = " << r << " is outside [-1, 1]";
    throw OutOfRange(os.str());
  }
  const double sc = clamp_unit(s);
  const double c = std::sqrt(cos_squared(branch, r));
  // d(sin psi)/dr = cos psi psi' = -H - C / r^2
  return {std::asin(sc), (-branch.h_const - branch.c_int / (r * r)) / c};
}

double CompositeProfile::z_upper(double r) const {
  if (!(r >= 0.0 && r <= r_rim)) throw DomainError("radius outside the composite profile");
  if (r == r_rim) return 0.0;
  QuadratureOptions o;
  o.abs_tol = 1e-13;
  if (r > r_inflection) {
    auto f = [&](double x) { return tan_psi(outer, x); };
    return z_offset_outer - slope_sign * integrate_radial(f, r, r_rim, false, true, {}, o).value;
  }
  if (r == r_inflection) return z_offset_inner;
  auto f = [&](double x) { return tan_psi(inner, x); };
  return z_offset_inner - slope_sign * integrate_radial(f, r, r_inflection, false, false, {}, o).value;
}

CompositeProfile build_composite(double kappa0, double a, double r_inflection, int inner_sign,
                                 SignConvention convention) {
  if (!std::isfinite(kappa0)) throw DomainError("kappa0 must be finite");
  if (!std::isfinite(a)) throw DomainError("a must be finite");
  if (!std::isfinite(r_inflection) || !(r_inflection > 0.0)) throw DomainError("r_inflection must be positive");
  if (inner_sign != 1 && inner_sign != -1) throw DomainError("inner_sign must be +1 or -1");

  CompositeProfile p;
  p.convention = convention;
  p.r_inflection = r_inflection;
  p.inner.h_const = kappa0 + inner_sign * a;
  p.inner.c_int = 0.0;
  p.outer.h_const = kappa0 - inner_sign * a;
  p.outer.c_int = (p.outer.h_const - p.inner.h_const) * r_inflection * r_inflection;

  const double s_junction = p.inner.sin_psi(r_inflection);
  if (!(std::abs(s_junction) < 1.0)) {
    std::ostringstream os;
    os << "inner branch reaches |sin psi| = " << std::abs(s_junction) << " >= 1 before r_inflection";
    throw InfeasibleJunction(os.str());
  }

  // The rim is the first radius past the junction with sin psi = -1 or +1.
  const double rim = p.outer.h_const != 0.0 ? first_unit_crossing(p.outer, r_inflection) : INFINITY;
  if (!std::isfinite(rim)) throw OpenProfile("outer branch never reaches a vertical tangent");
  p.r_rim = rim;
  p.inner.r_range = {0.0, r_inflection};
  p.outer.r_range = {r_inflection, rim};

  // z decreases to zero at the rim on the upper half.
  const double s_rim = p.outer.sin_psi(rim);
  p.slope_sign = s_rim > 0.0 ? -1.0 : 1.0;
  p.z_offset_outer = 0.0;
  {
    QuadratureOptions o;
    o.abs_tol = 1e-13;
    auto f = [&](double x) { return tan_psi(p.outer, x); };
    p.z_offset_inner = -p.slope_sign * integrate_radial(f, r_inflection, rim, false, true, {}, o).value;
  }

  constexpr int kSamples = 64;
  for (int k = 0; k < kSamples; ++k) {
    const double r = rim * k / kSamples;
    if (!(p.z_upper(r) > 0.0)) {
      std::ostringstream os;
      os << "profile crosses the equatorial plane near r = " << r;
      throw InfeasibleJunction(os.str());
    }
  }
  return p;
}

EnergyBreakdown composite_metrics(const CompositeProfile& p, const MembraneParams& params,
                                  const QuadratureOptions& options) {
  params.validate();
  if (!(p.r_rim > p.r_inflection) || !std::isfinite(p.r_rim)) throw OpenProfile("composite profile is not closed");

  auto area_density = [](const CMCBranch& b) {
    return [&b](double r) { return 4.0 * kPi * r * sec_psi(b, r); };
  };
  const QuadratureValue area_in = integrate_radial(area_density(p.inner), 0.0, p.r_inflection, false, false, {}, options);
  const QuadratureValue area_out =
      integrate_radial(area_density(p.outer), p.r_inflection, p.r_rim, false, true, {}, options);

  // V = 4 pi int r z dr = -2 pi int r^2 z' dr, since z vanishes at the rim.
  auto volume_density = [&p](const CMCBranch& b) {
    return [&p, &b](double r) { return -2.0 * kPi * r * r * p.slope_sign * tan_psi(b, r); };
  };
  QuadratureOptions vol_options = options;
  vol_options.abs_tol = std::max(options.abs_tol, 1e-14);
  const QuadratureValue vol_in =
      integrate_radial(volume_density(p.inner), 0.0, p.r_inflection, false, false, {}, vol_options);
  const QuadratureValue vol_out =
      integrate_radial(volume_density(p.outer), p.r_inflection, p.r_rim, false, true, {}, vol_options);

  auto bending_density = [&](const CMCBranch& b) {
    const double defect = 2.0 * b.h_const - params.c0;
    const double factor = params.beta * defect * defect;
    return [factor, &b](double r) { return factor * 4.0 * kPi * r * sec_psi(b, r); };
  };
  const QuadratureOptions& bend_options = options;
  const QuadratureValue bend_in =
      integrate_radial(bending_density(p.inner), 0.0, p.r_inflection, false, false, {}, bend_options);
  const QuadratureValue bend_out =
      integrate_radial(bending_density(p.outer), p.r_inflection, p.r_rim, false, true, {}, bend_options);

  return assemble_energy(bend_in.value + bend_out.value, area_in.value + area_out.value, vol_in.value + vol_out.value,
                         params, {bend_in.error + bend_out.error, area_in.error + area_out.error,
                                  vol_in.error + vol_out.error, 0.0});
}

}  // namespace helfrich
