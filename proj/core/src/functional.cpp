#include "helfrich/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace helfrich {

namespace {

constexpr double kPi = std::numbers::pi;

double surface_density(const ProfileCurve& profile, double r) {
  const double u = profile.slope(r).u;
  return 2.0 * kPi * r * std::sqrt(1.0 + u * u);
}

}  // namespace

EnergyBreakdown assemble_energy(double bending, double area, double volume, const MembraneParams& params,
                                EnergyComponents quad_error) {
  EnergyBreakdown e;
  e.bending = bending;
  e.area = area;
  e.volume = volume;
  e.total = bending + params.beta * params.lambda_bar * area + params.beta * params.p_bar * volume;
  quad_error.total = quad_error.bending + std::abs(params.beta * params.lambda_bar) * quad_error.area +
                     std::abs(params.beta * params.p_bar) * quad_error.volume;
  e.quad_error = quad_error;
  return e;
}

void require_closed(const ProfileCurve& profile) {
  const Interval d = profile.domain();
  if (!profile.vertical_at_hi() || !(d.lo == 0.0 || profile.vertical_at_lo())) {
    throw OpenProfile(profile.name() + " does not bound a closed surface");
  }
}

QuadratureValue surface_area(const ProfileCurve& profile, const QuadratureOptions& options) {
  require_closed(profile);
  const Interval d = profile.domain();
  auto f = [&](double r) { return 2.0 * surface_density(profile, r); };
  return integrate_radial(f, d.lo, d.hi, profile.vertical_at_lo(), true, profile.breakpoints(), options);
}

QuadratureValue enclosed_volume(const ProfileCurve& profile, const QuadratureOptions& options) {
  require_closed(profile);
  const Interval d = profile.domain();
  auto f = [&](double r) { return 4.0 * kPi * r * profile.z(r); };
  return integrate_radial(f, d.lo, d.hi, profile.vertical_at_lo(), true, profile.breakpoints(), options);
}

EnergyBreakdown helfrich_energy(const ProfileCurve& profile, const MembraneParams& params,
                                SignConvention convention, const QuadratureOptions& options) {
  params.validate();
  const QuadratureValue area = surface_area(profile, options);
  const QuadratureValue volume = enclosed_volume(profile, options);
  const Interval d = profile.domain();
  // A corner on the axis makes sin(psi)/r ~ 1/r, so the bending integral diverges logarithmically.
  if (d.lo == 0.0 && !profile.axis_regular() && !profile.vertical_at_lo())
    throw DomainError(profile.name() + " meets the axis at a corner; its bending energy diverges");
  auto f = [&](double r) {
    const double H = curvature_point(profile, r, convention).H;
    const double defect = 2.0 * H - params.c0;
    return 2.0 * params.beta * defect * defect * surface_density(profile, r);
  };
  QuadratureOptions bending_options = options;
  // A Willmore-critical integrand vanishes identically; accept roundoff-level values.
  bending_options.abs_tol = std::max(options.abs_tol, 1e-13 * params.beta * (1.0 + area.value));
  const QuadratureValue bending =
      integrate_radial(f, d.lo, d.hi, profile.vertical_at_lo(), true, profile.breakpoints(), bending_options);
  return assemble_energy(bending.value, area.value, volume.value, params,
                         {bending.error, area.error, volume.error, 0.0});
}

std::string to_string(FitWeight w) { return w == FitWeight::uniform ? "uniform" : "surface_measure"; }

// ---------------------------------------------------------------------------
// Fit

namespace {

std::array<double, 5> basis_terms(const ProfileCurve& profile, double r) {
  const UFormTerms t = u_form_terms(profile.slope(r), r);
  return {t.base, t.c0_sq, t.c0_lin, t.pressure, t.tension};
}

std::array<double, 5> coordinates(double c0, double lambda_bar, double p_bar) {
  return {1.0, c0 * c0, c0, p_bar, lambda_bar};
}

}  // namespace

FitProblem::FitProblem(double epsilon, const FitOptions& options) : profile_(epsilon), options_(options) {
  if (!(options.margin > 0.0 && options.margin < 0.5)) throw InputError("margin must lie in (0, 0.5)");
  if (options.seeds < 3) throw InputError("the c0 search needs at least 3 seed points");
  const Interval d = profile_.domain();
  a_ = d.lo + options.margin * d.width();
  b_ = d.hi - options.margin * d.width();
  // Entries far below the total magnitude of the basis are roundoff; the
  // absolute floor keeps identically vanishing terms from stalling refinement.
  auto total = [&](double r) {
    const auto t = basis_terms(profile_, r);
    double s = 0.0;
    for (double x : t) s += x * x;
    return weight(r) * s;
  };
  magnitude_ = integrate_radial(total, a_, b_, false, false, {}, options.quadrature).value;
  QuadratureOptions o = options.quadrature;
  o.abs_tol = std::max(o.abs_tol, 1e-15 * magnitude_);
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      auto f = [&](double r) {
        const auto t = basis_terms(profile_, r);
        return weight(r) * t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)];
      };
      const double v = integrate_radial(f, a_, b_, false, false, {}, o).value;
      gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      gram_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
}

double FitProblem::weight(double r) const {
  return options_.weight == FitWeight::uniform ? 1.0 : surface_density(profile_, r);
}

double FitProblem::objective(double c0, double lambda_bar, double p_bar) const {
  const auto x = coordinates(c0, lambda_bar, p_bar);
  double j = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k) j += x[i] * gram_[i][k] * x[k];
  return j;
}

double FitProblem::objective_scale(double c0, double lambda_bar, double p_bar) const {
  const auto x = coordinates(c0, lambda_bar, p_bar);
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += std::abs(x[i]) * std::sqrt(gram_[i][i]);
  return s * s;
}

std::array<double, 2> FitProblem::gradient_lambda_pressure(double c0, double lambda_bar, double p_bar) const {
  const auto x = coordinates(c0, lambda_bar, p_bar);
  double dl = 0.0, dp = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    dp += 2.0 * gram_[3][k] * x[k];
    dl += 2.0 * gram_[4][k] * x[k];
  }
  return {dl, dp};
}

FitProblem::Inner FitProblem::solve_inner(double c0) const {
  const std::array<double, 3> f{1.0, c0 * c0, c0};
  // Normal equations M [P, L] = rhs.
  const double m11 = gram_[3][3], m12 = gram_[3][4], m22 = gram_[4][4];
  double rhs1 = 0.0, rhs2 = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    rhs1 -= gram_[3][k] * f[k];
    rhs2 -= gram_[4][k] * f[k];
  }
  // Symmetric 2x2 eigen-decomposition; pseudo-inverse drops tiny eigenvalues.
  const double mean = 0.5 * (m11 + m22);
  const double diff = 0.5 * (m11 - m22);
  const double rad = std::hypot(diff, m12);
  const double l1 = mean + rad, l2 = mean - rad;
  double v1x = 1.0, v1y = 0.0;
  if (rad > 0.0) {
    // Eigenvector of l1: (m12, l1 - m11) or (l1 - m22, m12), whichever is better conditioned.
    if (std::abs(l1 - m22) >= std::abs(l1 - m11)) {
      v1x = l1 - m22;
      v1y = m12;
    } else {
      v1x = m12;
      v1y = l1 - m11;
    }
    const double n = std::hypot(v1x, v1y);
    v1x /= n;
    v1y /= n;
  }
  const double v2x = -v1y, v2y = v1x;
  Inner out;
  double p = 0.0, l = 0.0;
  if (l1 > 0.0) {
    const double c1 = (v1x * rhs1 + v1y * rhs2) / l1;
    p += c1 * v1x;
    l += c1 * v1y;
  }
  if (l2 > 1e-12 * l1) {
    const double c2 = (v2x * rhs1 + v2y * rhs2) / l2;
    p += c2 * v2x;
    l += c2 * v2y;
  } else {
    out.rank_deficient = true;
  }
  out.p_bar = p;
  out.lambda_bar = l;
  out.value = std::max(0.0, objective(c0, l, p));
  return out;
}

QuadratureValue FitProblem::direct_objective(const MembraneParams& params) const {
  auto f = [&](double r) {
    const double h = u_form_terms(profile_.slope(r), r).combine(params);
    return weight(r) * h * h;
  };
  QuadratureOptions o = options_.quadrature;
  // Roundoff in the residual is about 1e-16 of the summed term magnitudes, so
  // the integrand carries noise of order 1e-16 sqrt(J scale), plus a floor
  // for residuals that vanish identically.
  const double scale = objective_scale(params.c0, params.lambda_bar, params.p_bar);
  const double j = std::max(0.0, objective(params.c0, params.lambda_bar, params.p_bar));
  o.abs_tol = std::max({o.abs_tol, 1e-13 * std::sqrt(j * scale), 1e-26 * magnitude_});
  return integrate_radial(f, a_, b_, false, false, {}, o);
}

FitResult fit_parameters(double epsilon, const FitOptions& options) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw DomainError("epsilon must be finite and >= 0");
  const FitProblem problem(epsilon, options);
  const double half = options.c0_bracket / problem.profile().oval().r_max();

  FitResult res;
  res.epsilon = epsilon;

  const int n = options.seeds;
  std::vector<double> c(static_cast<std::size_t>(n));
  std::vector<FitProblem::Inner> inner(static_cast<std::size_t>(n));
  bool flat = true;
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    c[i] = -half + 2.0 * half * k / (n - 1);
    inner[i] = problem.solve_inner(c[i]);
    const double scale = problem.objective_scale(c[i], inner[i].lambda_bar, inner[i].p_bar);
    if (inner[i].value > 1e-12 * scale) flat = false;
  }
  res.iterations = n;

  // On a flat objective every c0 is optimal; choose the smallest parameter norm.
  auto criterion = [&](double c0) {
    const FitProblem::Inner in = problem.solve_inner(c0);
    if (flat) return c0 * c0 + in.lambda_bar * in.lambda_bar + in.p_bar * in.p_bar;
    return in.value;
  };
  std::size_t best = 0;
  double best_value = criterion(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double v = criterion(c[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = c[best == 0 ? 0 : best - 1];
  double hi = c[std::min(best + 1, c.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = criterion(x1), f2 = criterion(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = criterion(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = criterion(x2);
    }
    ++res.iterations;
  }
  double c0 = 0.5 * (lo + hi);
  if (criterion(c[best]) < criterion(c0)) c0 = c[best];

  const FitProblem::Inner opt = problem.solve_inner(c0);
  res.c0_opt = c0;
  res.lambda_opt = opt.lambda_bar;
  res.p_opt = opt.p_bar;
  res.degenerate = flat || opt.rank_deficient;

  const MembraneParams params{1.0, res.c0_opt, res.lambda_opt, res.p_opt};
  const QuadratureValue j = problem.direct_objective(params);
  res.l2_residual = std::sqrt(std::max(0.0, j.value));
  res.l2_error = res.l2_residual > 0.0 ? j.error / (2.0 * res.l2_residual) : std::sqrt(j.error);
  for (double r : chebyshev_grid(problem.profile().domain(), options.sup_points, options.margin)) {
    res.sup_residual = std::max(res.sup_residual, std::abs(residual_u_form(problem.profile(), params, r)));
  }
  return res;
}

}  // namespace helfrich
