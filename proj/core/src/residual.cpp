#include "helfrich/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace helfrich {

namespace {

constexpr double kVerticalTolerance = 1e-12;

void check_interior(const ProfileCurve& profile, double r) {
  if (!profile.domain().contains(r)) {
    std::ostringstream os;
    os << "r = " << r << " is not interior to the domain of " << profile.name();
    throw DomainError(os.str());
  }
}

}  // namespace

void MembraneParams::validate() const {
  if (!std::isfinite(beta) || !(beta > 0.0)) throw DomainError("beta must be finite and positive");
  if (!std::isfinite(c0)) throw DomainError("c0 must be finite");
  if (!std::isfinite(lambda_bar)) throw DomainError("lambda must be finite");
  if (!std::isfinite(p_bar)) throw DomainError("pressure must be finite");
}

std::string to_string(ResidualForm f) {
  switch (f) {
    case ResidualForm::third_order:
      return "third_order";
    case ResidualForm::psi_form:
      return "psi_form";
    case ResidualForm::u_form:
      return "u_form";
  }
  return "unknown";
}

std::string to_string(DerivativeSource s) {
  return s == DerivativeSource::analytic ? "analytic" : "finite_difference";
}

UFormTerms u_form_terms(const SlopeJet& s, double r) {
  const double u = s.u, u1 = s.du, u2 = s.d2u;
  const double q = 1.0 + u * u;
  const double root = std::sqrt(q);
  UFormTerms t;
  t.base = -5.0 * u * u1 * u1 / (2.0 * q * q * q) + u2 / (q * q) - u / (2.0 * r * r) * (1.0 + 1.0 / q) +
           u1 / (r * q * q);
  t.c0_sq = -0.5 * u;
  t.c0_lin = -u * u / (r * root);
  t.pressure = -0.5 * r * root;
  t.tension = -u;
  return t;
}

double residual_u_form(const ProfileCurve& profile, const MembraneParams& params, double r) {
  check_interior(profile, r);
  return u_form_terms(profile.slope(r), r).combine(params);
}

double residual_psi_form(const ProfileCurve& profile, const MembraneParams& params, double r,
                         SignConvention convention) {
  check_interior(profile, r);
  const AngleJet a = angle_jet(profile.slope(r), std::nullopt, convention);
  const double S = std::sin(a.psi), C = std::cos(a.psi);
  if (std::abs(C) < kVerticalTolerance) {
    std::ostringstream os;
    os << "vertical tangent at r = " << r;
    throw VerticalTangent(os.str());
  }
  const double c0 = params.c0, P = params.p_bar, L = params.lambda_bar;
  const double p1 = a.d1, p2 = a.d2;
  return C * C * p2 - S * C / 2.0 * p1 * p1 - S / (2.0 * r * r * C) - S * C / (2.0 * r * r) -
         c0 * c0 * S / (2.0 * C) + C * C / r * p1 - c0 * S * S / (r * C) - P / 2.0 * r / C - L * S / C;
}

namespace {

struct ThirdDerivative {
  double value;
  DerivativeSource source;
  double error;
};

ThirdDerivative third_derivative_of(const ProfileCurve& profile, double r, const ResidualOptions& options) {
  if (auto d3 = profile.third_derivative(r)) return {*d3, DerivativeSource::analytic, 0.0};
  if (!options.allow_finite_difference) {
    throw DerivativeUnavailable(profile.name() + " supplies no third derivative and finite differences are disabled");
  }
  const Interval d = profile.domain();
  double h = 1e-4 * d.width();
  // Keep r +/- 2h strictly inside the domain.
  h = std::min(h, 0.25 * std::min(r - d.lo, d.hi - r));
  auto central = [&](double step) {
    return (profile.slope(r + step).d2u - profile.slope(r - step).d2u) / (2.0 * step);
  };
  const double fine = central(h);
  const double coarse = central(2.0 * h);
  return {fine, DerivativeSource::finite_difference, std::abs(fine - coarse) / 3.0};
}

}  // namespace

ThirdOrderValue residual_third_order(const ProfileCurve& profile, const MembraneParams& params, double r,
                                     SignConvention convention, const ResidualOptions& options) {
  check_interior(profile, r);
  const ThirdDerivative u3 = third_derivative_of(profile, r, options);
  const AngleJet a = angle_jet(profile.slope(r), u3.value, convention);
  const double S = std::sin(a.psi), C = std::cos(a.psi);
  const double p1 = a.d1, p2 = a.d2, p3 = *a.d3;
  const double c0 = params.c0, P = params.p_bar, L = params.lambda_bar;
  const double C2 = C * C, C3 = C2 * C, S2 = S * S;
  const double r2 = r * r, r3 = r2 * r;

  double value = -C3 * p3 - C * (S2 - 0.5 * C2) * p1 * p1 * p1 + 7.0 * S * C2 / (2.0 * r) * p1 * p1 -
                 2.0 * C3 / r * p2 + c0 * c0 * S / (2.0 * r) - S * C2 / r3 + P;
  const double bracket_common = c0 * c0 / 2.0 + S2 / (2.0 * r2) + L - (S2 - C2) / r2;
  if (options.variant == ThirdOrderVariant::corrected) {
    value += 4.0 * S * C2 * p2 * p1 + (bracket_common + 2.0 * c0 * S / r) * C * p1 + L * S / r -
             S2 * S / (2.0 * r3);
  } else {
    value += 4.0 * S * C2 * p2 + (bracket_common - 2.0 * c0 * S / r) * C * p1 + L * S - S2 / (2.0 * r3);
  }
  return {value, u3.source, u3.error};
}

double residual_at(const ProfileCurve& profile, const MembraneParams& params, ResidualForm form, double r,
                   SignConvention convention, const ResidualOptions& options) {
  switch (form) {
    case ResidualForm::u_form:
      return residual_u_form(profile, params, r);
    case ResidualForm::psi_form:
      return residual_psi_form(profile, params, r, convention);
    case ResidualForm::third_order:
      return residual_third_order(profile, params, r, convention, options).value;
  }
  throw InputError("unknown residual form");
}

std::vector<double> chebyshev_grid(Interval domain, int n_points, double margin) {
  if (n_points < 2) throw InputError("residual grid needs at least 2 points");
  if (!(margin > 0.0 && margin < 0.5)) throw InputError("margin must lie in (0, 0.5)");
  const double w = domain.width();
  const double a = domain.lo + margin * w;
  const double b = domain.hi - margin * w;
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double x = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n_points));
    grid[static_cast<std::size_t>(k)] = 0.5 * (a + b) - 0.5 * (b - a) * x;
  }
  return grid;
}

ResidualReport residual_report(const ProfileCurve& profile, const MembraneParams& params, ResidualForm form,
                               int n_points, double margin, SignConvention convention,
                               const ResidualOptions& options) {
  params.validate();
  ResidualReport rep;
  rep.form = form;
  rep.convention = convention;
  rep.grid = chebyshev_grid(profile.domain(), n_points, margin);
  rep.residuals.reserve(rep.grid.size());

  const Interval d = profile.domain();
  const double half = 0.5 * (1.0 - 2.0 * margin) * d.width();
  double weighted = 0.0;
  for (std::size_t k = 0; k < rep.grid.size(); ++k) {
    const double r = rep.grid[k];
    double h = 0.0;
    if (form == ResidualForm::third_order) {
      const ThirdOrderValue v = residual_third_order(profile, params, r, convention, options);
      h = v.value;
      if (v.source == DerivativeSource::finite_difference) {
        rep.third_derivative = DerivativeSource::finite_difference;
        rep.max_u3_error = std::max(rep.max_u3_error, v.u3_error);
      }
    } else {
      h = residual_at(profile, params, form, r, convention, options);
    }
    rep.residuals.push_back(h);
    rep.sup_norm = std::max(rep.sup_norm, std::abs(h));

    const double x = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * n_points));
    const double node_weight = std::numbers::pi / n_points * std::sqrt(1.0 - x * x) * half;
    const double u = profile.slope(r).u;
    const double measure = 2.0 * std::numbers::pi * r * std::sqrt(1.0 + u * u);
    weighted += node_weight * measure * h * h;
  }
  rep.l2_norm = std::sqrt(weighted);
  return rep;
}

double sphere_el_residual(double a, const MembraneParams& params, Orientation orientation) {
  if (!(a > 0.0) || !std::isfinite(a)) throw NonpositiveRadius("sphere radius must be positive");
  const double H = orientation == Orientation::I ? -1.0 / a : 1.0 / a;
  const double K = 1.0 / (a * a);
  const double laplacian_H = 0.0;
  const double c0 = params.c0;
  return 2.0 * laplacian_H + (2.0 * H - c0) * (2.0 * H * H - 2.0 * K + c0 * H) + params.p_bar -
         2.0 * params.lambda_bar * H;
}

double sphere_pressure(double a, double c0, double lambda_bar, Orientation orientation) {
  if (!(a > 0.0)) throw NonpositiveRadius("sphere radius must be positive");
  const double b = c0 * c0 + 2.0 * lambda_bar;
  const double linear = orientation == Orientation::I ? b * a : -b * a;
  return -(linear + 2.0 * c0) / (a * a);
}

std::vector<double> sphere_solve(const MembraneParams& params, Orientation orientation) {
  params.validate();
  const double A = params.p_bar;
  const double b = params.c0 * params.c0 + 2.0 * params.lambda_bar;
  const double B = orientation == Orientation::I ? b : -b;
  const double C = 2.0 * params.c0;
  if (A == 0.0 && B == 0.0 && C == 0.0) {
    throw IdenticallyZero("sphere constraint is 0 = 0: every radius is an equilibrium");
  }
  std::vector<double> roots;
  if (A == 0.0) {
    if (B != 0.0) roots.push_back(-C / B);
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc == 0.0) {
      roots.push_back(-B / (2.0 * A));
    } else if (disc > 0.0) {
      const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
      if (q != 0.0) {
        roots.push_back(q / A);
        roots.push_back(C / q);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  std::erase_if(roots, [](double x) { return !(x > 0.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

SignConvention select_sign_convention() {
  const MembraneParams params{1.0, 0.7, -0.4, 1.3};
  const double epsilons[] = {0.3, 0.6, 0.9, 1.3};
  bool agrees[2] = {true, true};
  const SignConvention candidates[2] = {SignConvention::plus, SignConvention::minus};
  for (double eps : epsilons) {
    const CassiniProfile profile(eps);
    for (double r : chebyshev_grid(profile.domain(), 5, 0.1)) {
      const double u_form = residual_u_form(profile, params, r);
      for (int i = 0; i < 2; ++i) {
        const double psi_form = residual_psi_form(profile, params, r, candidates[i]);
        if (std::abs(psi_form - u_form) > 1e-8 * (1.0 + std::abs(u_form))) agrees[i] = false;
      }
    }
  }
  if (agrees[0] == agrees[1]) throw Error("sign convention harness could not single out a convention");
  return agrees[0] ? SignConvention::plus : SignConvention::minus;
}

SignConvention resolved_sign_convention() {
  static const SignConvention resolved = select_sign_convention();
  return resolved;
}

}  // namespace helfrich
