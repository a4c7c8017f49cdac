#include "helfrich/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "helfrich/jet.hpp"

namespace helfrich {

namespace {

void check_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    std::ostringstream os;
    os << "epsilon must be finite and >= 0, got " << epsilon;
    throw DomainError(os.str());
  }
}

// |r| must lie in the Cassini domain; the axis r = 0 is admitted for eps < 1.
void check_cassini_radius(double r, double epsilon) {
  check_epsilon(epsilon);
  const Interval d = domain_of(epsilon);
  const double a = std::abs(r);
  const bool axis_ok = epsilon < 1.0 && a == 0.0;
  if (!std::isfinite(r) || !(axis_ok || d.contains(a))) {
    std::ostringstream os;
    os << "r = " << r << " outside the Cassini domain (" << d.lo << ", " << d.hi << ") for epsilon = " << epsilon;
    throw DomainError(os.str());
  }
}

// Radicals s = sqrt(1 + 4 eps^2 r^2) and t = sqrt(s - eps^2 - r^2) as jets in r.
// t^2 is assembled from its factorization
//   s - eps^2 - r^2 = (r_max^2 - r^2)(r^2 - (eps^2 - 1)) / (s + eps^2 + r^2)
// so that it keeps full relative accuracy near both domain ends.
template <std::size_t N>
struct CassiniRadicals {
  Jet<N> s;
  Jet<N> t;
};

template <std::size_t N>
CassiniRadicals<N> cassini_radicals(double r, double epsilon) {
  const double e2 = epsilon * epsilon;
  const Jet<N> x = Jet<N>::variable(r);
  const Jet<N> x2 = x * x;
  const Jet<N> s = sqrt(1.0 + 4.0 * e2 * x2);
  const double r_max = std::sqrt(1.0 + e2);
  const Jet<N> outer = (r_max - x) * (r_max + x);
  Jet<N> inner;
  if (epsilon > 1.0) {
    const double r_min = std::sqrt(e2 - 1.0);
    inner = (x - r_min) * (x + r_min);
  } else {
    inner = x2 + (1.0 - e2);
  }
  const Jet<N> t2 = outer * inner / (s + e2 + x2);
  if (!(t2[0] > 0.0)) {
    std::ostringstream os;
    os << "Cassini radicand not positive at r = " << r << ", epsilon = " << epsilon;
    throw DomainError(os.str());
  }
  return {s, sqrt(t2)};
}

template <std::size_t N>
Jet<N> cassini_slope_jet(double r, double epsilon) {
  check_cassini_radius(r, epsilon);
  const auto [s, t] = cassini_radicals<N>(r, epsilon);
  const Jet<N> x = Jet<N>::variable(r);
  return x * (2.0 * epsilon * epsilon - s) / (s * t);
}

void check_sphere_radius(double r, double radius) {
  if (!std::isfinite(r) || std::abs(r) >= radius) {
    std::ostringstream os;
    os << "r = " << r << " outside the sphere domain [0, " << radius << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

std::string to_string(SignConvention s) { return s == SignConvention::plus ? "+1" : "-1"; }

std::string to_string(Orientation o) { return o == Orientation::I ? "I" : "II"; }

CassiniOval::CassiniOval(double epsilon) : epsilon_(epsilon) { check_epsilon(epsilon); }

double CassiniOval::eccentricity() const {
  return epsilon_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / epsilon_;
}

Interval CassiniOval::domain() const { return domain_of(epsilon_); }

double CassiniOval::r_max() const { return std::sqrt(1.0 + epsilon_ * epsilon_); }

Interval domain_of(double epsilon) {
  check_epsilon(epsilon);
  const double e2 = epsilon * epsilon;
  const double hi = std::sqrt(1.0 + e2);
  const double lo = epsilon < 1.0 ? 0.0 : std::sqrt(e2 - 1.0);
  return {lo, hi};
}

double cassini_z(double r, double epsilon, ProfileBranch branch) {
  check_cassini_radius(r, epsilon);
  const auto rad = cassini_radicals<0>(r, epsilon);
  return static_cast<int>(branch) * rad.t[0];
}

double cassini_u(double r, double epsilon) { return cassini_slope_jet<0>(r, epsilon)[0]; }

SlopeDerivatives cassini_u1_u2(double r, double epsilon) {
  const Jet<2> u = cassini_slope_jet<2>(r, epsilon);
  return {u[1], u[2]};
}

SlopeJet CassiniProfile::slope(double r) const {
  const Jet<2> u = cassini_slope_jet<2>(r, oval_.epsilon());
  return {u[0], u[1], u[2]};
}

std::string CassiniProfile::name() const {
  std::ostringstream os;
  os << "cassini(epsilon=" << oval_.epsilon() << ")";
  return os.str();
}

SphereProfile::SphereProfile(double radius, Orientation orientation, SignConvention convention)
    : radius_(radius), orientation_(orientation) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw NonpositiveRadius("sphere radius must be positive");
  const double o = orientation == Orientation::I ? 1.0 : -1.0;
  slope_sign_ = sigma(convention) * o;
}

double SphereProfile::z(double r) const {
  check_sphere_radius(r, radius_);
  return -slope_sign_ * std::sqrt((radius_ - r) * (radius_ + r));
}

namespace {
Jet<3> sphere_slope_jet(double r, double radius, double slope_sign) {
  const Jet<3> x = Jet<3>::variable(r);
  return slope_sign * x / sqrt((radius - x) * (radius + x));
}
}  // namespace

SlopeJet SphereProfile::slope(double r) const {
  check_sphere_radius(r, radius_);
  const Jet<3> u = sphere_slope_jet(r, radius_, slope_sign_);
  return {u[0], u[1], u[2]};
}

std::optional<double> SphereProfile::third_derivative(double r) const {
  check_sphere_radius(r, radius_);
  return sphere_slope_jet(r, radius_, slope_sign_)[3];
}

std::string SphereProfile::name() const {
  std::ostringstream os;
  os << "sphere(a=" << radius_ << ", orientation=" << to_string(orientation_) << ")";
  return os.str();
}

double CurvaturePoint::k1() const { return std::cos(psi) * dpsi_dr; }

double CurvaturePoint::k2() const { return r == 0.0 ? dpsi_dr : std::sin(psi) / r; }

double mean_curvature(double psi, double dpsi_dr, double r) {
  return -0.5 * (std::cos(psi) * dpsi_dr + std::sin(psi) / r);
}

double gaussian_curvature(double psi, double dpsi_dr, double r) {
  return std::cos(psi) * std::sin(psi) * dpsi_dr / r;
}

AngleJet angle_jet(const SlopeJet& s, std::optional<double> d3u, SignConvention convention) {
  const double sg = sigma(convention);
  const double q = 1.0 + s.u * s.u;
  const double u = s.u, u1 = s.du, u2 = s.d2u;
  AngleJet a;
  a.psi = sg * std::atan(u);
  a.d1 = sg * u1 / q;
  a.d2 = sg * (u2 / q - 2.0 * u * u1 * u1 / (q * q));
  if (d3u) {
    const double u3 = *d3u;
    a.d3 = sg * (u3 / q - (6.0 * u * u1 * u2 + 2.0 * u1 * u1 * u1) / (q * q) +
                 8.0 * u * u * u1 * u1 * u1 / (q * q * q));
  }
  return a;
}

CurvaturePoint curvature_point(const ProfileCurve& profile, double r, SignConvention convention, AxisLimit axis) {
  CurvaturePoint cp;
  cp.r = r;
  if (r == 0.0) {
    if (axis == AxisLimit::forbid) throw SingularAxis("curvature at r = 0 requires the axis limit");
    if (!profile.axis_regular()) throw DomainError(profile.name() + " does not reach the axis regularly");
    const SlopeJet s = profile.slope(0.0);
    const AngleJet a = angle_jet(s, std::nullopt, convention);
    cp.psi = a.psi;
    cp.dpsi_dr = a.d1;
    // sin(psi)/r -> psi'(0) and cos(psi(0)) = 1.
    cp.H = -a.d1;
    cp.K = a.d1 * a.d1;
    return cp;
  }
  if (!profile.domain().contains(r)) {
    std::ostringstream os;
    os << "r = " << r << " outside the open domain of " << profile.name();
    throw DomainError(os.str());
  }
  const AngleJet a = angle_jet(profile.slope(r), std::nullopt, convention);
  cp.psi = a.psi;
  cp.dpsi_dr = a.d1;
  cp.H = mean_curvature(a.psi, a.d1, r);
  cp.K = gaussian_curvature(a.psi, a.d1, r);
  return cp;
}

}  // namespace helfrich
