#pragma once

// Axisymmetric profile curves z(r) and pointwise curvature quantities.
//
// A profile is evaluated in the radial parameter r only; the tangent angle is
// psi = sigma * arctan(u) with u = dz/dr and sigma a fixed sign convention.

#include <optional>
#include <string>
#include <vector>

#include "helfrich/errors.hpp"

namespace helfrich {

/// Sign relating the tangent angle to the slope: psi = sigma * arctan(dz/dr).
enum class SignConvention : int { plus = 1, minus = -1 };

inline double sigma(SignConvention s) { return static_cast<double>(static_cast<int>(s)); }
std::string to_string(SignConvention s);

enum class ProfileBranch : int { upper = 1, lower = -1 };

/// Open radial interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double r) const { return r > lo && r < hi; }
};

/// Slope u = dz/dr and its first two radial derivatives (upper branch).
struct SlopeJet {
  double u = 0.0;
  double du = 0.0;
  double d2u = 0.0;
};

/// Abstract axisymmetric profile. All evaluation is for the upper branch;
/// the lower branch is the mirror image z -> -z.
class ProfileCurve {
 public:
  virtual ~ProfileCurve() = default;

  virtual Interval domain() const = 0;
  /// True when the domain starts at the axis r = 0 and the profile crosses it
  /// smoothly with u(0) = 0, so axis limits of 1/r terms exist.
  virtual bool axis_regular() const = 0;
  /// Vertical tangent (|u| -> infinity) at the corresponding domain end.
  virtual bool vertical_at_lo() const = 0;
  virtual bool vertical_at_hi() const = 0;

  virtual double z(double r) const = 0;
  virtual SlopeJet slope(double r) const = 0;
  /// u''' where the profile can supply it exactly.
  virtual std::optional<double> third_derivative(double /*r*/) const { return std::nullopt; }
  /// Interior radii where derivatives of u may jump.
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::string name() const = 0;

  double z(double r, ProfileBranch b) const { return static_cast<int>(b) * z(r); }
};

/// Cassini oval rescaled so that z(r)^2 = sqrt(4 eps^2 r^2 + 1) - eps^2 - r^2.
class CassiniOval {
 public:
  explicit CassiniOval(double epsilon);

  double epsilon() const { return epsilon_; }
  /// e = 1 / eps (infinite for the circle).
  double eccentricity() const;
  Interval domain() const;
  double r_max() const;

 private:
  double epsilon_;
};

/// Radial domain of the Cassini oval: (0, sqrt(1+eps^2)) for eps < 1,
/// (sqrt(eps^2-1), sqrt(1+eps^2)) for eps >= 1. The axis end is a limit point.
Interval domain_of(double epsilon);

double cassini_z(double r, double epsilon, ProfileBranch branch = ProfileBranch::upper);
/// Upper-branch slope r (2 eps^2 - s) / (s t) with s = sqrt(1+4eps^2r^2), t = sqrt(s-eps^2-r^2).
double cassini_u(double r, double epsilon);

struct SlopeDerivatives {
  double du = 0.0;
  double d2u = 0.0;
};
SlopeDerivatives cassini_u1_u2(double r, double epsilon);

class CassiniProfile : public ProfileCurve {
 public:
  explicit CassiniProfile(double epsilon) : oval_(epsilon) {}

  const CassiniOval& oval() const { return oval_; }
  double epsilon() const { return oval_.epsilon(); }

  Interval domain() const override { return oval_.domain(); }
  bool axis_regular() const override { return oval_.epsilon() < 1.0; }
  bool vertical_at_lo() const override { return oval_.epsilon() > 1.0; }
  bool vertical_at_hi() const override { return true; }
  double z(double r) const override { return cassini_z(r, oval_.epsilon()); }
  SlopeJet slope(double r) const override;
  std::string name() const override;
  using ProfileCurve::z;

 private:
  CassiniOval oval_;
};

/// Sphere of radius a described by its tangent angle, psi = +arcsin(r/a)
/// (orientation I, mean curvature -1/a) or psi = -arcsin(r/a)
/// (orientation II, mean curvature +1/a). The slope follows from the sign
/// convention: u = tan(sigma * psi).
enum class Orientation { I, II };
std::string to_string(Orientation o);

class SphereProfile : public ProfileCurve {
 public:
  SphereProfile(double radius, Orientation orientation, SignConvention convention);

  double radius() const { return radius_; }
  Orientation orientation() const { return orientation_; }

  Interval domain() const override { return {0.0, radius_}; }
  bool axis_regular() const override { return true; }
  bool vertical_at_lo() const override { return false; }
  bool vertical_at_hi() const override { return true; }
  double z(double r) const override;
  SlopeJet slope(double r) const override;
  std::optional<double> third_derivative(double r) const override;
  std::string name() const override;
  using ProfileCurve::z;

 private:
  double radius_;
  Orientation orientation_;
  double slope_sign_;  // u = slope_sign * r / sqrt(a^2 - r^2)
};

/// Tangent angle and curvatures at one radius.
struct CurvaturePoint {
  double r = 0.0;
  double psi = 0.0;
  double dpsi_dr = 0.0;
  double H = 0.0;
  double K = 0.0;

  /// Meridional curvature cos(psi) dpsi/dr.
  double k1() const;
  /// Parallel curvature sin(psi)/r; dpsi/dr on the axis.
  double k2() const;
};

enum class AxisLimit { forbid, allow };

/// Mean curvature -(cos psi psi' + sin psi / r)/2.
double mean_curvature(double psi, double dpsi_dr, double r);
/// Gaussian curvature cos psi sin psi psi' / r.
double gaussian_curvature(double psi, double dpsi_dr, double r);

/// Tangent-angle derivatives implied by the slope derivatives under sigma.
struct AngleJet {
  double psi = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  std::optional<double> d3;
};
AngleJet angle_jet(const SlopeJet& s, std::optional<double> d3u, SignConvention convention);

CurvaturePoint curvature_point(const ProfileCurve& profile, double r, SignConvention convention,
                               AxisLimit axis = AxisLimit::forbid);

}  // namespace helfrich
