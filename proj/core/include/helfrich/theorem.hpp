#pragma once

// Exact verification that no Cassini oval with eps > 0 solves the
// axisymmetric shape equation: symbolic residual, radical clearing, the
// coefficient system of the w-component and the c0 = 0 branch.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "helfrich/geometry.hpp"
#include "helfrich/radical.hpp"

namespace helfrich::algebra {

/// Upper-branch Cassini slope u = r (2 eps^2 - s) / (s t).
RadExpr build_u_symbolic();

/// u and its first three radial derivatives, built once per process.
struct SymbolicSlope {
  RadExpr u, u1, u2, u3;
};
const SymbolicSlope& symbolic_slope();

struct ParamValues {
  mpq_class c0 = 0;
  mpq_class P = 0;
  mpq_class L = 0;
};

/// u-form residual of the Cassini oval with sqrt(1+u^2) replaced by w/(s t).
/// With params_symbolic the multipliers stay as the variables c0, P, L;
/// otherwise they are replaced by `values`.
RadExpr build_residual_symbolic(bool params_symbolic = true, const ParamValues& values = {});

/// Four polynomial components: the cleared residual equals H1 + H2/s + H3 w + H4 w/s.
using HPolynomials = std::array<MPoly, 4>;

struct ClearedResidual {
  /// h (s - eps^2)^3 t^3 reduced in the radical basis.
  RadExpr product;
  HPolynomials H;
};

/// Multiplies by (s - eps^2)^3 t^3 and extracts H1..H4. Throws ResidueInT
/// when a component carrying t survives and std::logic_error when a
/// surviving component is not polynomial after clearing 1/s.
ClearedResidual clear_radicals(const RadExpr& h);

/// Parses lines `Hk; c0^a P^b L^c eps^d r^e; num/den`; `#` starts a comment.
/// Throws InputError on malformed lines.
HPolynomials parse_reference(std::string_view text);
/// Transcribed tables shipped with the library.
std::string_view reference_text();
HPolynomials reference_polynomials();

enum class MismatchKind { sign, value, missing, extra };
std::string to_string(MismatchKind k);

struct TermMismatch {
  int index = 0;  // 0..3 for H1..H4
  Monomial monomial;
  mpq_class computed;
  mpq_class reference;
  MismatchKind kind = MismatchKind::value;
};

struct MatchReport {
  /// computed = scale * reference on matching terms; the most frequent ratio.
  std::optional<mpq_class> scale;
  std::array<std::size_t, 4> matched{};
  std::array<std::size_t, 4> computed_terms{};
  std::array<std::size_t, 4> reference_terms{};
  std::vector<TermMismatch> mismatches;

  bool all_match() const { return scale.has_value() && mismatches.empty(); }
};

MatchReport compare_polynomials(const HPolynomials& computed, const HPolynomials& reference);
MatchReport compare_to_reference(const HPolynomials& computed);

/// Dense univariate polynomial over Q, coefficient i multiplies x^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> coefficients);

  const std::vector<mpq_class>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const mpq_class& leading() const { return c_.back(); }
  UPoly monic() const;
  mpq_class evaluate(const mpq_class& x) const;
  std::string to_string(const std::string& var) const;

  static UPoly remainder(const UPoly& a, const UPoly& b);
  /// Monic greatest common divisor (zero only when both inputs are zero).
  static UPoly gcd(UPoly a, UPoly b);

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Converts p, which must involve only `v`, to a UPoly in v^stride.
UPoly to_univariate(const MPoly& p, Var v, unsigned stride = 1);

/// a + b sqrt(d) with integer d > 1 not a perfect square, or b = 0.
struct Surd {
  mpq_class a = 0;
  mpq_class b = 0;
  mpz_class d = 1;

  int sign() const;
  long double value() const;
  std::string to_string() const;
  friend bool operator==(const Surd&, const Surd&) = default;
};

/// Real roots of a polynomial of degree 1 or 2, ascending.
std::vector<Surd> solve_low_degree(const UPoly& p);

struct H3System {
  /// Coefficients of r^5, r^3, r^1 in H3, in that order.
  std::array<MPoly, 3> equations;
  std::array<unsigned, 3> r_powers{5, 3, 1};
  /// P solved from the first equation (eps > 0).
  MPoly pressure;
  /// Equations two and three after substituting the pressure.
  std::array<MPoly, 2> substituted;
  /// Remaining factor after removing c0 and the largest power of eps, in x = eps^4.
  std::array<UPoly, 2> conditions;
  std::array<std::vector<Surd>, 2> positive_roots;
  UPoly common_factor;
  bool contradiction = false;
};

/// Eliminates P from the H3 coefficient system on the branch eps > 0, c0 != 0.
H3System solve_h3_system(const HPolynomials& H);

struct DegenerateBranch {
  /// c0 = 0 forces P = 0 through the r^5 coefficient of H3.
  bool pressure_forced_zero = false;
  bool h3_vanishes = false;
  bool h4_vanishes = false;
  /// r^7 coefficient of H1 at c0 = P = 0.
  MPoly h1_top;
  bool h1_top_lambda_free = false;
  /// Pairwise compatibility A_i B_j - A_j B_i of the r^1, r^3, r^5 coefficients
  /// A_k + B_k L of H1 at c0 = P = 0, pairs (1,3), (1,5), (3,5).
  std::array<MPoly, 3> compatibility;
  /// Monic gcd of the compatibility polynomials in eps.
  UPoly compatibility_gcd;
  /// The gcd is a power of eps, so no eps > 0 admits a common L.
  bool no_common_lambda = false;
  /// All four components vanish at eps = c0 = P = L = 0.
  bool circle_trivial = false;
  bool closed = false;
};

DegenerateBranch close_degenerate_branches(const HPolynomials& H);

struct TheoremVerdict {
  ClearedResidual cleared;
  bool t_components_vanish = false;
  MatchReport match;
  H3System h3;
  DegenerateBranch degenerate;
  bool contradiction = false;

  std::string verdict() const { return contradiction ? "CONTRADICTION" : "NO_CONTRADICTION"; }
};

/// build -> clear -> compare -> solve -> close branches.
TheoremVerdict verify_theorem();

}  // namespace helfrich::algebra

namespace helfrich {

/// Cassini profile whose u''' comes from the exact symbolic derivative.
class SymbolicCassiniProfile : public CassiniProfile {
 public:
  explicit SymbolicCassiniProfile(double epsilon);

  std::optional<double> third_derivative(double r) const override;
  std::string name() const override;
};

}  // namespace helfrich
