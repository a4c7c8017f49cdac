#pragma once

// Sparse multivariate polynomials with exact rational coefficients over the
// fixed variable set (r, eps, c0, P, L), stored in graded-lexicographic order.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace helfrich::algebra {

enum class Var : int { r = 0, eps = 1, c0 = 2, P = 3, L = 4 };
inline constexpr int kNumVars = 5;
const char* var_name(Var v);

struct Monomial {
  std::array<std::uint16_t, kNumVars> exp{};

  static Monomial of(Var v, unsigned power = 1);
  unsigned total() const;
  unsigned degree(Var v) const { return exp[static_cast<int>(v)]; }
  bool divides(const Monomial& other) const;
  bool is_one() const { return total() == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires a.divides(b) reversed: computes b / a when a | b.
  friend Monomial operator/(const Monomial& b, const Monomial& a);
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Orders monomials by total degree, ties broken lexicographically with
/// r > eps > c0 > P > L; "greater" sorts the leading term first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class MPoly {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexGreater>;

  MPoly() = default;
  MPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(mpq_class(c)) {}  // NOLINT(google-explicit-constructor)
  static MPoly variable(Var v);
  static MPoly term(const mpq_class& c, const Monomial& m);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; requires is_constant().
  mpq_class constant_value() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const mpq_class& leading_coefficient() const { return terms_.begin()->second; }
  unsigned degree(Var v) const;
  /// Coefficient of m (zero when absent).
  mpq_class coefficient(const Monomial& m) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const mpq_class& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) { return a *= mpq_class(-1); }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const mpq_class& c) { return a *= c; }
  friend MPoly operator*(const mpq_class& c, MPoly a) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(unsigned n) const;
  MPoly derivative(Var v) const;
  MPoly times_monomial(const Monomial& m) const;

  /// Quotient when `divisor` divides *this exactly, otherwise nullopt.
  std::optional<MPoly> divide_exact(const MPoly& divisor) const;

  /// Replaces v by `value` everywhere.
  MPoly substitute(Var v, const MPoly& value) const;
  /// Coefficient of v^k, as a polynomial free of v.
  MPoly coefficient_of(Var v, unsigned k) const;
  /// Divides out the leading coefficient; returns the factor removed.
  mpq_class make_monic();

  mpq_class evaluate(const std::array<mpq_class, kNumVars>& point) const;
  long double evaluate(const std::array<long double, kNumVars>& point) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  Terms terms_;
};

}  // namespace helfrich::algebra
