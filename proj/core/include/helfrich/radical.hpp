#pragma once

// Exact arithmetic in the radical tower over Q(r, eps, c0, P, L) generated by
//   s = sqrt(1 + 4 eps^2 r^2),  t = sqrt(s - eps^2 - r^2),  w = sqrt(s - eps^2).
// Elements are kept fully reduced in the basis s^i t^j w^k, i, j, k in {0, 1},
// with rational-function coefficients whose denominators are radical-free.

#include <array>
#include <utility>
#include <vector>

#include "helfrich/mpoly.hpp"

namespace helfrich::algebra {

/// Quotient num / prod(atom_i ^ e_i). Atoms are monic polynomials; common
/// atoms are cancelled against the numerator on every operation.
class RatFunc {
 public:
  struct Factor {
    MPoly atom;
    unsigned power = 0;
  };

  RatFunc() = default;
  RatFunc(MPoly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c) {}                   // NOLINT(google-explicit-constructor)
  RatFunc(const mpq_class& c) : num_(c) {}       // NOLINT(google-explicit-constructor)

  const MPoly& numerator() const { return num_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  MPoly denominator() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(RatFunc a) {
    a.num_ *= mpq_class(-1);
    return a;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(RatFunc a, const mpq_class& c) {
    a.num_ *= c;
    return a;
  }
  RatFunc inverse() const;
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

  static RatFunc sum(const std::vector<RatFunc>& parts);

  RatFunc derivative(Var v) const;
  RatFunc substitute(Var v, const mpq_class& value) const;
  /// Exact value at a rational point; throws std::domain_error on a zero denominator.
  mpq_class evaluate(const std::array<mpq_class, kNumVars>& point) const;

 private:
  void normalize();
  void divide_by_polynomial(MPoly p, unsigned power);

  MPoly num_;
  std::vector<Factor> den_;
};

/// Basis index: bit 0 = s, bit 1 = t, bit 2 = w.
inline constexpr int kS = 1;
inline constexpr int kT = 2;
inline constexpr int kW = 4;
inline constexpr int kBasisSize = 8;

class RadExpr {
 public:
  RadExpr() = default;
  RadExpr(RatFunc c) { c_[0] = std::move(c); }  // NOLINT(google-explicit-constructor)
  RadExpr(MPoly c) { c_[0] = RatFunc(std::move(c)); }  // NOLINT(google-explicit-constructor)
  RadExpr(long c) { c_[0] = RatFunc(c); }  // NOLINT(google-explicit-constructor)

  static RadExpr s();
  static RadExpr t();
  static RadExpr w();
  static RadExpr variable(Var v) { return RadExpr(MPoly::variable(v)); }

  const RatFunc& operator[](int basis) const { return c_[static_cast<std::size_t>(basis)]; }
  RatFunc& operator[](int basis) { return c_[static_cast<std::size_t>(basis)]; }
  bool is_zero() const;
  /// True when every component carrying the radical t vanishes.
  bool t_free() const;

  friend RadExpr operator+(const RadExpr& a, const RadExpr& b);
  friend RadExpr operator-(const RadExpr& a, const RadExpr& b);
  friend RadExpr operator-(const RadExpr& a);
  friend RadExpr operator*(const RadExpr& a, const RadExpr& b);
  friend RadExpr operator*(const RadExpr& a, const RatFunc& c);
  friend RadExpr operator*(const RatFunc& c, const RadExpr& a) { return a * c; }
  friend bool operator==(const RadExpr& a, const RadExpr& b) { return (a - b).is_zero(); }

  RadExpr pow(unsigned n) const;
  /// Flips the sign of the components containing the given radical bit.
  RadExpr conjugate(int radical_bit) const;
  /// Multiplicative inverse by successive conjugation in t, w, then s.
  RadExpr inverse() const;

  /// Numeric value with the principal (positive) roots s, t, w at the point.
  long double evaluate(const std::array<mpq_class, kNumVars>& point) const;
  long double evaluate(double r, double eps, double c0 = 0.0, double P = 0.0, double L = 0.0) const;

 private:
  std::array<RatFunc, kBasisSize> c_{};
};

/// Radical-free polynomials the radicals square to.
MPoly s_squared();  // 1 + 4 eps^2 r^2
RadExpr t_squared();  // s - eps^2 - r^2
RadExpr w_squared();  // s - eps^2

/// Exact d/dr in the tower (ds/dr = 4 eps^2 r / s, dt/dr = (ds/dr - 2r) / (2t), dw/dr = (ds/dr) / (2w)).
RatFunc differentiate(const RatFunc& x);
RadExpr differentiate(const RadExpr& x);

}  // namespace helfrich::algebra
