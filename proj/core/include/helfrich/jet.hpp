#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace helfrich {

/// Truncated derivative jet: d[k] holds the k-th derivative of a scalar
/// function of one variable at a point, k = 0..N.
template <std::size_t N>
struct Jet {
  std::array<double, N + 1> d{};

  static Jet constant(double c) {
    Jet j;
    j.d[0] = c;
    return j;
  }

  static Jet variable(double x) {
    Jet j;
    j.d[0] = x;
    if constexpr (N >= 1) j.d[1] = 1.0;
    return j;
  }

  double operator[](std::size_t k) const { return d[k]; }

  friend Jet operator+(Jet a, const Jet& b) {
    for (std::size_t k = 0; k <= N; ++k) a.d[k] += b.d[k];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (std::size_t k = 0; k <= N; ++k) a.d[k] -= b.d[k];
    return a;
  }
  friend Jet operator-(Jet a) {
    for (auto& v : a.d) v = -v;
    return a;
  }
  friend Jet operator+(Jet a, double c) {
    a.d[0] += c;
    return a;
  }
  friend Jet operator+(double c, Jet a) { return a + c; }
  friend Jet operator-(Jet a, double c) {
    a.d[0] -= c;
    return a;
  }
  friend Jet operator-(double c, const Jet& a) { return -a + c; }
  friend Jet operator*(Jet a, double c) {
    for (auto& v : a.d) v *= c;
    return a;
  }
  friend Jet operator*(double c, Jet a) { return a * c; }

  // Leibniz rule.
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (std::size_t n = 0; n <= N; ++n) {
      double acc = 0.0;
      for (std::size_t k = 0; k <= n; ++k) acc += binomial(n, k) * a.d[k] * b.d[n - k];
      out.d[n] = acc;
    }
    return out;
  }

  friend Jet operator/(const Jet& f, const Jet& g) {
    Jet h;
    for (std::size_t n = 0; n <= N; ++n) {
      double acc = f.d[n];
      for (std::size_t k = 0; k < n; ++k) acc -= binomial(n, k) * h.d[k] * g.d[n - k];
      h.d[n] = acc / g.d[0];
    }
    return h;
  }

  friend Jet sqrt(const Jet& f) {
    Jet h;
    h.d[0] = std::sqrt(f.d[0]);
    for (std::size_t n = 1; n <= N; ++n) {
      double acc = f.d[n];
      for (std::size_t k = 1; k < n; ++k) acc -= binomial(n, k) * h.d[k] * h.d[n - k];
      h.d[n] = acc / (2.0 * h.d[0]);
    }
    return h;
  }

  static constexpr double binomial(std::size_t n, std::size_t k) {
    double b = 1.0;
    for (std::size_t i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
    return b;
  }
};

}  // namespace helfrich
