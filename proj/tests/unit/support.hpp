#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <doctest.h>

namespace testing {

/// doctest's --rand-seed=N selects the stream of every randomized test; 0 keeps the fixed default.
inline std::uint64_t seed() {
  const auto* opts = doctest::getContextOptions();
  return opts && opts->rand_seed != 0 ? opts->rand_seed : 20261019u;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ull)); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// |a - b| <= tol * max(|b|, floor).
inline bool close(double a, double b, double tol, double floor = 0.0) {
  return std::abs(a - b) <= tol * std::max(std::abs(b), floor);
}

/// Five-point central difference of f at x.
template <class F>
double fd1(F&& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

/// Plain centered differences, as stated for the profile interface.
template <class F>
double cd1(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
template <class F>
double cd2(F&& f, double x, double h) {
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

}  // namespace testing
