#include <cmath>

#include "helfrich/geometry.hpp"
#include "helfrich/radical.hpp"
#include "helfrich/residual.hpp"
#include "helfrich/theorem.hpp"
#include "support.hpp"

using namespace helfrich;
using namespace helfrich::algebra;
using testing::close;

namespace {

const MPoly R = MPoly::variable(Var::r);
const MPoly E = MPoly::variable(Var::eps);

MPoly random_poly(std::mt19937_64& g, int max_terms = 3, int max_deg = 2) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), coef(-5, 5), var(0, 2);
  MPoly p;
  const int n = nterms(g);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    m.exp[0] = static_cast<std::uint16_t>(deg(g));
    m.exp[1] = static_cast<std::uint16_t>(deg(g));
    if (var(g) == 0) m.exp[2] = 1;
    mpq_class c(coef(g), 1 + std::abs(coef(g)));
    c.canonicalize();
    p += MPoly::term(c, m);
  }
  return p;
}

RadExpr random_rad(std::mt19937_64& g, bool with_denominators = true, int max_terms = 3) {
  std::bernoulli_distribution on(0.4), denom(0.3);
  RadExpr x;
  for (int b = 0; b < kBasisSize; ++b) {
    if (!on(g)) continue;
    RatFunc c(random_poly(g, max_terms));
    if (with_denominators && denom(g)) c = c / RatFunc(s_squared());
    x[b] = c;
  }
  return x;
}

std::array<mpq_class, kNumVars> rational_point(double r, double eps, double c0 = 0, double P = 0, double L = 0) {
  return {mpq_class(r), mpq_class(eps), mpq_class(c0), mpq_class(P), mpq_class(L)};
}

bool structurally_equal(const RadExpr& a, const RadExpr& b) {
  for (int k = 0; k < kBasisSize; ++k) {
    if (!(a[k].numerator() == b[k].numerator())) return false;
    if (!(a[k].denominator() == b[k].denominator())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("MPoly arithmetic is exact and canonical") {
  auto g = testing::rng(21);
  for (int i = 0; i < 300; ++i) {
    const MPoly a = random_poly(g, 5, 3), b = random_poly(g, 5, 3), c = random_poly(g, 5, 3);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    const MPoly mixed = a * b - c;
    for (const auto& [m, coef] : mixed.terms()) CHECK(coef != 0);
    if (!b.is_zero()) {
      const auto q = (a * b).divide_exact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
  }
  // graded lex with r > eps > c0 > P > L
  const MPoly p = R * R + E * E * E + MPoly::variable(Var::c0);
  auto it = p.terms().begin();
  CHECK(it->first.degree(Var::eps) == 3);
  ++it;
  CHECK(it->first.degree(Var::r) == 2);
}

TEST_CASE("MPoly helpers") {
  const MPoly p = R * R * E + mpq_class(3) * R * E * E - mpq_class(1, 2);
  CHECK(p.derivative(Var::r) == mpq_class(2) * R * E + mpq_class(3) * E * E);
  CHECK(p.substitute(Var::eps, MPoly(2)) == mpq_class(2) * R * R + mpq_class(12) * R - mpq_class(1, 2));
  CHECK(p.coefficient_of(Var::r, 1) == mpq_class(3) * E * E);
  CHECK(p.degree(Var::r) == 2);
  CHECK(p.evaluate(rational_point(1, 1)) == mpq_class(7, 2));
  CHECK(MPoly(5).is_constant());
  CHECK((R - R).is_zero());
  CHECK_FALSE((R * R - E).divide_exact(R).has_value());
}

TEST_CASE("RadExpr ring laws hold exactly") {
  auto g = testing::rng(22);
  for (int i = 0; i < 1000; ++i) {
    const RadExpr x = random_rad(g), y = random_rad(g), z = random_rad(g);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
  }
}

TEST_CASE("radicals square to their radicands") {
  CHECK(RadExpr::s() * RadExpr::s() == RadExpr(s_squared()));
  CHECK(RadExpr::t() * RadExpr::t() == t_squared());
  CHECK(RadExpr::w() * RadExpr::w() == w_squared());
  CHECK(t_squared() == RadExpr::s() - RadExpr(E * E + R * R));
}

TEST_CASE("reduction is idempotent") {
  auto g = testing::rng(23);
  for (int i = 0; i < 200; ++i) {
    const RadExpr x = random_rad(g) * random_rad(g);
    CHECK(structurally_equal(x * RadExpr(1), x));
    CHECK(structurally_equal(x + RadExpr(), x));
    CHECK(structurally_equal((x * RadExpr(1)) * RadExpr(1), x * RadExpr(1)));
  }
}

TEST_CASE("inverse by conjugation") {
  auto g = testing::rng(24);
  int tested = 0;
  while (tested < 100) {
    // the conjugate norm has eight times the degree; sparse operands keep it small
    const RadExpr x = random_rad(g, true, 1);
    if (x.is_zero()) continue;
    CHECK(x.inverse() * x == RadExpr(1));
    ++tested;
  }
}

TEST_CASE("differentiation") {
  CHECK(differentiate(RadExpr::variable(Var::c0)).is_zero());
  const RatFunc four_e2_r = RatFunc(mpq_class(4) * E * E * R);
  CHECK(differentiate(RadExpr::s()) == RadExpr::s() * (four_e2_r / RatFunc(s_squared())));
  // dt/dr = (ds/dr - 2r) / (2t)
  const RadExpr ds = differentiate(RadExpr::s());
  CHECK(differentiate(RadExpr::t()) == (ds - RadExpr(mpq_class(2) * R)) * (RadExpr(2) * RadExpr::t()).inverse());

  auto g = testing::rng(25);
  for (int i = 0; i < 200; ++i) {
    const RadExpr x = random_rad(g), y = random_rad(g);
    CHECK(differentiate(x * y) == differentiate(x) * y + x * differentiate(y));
  }
}

TEST_CASE("symbolic slope") {
  const RadExpr u = build_u_symbolic();
  CHECK(static_cast<double>(u.evaluate(0.6, 0.0)) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(close(static_cast<double>(u.evaluate(0.5, 0.5)), cassini_u(0.5, 0.5), 1e-13));
  for (int b = 0; b < kBasisSize; ++b)
    if (b & kW) CHECK(u[b].is_zero());

  auto g = testing::rng(26);
  const RadExpr du = differentiate(u);
  for (int i = 0; i < 100; ++i) {
    const double eps = testing::uniform(g, 0.0, 1.5);
    const Interval d = domain_of(eps);
    const double r = testing::uniform(g, d.lo + 0.01 * d.width(), d.hi - 0.01 * d.width());
    CHECK(close(static_cast<double>(u.evaluate(r, eps)), cassini_u(r, eps), 1e-12, 1.0));
    CHECK(close(static_cast<double>(du.evaluate(r, eps)), cassini_u1_u2(r, eps).du, 1e-12, 1.0));
  }
}

TEST_CASE("symbolic residual") {
  const RadExpr h = build_residual_symbolic(true);
  auto g = testing::rng(27);
  for (int i = 0; i < 100; ++i) {
    const double eps = testing::uniform(g, 0.0, 1.5);
    const Interval d = domain_of(eps);
    const double r = testing::uniform(g, d.lo + 0.05 * d.width(), d.hi - 0.05 * d.width());
    const double c0 = testing::uniform(g, -2, 2), L = testing::uniform(g, -2, 2), P = testing::uniform(g, -2, 2);
    const double num = residual_u_form(CassiniProfile(eps), {1, c0, L, P}, r);
    CHECK(close(static_cast<double>(h.evaluate(r, eps, c0, P, L)), num, 1e-11, 1.0));
  }
  CHECK(close(static_cast<double>(build_residual_symbolic(false, {}).evaluate(0.5, 0.5)),
              residual_u_form(CassiniProfile(0.5), {1, 0, 0, 0}, 0.5), 1e-12));

  // degree <= 1 in P and L, and no multiplier in any denominator
  for (int b = 0; b < kBasisSize; ++b) {
    CHECK(h[b].numerator().degree(Var::P) <= 1);
    CHECK(h[b].numerator().degree(Var::L) <= 1);
    CHECK(h[b].denominator().degree(Var::P) == 0);
    CHECK(h[b].denominator().degree(Var::L) == 0);
  }
}

TEST_CASE("Willmore residual on the circle is exactly zero at r = 1/2") {
  // At eps = 0: s = w = 1 and t = sqrt(3)/2 is irrational, so the value A + B t
  // vanishes iff both rational parts vanish.
  const RadExpr h = build_residual_symbolic(false, {});
  const auto point = std::array<mpq_class, kNumVars>{mpq_class(1, 2), 0, 0, 0, 0};
  mpq_class A = 0, B = 0;
  for (int b = 0; b < kBasisSize; ++b) {
    if (h[b].is_zero()) continue;
    (b & kT ? B : A) += h[b].evaluate(point);
  }
  CHECK(A == 0);
  CHECK(B == 0);
}
