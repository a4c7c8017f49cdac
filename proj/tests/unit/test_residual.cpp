#include <algorithm>
#include <cmath>

#include "helfrich/residual.hpp"
#include "helfrich/theorem.hpp"
#include "support.hpp"

using namespace helfrich;
using testing::close;

namespace {
constexpr SignConvention kPlus = SignConvention::plus;

// Unit sphere with psi = -arcsin r (H = +1), where (c0, lambda, P) = (1, 1, 1) is an equilibrium.
SphereProfile unit_sphere_II() { return SphereProfile(1.0, Orientation::II, kPlus); }
}  // namespace

TEST_CASE("membrane parameters are validated") {
  CHECK_NOTHROW(MembraneParams{1, 0, 0, 0}.validate());
  CHECK_THROWS_AS((MembraneParams{0, 0, 0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((MembraneParams{1, NAN, 0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((MembraneParams{1, 0, INFINITY, 0}.validate()), DomainError);
}

TEST_CASE("the harness selects sigma = +1") {
  CHECK(select_sign_convention() == SignConvention::plus);
  CHECK(resolved_sign_convention() == SignConvention::plus);
}

TEST_CASE("psi-form examples") {
  const SphereProfile willmore(1.0, Orientation::I, kPlus);
  CHECK(std::abs(residual_psi_form(willmore, {1, 0, 0, 0}, 0.5, kPlus)) < 1e-10);
  CHECK(std::abs(residual_psi_form(unit_sphere_II(), {1, 1, 1, 1}, 0.5, kPlus)) < 1e-10);
  // the same parameters do not balance the other orientation
  CHECK(std::abs(residual_psi_form(willmore, {1, 1, 1, 1}, 0.5, kPlus)) > 0.1);

  const CassiniProfile oval(0.5);
  const double psi = residual_psi_form(oval, {1, 0, 0, 0}, 0.5, kPlus);
  const double u = residual_u_form(oval, {1, 0, 0, 0}, 0.5);
  CHECK(std::abs(psi) > 0.1);
  CHECK(close(psi, u, 1e-8));
}

TEST_CASE("u-form examples") {
  CHECK(std::abs(residual_u_form(CassiniProfile(0.0), {1, 0, 0, 0}, 0.5)) < 1e-10);

  // exact symbolic residual at (r, eps) = (1/2, 1/2)
  const algebra::RadExpr h = algebra::build_residual_symbolic(false, {});
  const std::array<mpq_class, algebra::kNumVars> point{mpq_class(1, 2), mpq_class(1, 2), 0, 0, 0};
  const double exact = static_cast<double>(h.evaluate(point));
  CHECK(close(residual_u_form(CassiniProfile(0.5), {1, 0, 0, 0}, 0.5), exact, 1e-12));

  // affine in (lambda, P)
  const CassiniProfile oval(0.5);
  auto at = [&](double L, double P) { return residual_u_form(oval, {1, 1, L, P}, 0.7); };
  const double recombined = at(0, 0) + (at(2, 0) - at(0, 0)) + (at(0, 3) - at(0, 0));
  CHECK(close(at(2, 3), recombined, 1e-12, 1.0));
}

TEST_CASE("u_form_terms reassemble the residual") {
  auto g = testing::rng(11);
  for (int i = 0; i < 200; ++i) {
    const double eps = testing::uniform(g, 0.0, 1.5);
    const CassiniProfile p(eps);
    const Interval d = p.domain();
    const double r = testing::uniform(g, d.lo + 0.05 * d.width(), d.hi - 0.05 * d.width());
    const MembraneParams mp{1, testing::uniform(g, -3, 3), testing::uniform(g, -3, 3), testing::uniform(g, -3, 3)};
    const double direct = residual_u_form(p, mp, r);
    CHECK(close(u_form_terms(p.slope(r), r).combine(mp), direct, 1e-12, 1.0));
  }
}

TEST_CASE("third-order examples") {
  CHECK(std::abs(residual_third_order(unit_sphere_II(), {1, 1, 1, 1}, 0.5, kPlus).value) < 1e-8);
  const SphereProfile willmore(1.0, Orientation::I, kPlus);
  CHECK(std::abs(residual_third_order(willmore, {1, 0, 0, 0}, 0.3, kPlus).value) < 1e-8);

  // value from the first verified run, analytic u'''
  const ThirdOrderValue v = residual_third_order(SymbolicCassiniProfile(0.5), {1, 0, 0, 0}, 0.5, kPlus);
  CHECK(v.source == DerivativeSource::analytic);
  CHECK(v.value == doctest::Approx(2.5951006153325324).epsilon(1e-12));

  // generic profiles fall back to finite differences with an error estimate
  const ThirdOrderValue fd = residual_third_order(CassiniProfile(0.5), {1, 0, 0, 0}, 0.5, kPlus);
  CHECK(fd.source == DerivativeSource::finite_difference);
  CHECK(std::abs(fd.value - v.value) < 1e-5);
  CHECK(fd.u3_error > 0.0);

  ResidualOptions strict;
  strict.allow_finite_difference = false;
  CHECK_THROWS_AS(residual_third_order(CassiniProfile(0.5), {1, 0, 0, 0}, 0.5, kPlus, strict), DerivativeUnavailable);
}

TEST_CASE("the verbatim third-order variant does not vanish on spheres") {
  ResidualOptions printed;
  printed.variant = ThirdOrderVariant::as_printed;
  const SphereProfile willmore(1.0, Orientation::I, kPlus);
  CHECK(std::abs(residual_third_order(willmore, {1, 0, 0, 0}, 0.3, kPlus, printed).value) > 1e-3);
}

TEST_CASE("residual_report") {
  const ResidualReport sphere = residual_report(unit_sphere_II(), {1, 1, 1, 1}, ResidualForm::psi_form, 64, 0.05, kPlus);
  CHECK(sphere.sup_norm < 1e-9);

  const ResidualReport oval = residual_report(CassiniProfile(0.9), {1, 0, 0, 0}, ResidualForm::u_form, 64, 0.05, kPlus);
  CHECK(oval.sup_norm > 0.1);
  CHECK(oval.grid.size() == 64);
  CHECK(std::is_sorted(oval.grid.begin(), oval.grid.end()));
  CHECK(std::adjacent_find(oval.grid.begin(), oval.grid.end()) == oval.grid.end());
  const Interval d = CassiniProfile(0.9).domain();
  CHECK(oval.grid.front() > d.lo);
  CHECK(oval.grid.back() < d.hi);
  double sup = 0;
  for (double v : oval.residuals) sup = std::max(sup, std::abs(v));
  CHECK(oval.sup_norm == sup);
  CHECK(oval.l2_norm > 0.0);

  CHECK_THROWS_AS(residual_report(CassiniProfile(0.5), {1, 0, 0, 0}, ResidualForm::u_form, 1, 0.05, kPlus), InputError);
  CHECK_THROWS_AS(residual_report(CassiniProfile(0.5), {1, 0, 0, 0}, ResidualForm::u_form, 8, 0.5, kPlus), InputError);
}

TEST_CASE("chebyshev grid lies inside the margined domain") {
  const auto grid = chebyshev_grid({0.0, 2.0}, 5, 0.1);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() > 0.2);
  CHECK(grid.back() < 1.8);
  CHECK(grid[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sphere_el_residual examples") {
  for (Orientation o : {Orientation::I, Orientation::II}) CHECK(sphere_el_residual(1, {1, 0, 0, 0}, o) == 0.0);
  CHECK(std::abs(sphere_el_residual(1, {1, 1, 1, 1}, Orientation::II)) < 1e-15);
  // P a^2 + (c0^2 + 2 lambda) a + 2 c0 = 0 at a = 2, c0 = 1, lambda = 0 gives P = -1
  CHECK(std::abs(sphere_el_residual(2, {1, 1, 0, -1}, Orientation::I)) < 1e-15);
  CHECK_THROWS_AS(sphere_el_residual(0, {1, 0, 0, 0}, Orientation::I), NonpositiveRadius);
  CHECK_THROWS_AS(sphere_el_residual(-1, {1, 0, 0, 0}, Orientation::I), NonpositiveRadius);
}

TEST_CASE("sphere_el_residual is the Euler-Lagrange expression with H = -/+ 1/a") {
  auto g = testing::rng(12);
  for (int i = 0; i < 50; ++i) {
    const double a = testing::uniform(g, 0.2, 5), c0 = testing::uniform(g, -3, 3);
    const double L = testing::uniform(g, -3, 3), P = testing::uniform(g, -3, 3);
    for (Orientation o : {Orientation::I, Orientation::II}) {
      const double H = o == Orientation::I ? -1 / a : 1 / a, K = 1 / (a * a);
      const double el = (2 * H - c0) * (2 * H * H - 2 * K + c0 * H) + P - 2 * L * H;
      CHECK(close(sphere_el_residual(a, {1, c0, L, P}, o), el, 1e-12, 1.0));
    }
  }
}

TEST_CASE("sphere_solve examples") {
  CHECK_THROWS_AS(sphere_solve({1, 0, 0, 0}, Orientation::I), IdenticallyZero);
  const auto roots = sphere_solve({1, 1, 1, 1}, Orientation::II);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sphere_solve({1, 1, 0, 0}, Orientation::I).empty());
  // P = 0, orientation II: -(c0^2) a + 2 c0 = 0 -> a = 2 / c0
  const auto linear = sphere_solve({1, 1, 0, 0}, Orientation::II);
  REQUIRE(linear.size() == 1);
  CHECK(linear[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sphere_pressure balances the sphere") {
  auto g = testing::rng(13);
  for (int i = 0; i < 50; ++i) {
    const double a = testing::uniform(g, 0.2, 5), c0 = testing::uniform(g, -3, 3), L = testing::uniform(g, -3, 3);
    for (Orientation o : {Orientation::I, Orientation::II}) {
      const double P = sphere_pressure(a, c0, L, o);
      CHECK(std::abs(sphere_el_residual(a, {1, c0, L, P}, o)) < 1e-12 * (1 + std::abs(P)));
    }
  }
}

TEST_CASE("sphere psi-form is -r/(2 cos psi) times the Euler-Lagrange residual") {
  for (double a : {0.5, 1.0, 2.0})
    for (Orientation o : {Orientation::I, Orientation::II}) {
      const MembraneParams p{1, 0.7, 0.3, 0.4};
      const SphereProfile s(a, o, kPlus);
      for (double r : {0.2 * a, 0.5 * a, 0.8 * a}) {
        const double cos_psi = std::sqrt(1 - (r / a) * (r / a));
        const double expected = -r / (2 * cos_psi) * sphere_el_residual(a, p, o);
        CHECK(close(residual_psi_form(s, p, r, kPlus), expected, 1e-9, 1.0));
        // the third-order form is the Euler-Lagrange residual itself on spheres
        CHECK(close(residual_third_order(s, p, r, kPlus).value, sphere_el_residual(a, p, o), 1e-9, 1.0));
      }
    }
}

TEST_CASE("cross-form consistency on the Cassini family") {
  auto g = testing::rng(14);
  for (int i = 0; i < 1000; ++i) {
    const double eps = testing::uniform(g, 0.0, 1.5);
    const CassiniProfile p(eps);
    const Interval d = p.domain();
    const double r = testing::uniform(g, d.lo + 0.02 * d.width(), d.hi - 0.02 * d.width());
    const MembraneParams mp{1, testing::uniform(g, -3, 3), testing::uniform(g, -3, 3), testing::uniform(g, -3, 3)};
    const double u = residual_u_form(p, mp, r);
    const double psi = residual_psi_form(p, mp, r, kPlus);
    CHECK(std::abs(psi - u) <= 1e-8 * (1 + std::abs(u)));
  }
}

TEST_CASE("sphere equilibria vanish in all three forms") {
  auto g = testing::rng(15);
  for (int i = 0; i < 100; ++i) {
    const double a = testing::uniform(g, 0.2, 5), c0 = testing::uniform(g, -3, 3), L = testing::uniform(g, -3, 3);
    const Orientation o = i % 2 ? Orientation::I : Orientation::II;
    const MembraneParams p{1, c0, L, sphere_pressure(a, c0, L, o)};
    const SphereProfile s(a, o, kPlus);
    for (ResidualForm f : {ResidualForm::u_form, ResidualForm::psi_form, ResidualForm::third_order})
      CHECK(residual_report(s, p, f, 16, 0.05, kPlus).sup_norm <= 1e-8);
  }
}

TEST_CASE("every form is affine in lambda and P") {
  auto g = testing::rng(16);
  const SymbolicCassiniProfile p(0.6);
  for (int i = 0; i < 20; ++i) {
    const double r = testing::uniform(g, 0.1, 1.0);
    const double c0 = testing::uniform(g, -2, 2);
    for (ResidualForm f : {ResidualForm::u_form, ResidualForm::psi_form, ResidualForm::third_order}) {
      auto at = [&](double L, double P) { return residual_at(p, {1, c0, L, P}, f, r, kPlus); };
      // three collinear points in each multiplier
      CHECK(close(at(1, 0) - at(0, 0), at(2, 0) - at(1, 0), 1e-12, std::abs(at(0, 0)) + 1));
      CHECK(close(at(0, 1) - at(0, 0), at(0, 2) - at(0, 1), 1e-12, std::abs(at(0, 0)) + 1));
    }
  }
}

namespace {
// Slope so steep that cos(psi) is below the vertical-tangent tolerance.
struct SteepProfile : ProfileCurve {
  Interval domain() const override { return {0.0, 1.0}; }
  bool axis_regular() const override { return false; }
  bool vertical_at_lo() const override { return false; }
  bool vertical_at_hi() const override { return false; }
  double z(double r) const override { return 1e14 * r; }
  SlopeJet slope(double) const override { return {1e14, 0.0, 0.0}; }
  std::string name() const override { return "steep"; }
};
}  // namespace

TEST_CASE("psi-form flags vertical tangents") {
  CHECK_THROWS_AS(residual_psi_form(SteepProfile{}, {1, 0, 0, 0}, 0.5, kPlus), VerticalTangent);
  CHECK_THROWS_AS(residual_u_form(CassiniProfile(0.5), {1, 0, 0, 0}, 2.0), DomainError);
}
