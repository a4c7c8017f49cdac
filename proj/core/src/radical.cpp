#include "helfrich/radical.hpp"

#include <cmath>
#include <stdexcept>

namespace helfrich::algebra {

namespace {

MPoly r_poly() { return MPoly::variable(Var::r); }
MPoly eps_poly() { return MPoly::variable(Var::eps); }

MPoly monic(MPoly p) {
  p.make_monic();
  return p;
}

// Irreducible factors that denominators in the tower are built from.
const std::vector<MPoly>& known_atoms() {
  static const std::vector<MPoly> atoms = [] {
    const MPoly r = r_poly(), e = eps_poly();
    const MPoly r2 = r * r, e2 = e * e;
    return std::vector<MPoly>{
        r,
        e,
        monic(s_squared()),                             // 1 + 4 eps^2 r^2
        monic(MPoly(1) + e2 - r2),                      // r_max^2 - r^2
        monic(MPoly(1) - e2 + r2),                      // r^2 - r_min^2
        monic(s_squared() - e2 * e2),                   // 1 + 4 eps^2 r^2 - eps^4
    };
  }();
  return atoms;
}

MPoly atom_power(const MPoly& atom, unsigned power) { return power == 1 ? atom : atom.pow(power); }

}  // namespace

MPoly s_squared() {
  const MPoly r = r_poly(), e = eps_poly();
  return MPoly(1) + mpq_class(4) * e * e * r * r;
}

RadExpr t_squared() {
  const MPoly r = r_poly(), e = eps_poly();
  RadExpr x(-(e * e) - r * r);
  x[kS] = RatFunc(1);
  return x;
}

RadExpr w_squared() {
  const MPoly e = eps_poly();
  RadExpr x(-(e * e));
  x[kS] = RatFunc(1);
  return x;
}

// ---------------------------------------------------------------------------
// RatFunc

MPoly RatFunc::denominator() const {
  MPoly d(1);
  for (const auto& f : den_) d = d * atom_power(f.atom, f.power);
  return d;
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    while (f.power > 0) {
      auto q = num_.divide_exact(f.atom);
      if (!q) break;
      num_ = std::move(*q);
      --f.power;
    }
  }
  std::erase_if(den_, [](const Factor& f) { return f.power == 0; });
}

void RatFunc::divide_by_polynomial(MPoly p, unsigned power) {
  if (p.is_zero()) throw std::domain_error("rational function with a zero denominator");
  auto add_factor = [this](const MPoly& atom, unsigned pw) {
    for (auto& f : den_) {
      if (f.atom == atom) {
        f.power += pw;
        return;
      }
    }
    den_.push_back({atom, pw});
  };
  auto split_off = [&](const MPoly& atom) {
    while (!p.is_constant()) {
      auto q = p.divide_exact(atom);
      if (!q) break;
      p = std::move(*q);
      add_factor(atom, power);
    }
  };
  for (const auto& atom : known_atoms()) split_off(atom);
  for (std::size_t i = 0; i < den_.size(); ++i) {
    const MPoly atom = den_[i].atom;
    split_off(atom);
  }
  const mpq_class lc = p.make_monic();
  mpq_class scale = 1;
  for (unsigned i = 0; i < power; ++i) scale *= lc;
  num_ *= 1 / scale;
  if (!p.is_constant()) add_factor(p, power);
  normalize();
}

namespace {

unsigned power_of(const std::vector<RatFunc::Factor>& den, const MPoly& atom) {
  for (const auto& f : den)
    if (f.atom == atom) return f.power;
  return 0;
}

}  // namespace

RatFunc RatFunc::sum(const std::vector<RatFunc>& parts) {
  RatFunc out;
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    for (const auto& f : p.den_) {
      bool found = false;
      for (auto& g : out.den_) {
        if (g.atom == f.atom) {
          g.power = std::max(g.power, f.power);
          found = true;
          break;
        }
      }
      if (!found) out.den_.push_back(f);
    }
  }
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    MPoly scaled = p.num_;
    for (const auto& g : out.den_) {
      const unsigned missing = g.power - power_of(p.den_, g.atom);
      if (missing > 0) scaled = scaled * atom_power(g.atom, missing);
    }
    out.num_ += scaled;
  }
  out.normalize();
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return RatFunc::sum({a, b}); }

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return RatFunc::sum({a, -b}); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatFunc out;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_;
  for (const auto& f : b.den_) {
    bool found = false;
    for (auto& g : out.den_) {
      if (g.atom == f.atom) {
        g.power += f.power;
        found = true;
        break;
      }
    }
    if (!found) out.den_.push_back(f);
  }
  out.normalize();
  return out;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero rational function");
  RatFunc out(denominator());
  out.divide_by_polynomial(num_, 1);
  return out;
}

RatFunc RatFunc::derivative(Var v) const {
  if (den_.empty()) return RatFunc(num_.derivative(v));
  // d(N / prod a_i^e_i) = (N' prod a_i - N sum e_i a_i' prod_{j != i} a_j) / (prod a_i^(e_i + 1))
  MPoly all(1);
  for (const auto& f : den_) all = all * f.atom;
  MPoly numer = num_.derivative(v) * all;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    MPoly others(1);
    for (std::size_t j = 0; j < den_.size(); ++j)
      if (j != i) others = others * den_[j].atom;
    numer -= num_ * den_[i].atom.derivative(v) * others * mpq_class(den_[i].power);
  }
  RatFunc out;
  out.num_ = std::move(numer);
  out.den_ = den_;
  for (auto& f : out.den_) ++f.power;
  out.normalize();
  return out;
}

RatFunc RatFunc::substitute(Var v, const mpq_class& value) const {
  RatFunc out(num_.substitute(v, MPoly(value)));
  for (const auto& f : den_) out.divide_by_polynomial(f.atom.substitute(v, MPoly(value)), f.power);
  return out;
}

mpq_class RatFunc::evaluate(const std::array<mpq_class, kNumVars>& point) const {
  mpq_class d = 1;
  for (const auto& f : den_) {
    const mpq_class a = f.atom.evaluate(point);
    for (unsigned i = 0; i < f.power; ++i) d *= a;
  }
  if (d == 0) throw std::domain_error("rational function evaluated on a pole");
  return num_.evaluate(point) / d;
}

// ---------------------------------------------------------------------------
// RadExpr

namespace {

using PolyVec = std::array<MPoly, kBasisSize>;

// v * (p0 + p1 s) for a polynomial-coefficient vector v.
PolyVec times_one_plus_s(const PolyVec& v, const MPoly& p0, const MPoly& p1) {
  PolyVec out{};
  const MPoly ss = s_squared();
  for (int k = 0; k < kBasisSize; ++k) {
    if (v[k].is_zero()) continue;
    out[k] += p0 * v[k];
    if (k & kS) {
      out[k & ~kS] += p1 * v[k] * ss;
    } else {
      out[k | kS] += p1 * v[k];
    }
  }
  return out;
}

// table[a][b] = basis_a * basis_b expanded in the basis.
const std::array<std::array<PolyVec, kBasisSize>, kBasisSize>& product_table() {
  static const auto table = [] {
    std::array<std::array<PolyVec, kBasisSize>, kBasisSize> tab{};
    const MPoly r = r_poly(), e = eps_poly();
    for (int a = 0; a < kBasisSize; ++a) {
      for (int b = 0; b < kBasisSize; ++b) {
        PolyVec v{};
        v[a ^ b] = MPoly(1);
        const int common = a & b;
        if (common & kS) {
          for (auto& x : v) x = x * s_squared();
        }
        if (common & kT) v = times_one_plus_s(v, -(e * e) - r * r, MPoly(1));
        if (common & kW) v = times_one_plus_s(v, -(e * e), MPoly(1));
        tab[a][b] = v;
      }
    }
    return tab;
  }();
  return table;
}

RadExpr basis_element(int k) {
  RadExpr x;
  x[k] = RatFunc(1);
  return x;
}

}  // namespace

RadExpr RadExpr::s() { return basis_element(kS); }
RadExpr RadExpr::t() { return basis_element(kT); }
RadExpr RadExpr::w() { return basis_element(kW); }

bool RadExpr::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool RadExpr::t_free() const {
  for (int k = 0; k < kBasisSize; ++k)
    if ((k & kT) && !c_[static_cast<std::size_t>(k)].is_zero()) return false;
  return true;
}

RadExpr operator+(const RadExpr& a, const RadExpr& b) {
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) out[k] = a[k] + b[k];
  return out;
}

RadExpr operator-(const RadExpr& a, const RadExpr& b) {
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) out[k] = a[k] - b[k];
  return out;
}

RadExpr operator-(const RadExpr& a) {
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) out[k] = -a[k];
  return out;
}

RadExpr operator*(const RadExpr& a, const RatFunc& c) {
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) out[k] = a[k] * c;
  return out;
}

RadExpr operator*(const RadExpr& a, const RadExpr& b) {
  const auto& table = product_table();
  std::array<std::vector<RatFunc>, kBasisSize> parts;
  for (int i = 0; i < kBasisSize; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < kBasisSize; ++j) {
      if (b[j].is_zero()) continue;
      const RatFunc prod = a[i] * b[j];
      const PolyVec& expansion = table[i][j];
      for (int k = 0; k < kBasisSize; ++k) {
        if (expansion[k].is_zero()) continue;
        parts[k].push_back(expansion[k].is_constant() ? prod * expansion[k].constant_value()
                                                      : prod * RatFunc(expansion[k]));
      }
    }
  }
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) out[k] = RatFunc::sum(parts[k]);
  return out;
}

RadExpr RadExpr::pow(unsigned n) const {
  RadExpr result(1);
  RadExpr base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

RadExpr RadExpr::conjugate(int radical_bit) const {
  RadExpr out = *this;
  for (int k = 0; k < kBasisSize; ++k)
    if (k & radical_bit) out[k] = -out[k];
  return out;
}

RadExpr RadExpr::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in the radical tower");
  const RadExpr ct = conjugate(kT);
  const RadExpr y = *this * ct;
  const RadExpr cw = y.conjugate(kW);
  const RadExpr z = y * cw;
  const RadExpr cs = z.conjugate(kS);
  const RadExpr n = z * cs;
  for (int k = 1; k < kBasisSize; ++k) {
    if (!n[k].is_zero()) throw std::logic_error("conjugate norm left a radical component");
  }
  if (n[0].is_zero()) throw std::domain_error("element of the radical tower is a zero divisor");
  return ct * cw * cs * n[0].inverse();
}

long double RadExpr::evaluate(const std::array<mpq_class, kNumVars>& point) const {
  const long double r = static_cast<long double>(point[0].get_d());
  const long double e = static_cast<long double>(point[1].get_d());
  const long double s = std::sqrt(1.0L + 4.0L * e * e * r * r);
  const long double t = std::sqrt(s - e * e - r * r);
  const long double w = std::sqrt(s - e * e);
  long double sum = 0.0L;
  for (int k = 0; k < kBasisSize; ++k) {
    if (c_[static_cast<std::size_t>(k)].is_zero()) continue;
    long double term = static_cast<long double>(c_[static_cast<std::size_t>(k)].evaluate(point).get_d());
    if (k & kS) term *= s;
    if (k & kT) term *= t;
    if (k & kW) term *= w;
    sum += term;
  }
  return sum;
}

long double RadExpr::evaluate(double r, double eps, double c0, double P, double L) const {
  return evaluate({mpq_class(r), mpq_class(eps), mpq_class(c0), mpq_class(P), mpq_class(L)});
}

// ---------------------------------------------------------------------------
// Differentiation

RatFunc differentiate(const RatFunc& x) { return x.derivative(Var::r); }

namespace {

struct RadicalDerivatives {
  RadExpr ds, dt, dw;
  std::array<RadExpr, kBasisSize> dbasis;
};

const RadicalDerivatives& radical_derivatives() {
  static const RadicalDerivatives d = [] {
    RadicalDerivatives out;
    const MPoly r = r_poly(), e = eps_poly();
    // ds/dr = 4 eps^2 r / s = 4 eps^2 r s / (1 + 4 eps^2 r^2)
    RadExpr ds;
    ds[kS] = RatFunc(mpq_class(4) * e * e * r) * RatFunc(s_squared()).inverse();
    out.ds = ds;
    out.dt = (ds - RadExpr(mpq_class(2) * r)) * (RadExpr(2) * RadExpr::t()).inverse();
    out.dw = ds * (RadExpr(2) * RadExpr::w()).inverse();
    for (int k = 0; k < kBasisSize; ++k) {
      RadExpr acc;
      if (k & kS) acc = acc + out.ds * basis_element(k & ~kS);
      if (k & kT) acc = acc + out.dt * basis_element(k & ~kT);
      if (k & kW) acc = acc + out.dw * basis_element(k & ~kW);
      out.dbasis[static_cast<std::size_t>(k)] = acc;
    }
    return out;
  }();
  return d;
}

}  // namespace

RadExpr differentiate(const RadExpr& x) {
  const auto& rd = radical_derivatives();
  RadExpr out;
  for (int k = 0; k < kBasisSize; ++k) {
    if (x[k].is_zero()) continue;
    RadExpr term;
    term[k] = differentiate(x[k]);
    if (k != 0) term = term + rd.dbasis[static_cast<std::size_t>(k)] * x[k];
    out = out + term;
  }
  return out;
}

}  // namespace helfrich::algebra
