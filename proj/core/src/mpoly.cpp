#include "helfrich/mpoly.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace helfrich::algebra {

const char* var_name(Var v) {
  static constexpr const char* names[kNumVars] = {"r", "eps", "c0", "P", "L"};
  return names[static_cast<int>(v)];
}

Monomial Monomial::of(Var v, unsigned power) {
  Monomial m;
  m.exp[static_cast<int>(v)] = static_cast<std::uint16_t>(power);
  return m;
}

unsigned Monomial::total() const {
  unsigned t = 0;
  for (auto e : exp) t += e;
  return t;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kNumVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kNumVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  return m;
}

Monomial operator/(const Monomial& b, const Monomial& a) {
  Monomial m;
  for (int i = 0; i < kNumVars; ++i) m.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  return m;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned ta = a.total(), tb = b.total();
  if (ta != tb) return ta > tb;
  return a.exp > b.exp;
}

MPoly::MPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::variable(Var v) { return term(1, Monomial::of(v)); }

MPoly MPoly::term(const mpq_class& c, const Monomial& m) {
  MPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

mpq_class MPoly::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value of a non-constant polynomial");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

unsigned MPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

mpq_class MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly& MPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  MPoly out;
  mpq_class prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      auto [it, inserted] = out.terms_.try_emplace(ma * mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result(1);
  MPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::derivative(Var v) const {
  MPoly out;
  const int i = static_cast<int>(v);
  for (const auto& [m, c] : terms_) {
    if (m.exp[i] == 0) continue;
    Monomial d = m;
    d.exp[i] = static_cast<std::uint16_t>(d.exp[i] - 1);
    out.add_term(d, c * m.exp[i]);
  }
  return out;
}

MPoly MPoly::times_monomial(const Monomial& m) const {
  MPoly out;
  for (const auto& [mm, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm * m, c);
  return out;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  MPoly rem = *this;
  MPoly quot;
  const Monomial& lm = divisor.leading_monomial();
  const mpq_class& lc = divisor.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    const Monomial qm = rm / lm;
    const mpq_class qc = rem.leading_coefficient() / lc;
    quot.add_term(qm, qc);
    for (const auto& [m, c] : divisor.terms_) rem.add_term(m * qm, -qc * c);
  }
  return quot;
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
  const int i = static_cast<int>(v);
  std::vector<MPoly> powers{MPoly(1)};
  MPoly out;
  for (const auto& [m, c] : terms_) {
    const unsigned k = m.exp[i];
    while (powers.size() <= k) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest.exp[i] = 0;
    out += (powers[k] * c).times_monomial(rest);
  }
  return out;
}

MPoly MPoly::coefficient_of(Var v, unsigned k) const {
  const int i = static_cast<int>(v);
  MPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.exp[i] != k) continue;
    Monomial rest = m;
    rest.exp[i] = 0;
    out.add_term(rest, c);
  }
  return out;
}

mpq_class MPoly::make_monic() {
  if (is_zero()) return 1;
  const mpq_class lc = leading_coefficient();
  const mpq_class inv = 1 / lc;
  for (auto& [m, c] : terms_) c *= inv;
  return lc;
}

mpq_class MPoly::evaluate(const std::array<mpq_class, kNumVars>& point) const {
  // Evaluate numerators over a common denominator per variable to avoid
  // repeated canonicalization.
  std::array<std::vector<mpz_class>, kNumVars> num_pow, den_pow;
  std::array<unsigned, kNumVars> max_deg{};
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kNumVars; ++i) max_deg[i] = std::max<unsigned>(max_deg[i], m.exp[i]);
  for (int i = 0; i < kNumVars; ++i) {
    num_pow[i].assign(max_deg[i] + 1, 1);
    den_pow[i].assign(max_deg[i] + 1, 1);
    for (unsigned k = 1; k <= max_deg[i]; ++k) {
      num_pow[i][k] = num_pow[i][k - 1] * point[i].get_num();
      den_pow[i][k] = den_pow[i][k - 1] * point[i].get_den();
    }
  }
  mpq_class sum = 0;
  mpz_class term_num, scale;
  for (const auto& [m, c] : terms_) {
    term_num = c.get_num();
    scale = c.get_den();
    for (int i = 0; i < kNumVars; ++i) {
      const unsigned e = m.exp[i];
      term_num *= num_pow[i][e] * den_pow[i][max_deg[i] - e];
    }
    // Every term now sits over den_prod * c.den.
    mpq_class t(term_num, scale);
    t.canonicalize();
    sum += t;
  }
  mpz_class den_prod = 1;
  for (int i = 0; i < kNumVars; ++i) den_prod *= den_pow[i][max_deg[i]];
  sum /= den_prod;
  sum.canonicalize();
  return sum;
}

long double MPoly::evaluate(const std::array<long double, kNumVars>& point) const {
  long double sum = 0.0L;
  for (const auto& [m, c] : terms_) {
    long double t = static_cast<long double>(c.get_d());
    for (int i = 0; i < kNumVars; ++i)
      for (unsigned k = 0; k < m.exp[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || m.is_one()) {
      os << mag.get_str();
      need_star = true;
    }
    for (int i = 0; i < kNumVars; ++i) {
      if (m.exp[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(static_cast<Var>(i));
      if (m.exp[i] > 1) os << "^" << m.exp[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace helfrich::algebra
