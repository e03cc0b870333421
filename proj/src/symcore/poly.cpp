#include "weylsym/symcore/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace weylsym {

Monomial Monomial::var(SymbolId id, unsigned power) {
  Monomial m;
  return m.with_exponent(id, power);
}

unsigned Monomial::degree_in(std::span<const SymbolId> ids) const {
  unsigned d = 0;
  for (auto id : ids) d += exps_[id.index];
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kSize; ++i) {
    unsigned e = unsigned(exps_[i]) + other.exps_[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    m.exps_[i] = static_cast<std::uint8_t>(e);
  }
  m.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kSize; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial m;
  for (std::size_t i = 0; i < kSize; ++i) {
    if (divisor.exps_[i] > exps_[i]) throw std::domain_error("monomial not divisible");
    m.exps_[i] = static_cast<std::uint8_t>(exps_[i] - divisor.exps_[i]);
  }
  m.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return m;
}

Monomial Monomial::with_exponent(SymbolId id, unsigned power) const {
  if (power > 255) throw std::overflow_error("monomial exponent overflow");
  Monomial m = *this;
  m.degree_ = static_cast<std::uint16_t>(m.degree_ - m.exps_[id.index] + power);
  m.exps_[id.index] = static_cast<std::uint8_t>(power);
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kSize; ++i) {
    m.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    m.degree_ = static_cast<std::uint16_t>(m.degree_ + m.exps_[i]);
  }
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kSize; ++i) {
    m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    m.degree_ = static_cast<std::uint16_t>(m.degree_ + m.exps_[i]);
  }
  return m;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  for (std::size_t i = 0; i < kSize; ++i)
    if (auto c = exps_[i] <=> other.exps_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------

namespace {

bool descending(const Term& a, const Term& b) { return a.mono > b.mono; }

}  // namespace

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({c, Monomial{}});
}

Poly Poly::var(SymbolId id, unsigned power) {
  return monomial(Rational(1), Monomial::var(id, power));
}

Poly Poly::monomial(const Rational& c, const Monomial& m) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({c, m});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), descending);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

unsigned Poly::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Poly::degree_in(std::span<const SymbolId> ids) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(ids));
  return d;
}

unsigned Poly::degree_in(SymbolId id) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[id]);
  return d;
}

std::uint32_t Poly::support() const {
  std::uint32_t mask = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < Monomial::kSize; ++i)
      if (t.mono.exponent(i) != 0) mask |= (1u << i);
  return mask;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({subtract ? Rational(-b[j].coeff) : b[j].coeff, b[j].mono});
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({std::move(c), a[i].mono});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff);
  if (b.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff);
  std::vector<Term> products;
  products.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) products.push_back({s.coeff * t.coeff, s.mono * t.mono});
  return Poly::from_terms(std::move(products));
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly Poly::partial(SymbolId id) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[id];
    if (e == 0) continue;
    out.push_back({t.coeff * e, t.mono.with_exponent(id, e - 1)});
  }
  // Distinct monomials stay distinct and keep their relative order.
  Poly p;
  p.terms_ = std::move(out);
  return p;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    g = Monomial::gcd(g, t.mono);
    if (g.is_one()) break;
  }
  return g;
}

Poly Poly::divide_monomial(const Monomial& m) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono / m;
  return p;
}

std::vector<std::pair<Monomial, Poly>> Poly::collect(std::span<const SymbolId> keep) const {
  std::map<Monomial, std::vector<Term>, std::greater<>> groups;
  for (const auto& t : terms_) {
    Monomial kept, rest = t.mono;
    for (auto id : keep) {
      kept = kept.with_exponent(id, t.mono[id]);
      rest = rest.with_exponent(id, 0);
    }
    groups[kept].push_back({t.coeff, rest});
  }
  std::vector<std::pair<Monomial, Poly>> out;
  out.reserve(groups.size());
  for (auto& [m, ts] : groups) out.emplace_back(m, Poly::from_terms(std::move(ts)));
  return out;
}

Rational Poly::evaluate(const Point& point) const {
  if ((support() & ~point.mask()) != 0) throw std::out_of_range("evaluate: unbound symbol");
  Rational sum(0);
  Rational value;
  mpz_class num;
  for (const auto& t : terms_) {
    value = t.coeff;
    for (std::size_t i = 0; i < Monomial::kSize; ++i) {
      unsigned e = t.mono.exponent(i);
      if (e == 0) continue;
      const Rational& base = point[SymbolId{static_cast<std::uint8_t>(i)}];
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), base.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), base.get_den_mpz_t(), e);
      value *= p;
    }
    sum += value;
  }
  return sum;
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

std::optional<Poly> exact_polynomial_quotient(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("exact_polynomial_quotient: zero divisor");
  if (n.is_zero()) return Poly();
  const Term& lead = d.leading();
  if (d.is_monomial()) {
    std::vector<Term> out;
    out.reserve(n.size());
    for (const auto& t : n.terms()) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      out.push_back({t.coeff / lead.coeff, t.mono / lead.mono});
    }
    return Poly::from_terms(std::move(out));
  }
  // Remainder kept in a descending map so the leading term is always begin().
  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : n.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lead.mono;
    Rational qc = it->second / lead.coeff;
    for (const auto& t : d.terms()) {
      Monomial m = t.mono * qm;
      auto [pos, inserted] = rem.try_emplace(m, 0);
      pos->second -= qc * t.coeff;
      if (sgn(pos->second) == 0) rem.erase(pos);
    }
    quotient.push_back({std::move(qc), qm});
  }
  return Poly::from_terms(std::move(quotient));
}

}  // namespace weylsym
