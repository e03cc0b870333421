#include "weylsym/symcore/ratexpr.hpp"

#include <algorithm>

namespace weylsym {

RatExpr::RatExpr(Poly num) : num_(std::move(num)), den_(1) {}

RatExpr::RatExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw SingularFormulaError("rational expression with zero denominator");
  normalize();
}

void RatExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!g.is_one()) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  const Rational& lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

namespace {

// Splits a denominator into its monomial content and the remaining factor.
std::pair<Monomial, Poly> split_content(const Poly& d) {
  Monomial m = d.monomial_content();
  return {m, m.is_one() ? d : d.divide_monomial(m)};
}

RatExpr add_impl(const RatExpr& a, const RatExpr& b, bool subtract) {
  auto combine = [subtract](const Poly& x, const Poly& y) { return subtract ? x - y : x + y; };
  if (a.is_structurally_zero()) return subtract ? -b : b;
  if (b.is_structurally_zero()) return a;
  if (a.den() == b.den()) return RatExpr(combine(a.num(), b.num()), a.den());
  auto [ma, ra] = split_content(a.den());
  auto [mb, rb] = split_content(b.den());
  Monomial l = Monomial::lcm(ma, mb);
  if (ra == rb) {
    Poly na = a.num().times_monomial(l / ma);
    Poly nb = b.num().times_monomial(l / mb);
    return RatExpr(combine(na, nb), ra.times_monomial(l));
  }
  Poly na = (a.num() * rb).times_monomial(l / ma);
  Poly nb = (b.num() * ra).times_monomial(l / mb);
  return RatExpr(combine(na, nb), (ra * rb).times_monomial(l));
}

}  // namespace

RatExpr operator+(const RatExpr& a, const RatExpr& b) { return add_impl(a, b, false); }
RatExpr operator-(const RatExpr& a, const RatExpr& b) { return add_impl(a, b, true); }

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
  if (a.is_structurally_zero() || b.is_structurally_zero()) return RatExpr();
  if (a.den() == b.num() && b.den().is_constant()) return RatExpr(a.num() * b.den().constant_term());
  return RatExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RatExpr operator/(const RatExpr& a, const RatExpr& b) {
  if (b.is_structurally_zero()) throw SingularFormulaError("division by an identically zero expression");
  return RatExpr(a.num_ * b.den_, a.den_ * b.num_);
}

RatExpr RatExpr::pow(int n) const {
  if (n < 0) return RatExpr(1) / pow(-n);
  return RatExpr(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RatExpr RatExpr::partial(SymbolId id) const {
  if (!den_.depends_on(id)) return RatExpr(num_.partial(id), den_);
  return RatExpr(num_.partial(id) * den_ - num_ * den_.partial(id), den_ * den_);
}

// ---------------------------------------------------------------------------

Derivation& Derivation::set(SymbolId id, RatExpr value) {
  for (auto& [sym, rule] : rules_) {
    if (sym == id) {
      rule = std::move(value);
      return *this;
    }
  }
  rules_.emplace_back(id, std::move(value));
  mask_ |= (1u << id.index);
  return *this;
}

const RatExpr* Derivation::rule(SymbolId id) const {
  for (const auto& [sym, rule] : rules_)
    if (sym == id) return &rule;
  return nullptr;
}

RatExpr Derivation::apply(const Poly& p) const {
  RatExpr sum;
  std::uint32_t active = p.support() & mask_;
  for (const auto& [sym, rule] : rules_) {
    if (!((active >> sym.index) & 1u)) continue;
    sum += RatExpr(p.partial(sym)) * rule;
  }
  return sum;
}

RatExpr Derivation::apply(const RatExpr& e) const {
  RatExpr dn = apply(e.num());
  if (e.den().is_constant()) return dn * RatExpr(Poly(1), e.den());
  RatExpr dd = apply(e.den());
  RatExpr d(e.den());
  return (dn * d - RatExpr(e.num()) * dd) / (d * d);
}

// ---------------------------------------------------------------------------

Substitution& Substitution::bind(SymbolId id, RatExpr value) {
  for (auto& [sym, v] : bindings_) {
    if (sym == id) {
      v = std::move(value);
      return *this;
    }
  }
  bindings_.emplace_back(id, std::move(value));
  mask_ |= (1u << id.index);
  return *this;
}

const RatExpr& Substitution::value(SymbolId id) const {
  for (const auto& [sym, v] : bindings_)
    if (sym == id) return v;
  throw std::out_of_range("substitution: symbol not bound");
}

namespace {

struct PowerCache {
  const Poly* base = nullptr;
  std::vector<Poly> powers;  // powers[k] = base^k

  const Poly& get(unsigned k) {
    if (powers.empty()) powers.emplace_back(1);
    while (powers.size() <= k) powers.push_back(powers.back() * *base);
    return powers[k];
  }
};

std::string binding_names(std::uint32_t mask, const SymbolTable* table) {
  std::string out;
  for (std::size_t i = 0; i < Monomial::kSize; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!out.empty()) out += ", ";
    out += table ? table->name(SymbolId{static_cast<std::uint8_t>(i)}) : "#" + std::to_string(i);
  }
  return out;
}

// Returns numerator and denominator of p under s, with the denominator built
// as prod d_i^{max exponent of i} so every term shares it.
std::pair<Poly, Poly> substitute_parts(const Poly& p, const Substitution& s) {
  std::uint32_t active = p.support() & s.mask();
  if (active == 0) return {p, Poly(1)};

  struct Slot {
    SymbolId id;
    unsigned max_exp = 0;
    PowerCache num, den;
    bool has_den = false;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < Monomial::kSize; ++i) {
    if (!((active >> i) & 1u)) continue;
    SymbolId id{static_cast<std::uint8_t>(i)};
    Slot slot;
    slot.id = id;
    slot.max_exp = p.degree_in(id);
    const RatExpr& v = s.value(id);
    slot.num.base = &v.num();
    slot.den.base = &v.den();
    slot.has_den = !v.den().is_constant() || v.den().constant_term() != 1;
    slots.push_back(std::move(slot));
  }

  Poly common(1);
  for (auto& slot : slots)
    if (slot.has_den) common = common * slot.den.get(slot.max_exp);

  std::vector<Term> acc;
  Poly result;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    for (const auto& slot : slots) rest = rest.with_exponent(slot.id, 0);
    Poly term = Poly::monomial(t.coeff, rest);
    for (auto& slot : slots) {
      unsigned e = t.mono[slot.id];
      if (e > 0) term = term * slot.num.get(e);
      if (slot.has_den && e < slot.max_exp) term = term * slot.den.get(slot.max_exp - e);
    }
    result += term;
  }
  return {std::move(result), std::move(common)};
}

}  // namespace

RatExpr substitute(const Poly& p, const Substitution& s, const SymbolTable* table) {
  auto [n, d] = substitute_parts(p, s);
  if (d.is_zero())
    throw SingularFormulaError("substitution gives a zero denominator (bindings: " +
                               binding_names(p.support() & s.mask(), table) + ")");
  return RatExpr(std::move(n), std::move(d));
}

RatExpr substitute(const RatExpr& e, const Substitution& s, const SymbolTable* table) {
  if ((e.support() & s.mask()) == 0) return e;
  auto [nn, nd] = substitute_parts(e.num(), s);
  if (e.den().is_constant()) return RatExpr(std::move(nn), nd * e.den());
  auto [dn, dd] = substitute_parts(e.den(), s);
  if (dn.is_zero())
    throw SingularFormulaError("substitution makes a denominator identically zero (bindings: " +
                               binding_names(e.den().support() & s.mask(), table) + ")");
  return RatExpr(nn * dd, nd * dn);
}

RatExpr apply_relation(const RatExpr& e, const LinearRelation& rel) {
  Substitution s;
  s.bind(rel.eliminated, RatExpr(rel.replacement));
  return substitute(e, s);
}

bool is_identically_zero(const RatExpr& e, const std::optional<LinearRelation>& rel) {
  if (e.num().is_zero()) return true;
  if (!rel) return false;
  Substitution s;
  s.bind(rel->eliminated, RatExpr(rel->replacement));
  return substitute(e.num(), s).num().is_zero();
}

std::optional<Rational> try_evaluate(const RatExpr& e, const Point& point) {
  Rational d = e.den().evaluate(point);
  if (sgn(d) == 0) return std::nullopt;
  return Rational(e.num().evaluate(point) / d);
}

Rational evaluate(const RatExpr& e, const Point& point) {
  auto v = try_evaluate(e, point);
  if (!v) throw PoleError("denominator vanishes at the evaluation point");
  return *v;
}

}  // namespace weylsym
