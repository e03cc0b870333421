#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylsym/symcore/poly.hpp"

namespace weylsym {

/// Raised when a formula's denominator is the zero polynomial.
class SingularFormulaError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a denominator vanishes at a particular evaluation point.
/// Callers that sample points treat it as a request to resample.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quotient of two polynomials. No GCD normalization: equality is by
/// cross-multiplication. Common monomial factors are cancelled and the
/// denominator's leading coefficient is kept at one.
class RatExpr {
 public:
  RatExpr() : den_(1) {}
  RatExpr(Poly num);  // NOLINT(google-explicit-constructor)
  RatExpr(const Rational& c) : RatExpr(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  RatExpr(long c) : RatExpr(Poly(c)) {}             // NOLINT(google-explicit-constructor)
  RatExpr(int c) : RatExpr(Poly(c)) {}              // NOLINT(google-explicit-constructor)
  RatExpr(Poly num, Poly den);

  static RatExpr var(SymbolId id) { return RatExpr(Poly::var(id)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_structurally_zero() const { return num_.is_zero(); }
  std::uint32_t support() const { return num_.support() | den_.support(); }

  RatExpr operator-() const { return RatExpr(-num_, den_, Normalized{}); }
  friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
  friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
  friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
  /// Throws SingularFormulaError when b is identically zero.
  friend RatExpr operator/(const RatExpr& a, const RatExpr& b);
  RatExpr& operator+=(const RatExpr& b) { return *this = *this + b; }
  RatExpr& operator-=(const RatExpr& b) { return *this = *this - b; }
  RatExpr& operator*=(const RatExpr& b) { return *this = *this * b; }
  RatExpr pow(int n) const;

  /// Cross-multiplication equality: a/b == c/d iff a*d - c*b == 0.
  bool equals(const RatExpr& other) const { return (num_ * other.den_ - other.num_ * den_).is_zero(); }

  /// Partial derivative with respect to one symbol.
  RatExpr partial(SymbolId id) const;

 private:
  struct Normalized {};
  RatExpr(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

/// Table of derivatives: symbols absent from it differentiate to zero.
class Derivation {
 public:
  Derivation& set(SymbolId id, RatExpr value);
  const RatExpr* rule(SymbolId id) const;
  std::uint32_t domain() const { return mask_; }

  RatExpr apply(const Poly& p) const;
  RatExpr apply(const RatExpr& e) const;
  RatExpr operator()(const RatExpr& e) const { return apply(e); }

 private:
  std::vector<std::pair<SymbolId, RatExpr>> rules_;
  std::uint32_t mask_ = 0;
};

/// A linear relation solved for one symbol, e.g. a1 = 1 - a0 - a2.
struct LinearRelation {
  SymbolId eliminated;
  Poly replacement;
};

/// Simultaneous substitution of symbols by expressions.
class Substitution {
 public:
  Substitution& bind(SymbolId id, RatExpr value);
  bool binds(SymbolId id) const { return (mask_ >> id.index) & 1u; }
  const RatExpr& value(SymbolId id) const;
  std::uint32_t mask() const { return mask_; }

 private:
  std::vector<std::pair<SymbolId, RatExpr>> bindings_;
  std::uint32_t mask_ = 0;
};

/// Throws SingularFormulaError naming the binding(s) involved when the
/// composed denominator is identically zero.
RatExpr substitute(const RatExpr& e, const Substitution& s, const SymbolTable* table = nullptr);
RatExpr substitute(const Poly& p, const Substitution& s, const SymbolTable* table = nullptr);

RatExpr apply_relation(const RatExpr& e, const LinearRelation& rel);

/// True iff the numerator vanishes as a polynomial, after eliminating the
/// relation's symbol when one is supplied.
bool is_identically_zero(const RatExpr& e, const std::optional<LinearRelation>& rel = std::nullopt);

/// Exact value at a point. Throws PoleError if the denominator vanishes there.
Rational evaluate(const RatExpr& e, const Point& point);
/// As evaluate(), but returns nothing at a pole.
std::optional<Rational> try_evaluate(const RatExpr& e, const Point& point);

}  // namespace weylsym
