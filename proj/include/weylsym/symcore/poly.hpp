#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "weylsym/symcore/symbol_table.hpp"

namespace weylsym {

using Rational = mpq_class;

/// Exponent vector over a SymbolTable, with cached total degree.
class Monomial {
 public:
  static constexpr std::size_t kSize = SymbolTable::kMaxSymbols;

  Monomial() = default;
  static Monomial var(SymbolId id, unsigned power = 1);

  unsigned operator[](SymbolId id) const { return exps_[id.index]; }
  unsigned exponent(std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Total degree restricted to the given symbols.
  unsigned degree_in(std::span<const SymbolId> ids) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other) to hold for `other / *this`.
  Monomial operator/(const Monomial& divisor) const;
  Monomial with_exponent(SymbolId id, unsigned power) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  /// Graded lexicographic: higher total degree first, then lex over table order.
  std::strong_ordering operator<=>(const Monomial& other) const;

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kSize> exps_{};
  std::uint16_t degree_ = 0;
};

/// Exact assignment of rational values to (some) symbols.
class Point {
 public:
  Point& set(SymbolId id, const Rational& value) {
    values_[id.index] = value;
    mask_ |= (1u << id.index);
    return *this;
  }
  bool bound(SymbolId id) const { return (mask_ >> id.index) & 1u; }
  const Rational& operator[](SymbolId id) const { return values_[id.index]; }
  std::uint32_t mask() const { return mask_; }

 private:
  std::array<Rational, Monomial::kSize> values_{};
  std::uint32_t mask_ = 0;
};

struct Term {
  Rational coeff;
  Monomial mono;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in strictly descending graded-lex order with no zeros.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Poly var(SymbolId id, unsigned power = 1);
  static Poly monomial(const Rational& c, const Monomial& m);
  /// Builds from arbitrary terms; sorts, merges and drops zeros.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }

  unsigned degree() const;
  unsigned degree_in(std::span<const SymbolId> ids) const;
  unsigned degree_in(SymbolId id) const;
  bool depends_on(SymbolId id) const { return degree_in(id) > 0; }
  /// Bitmask of symbols appearing in the polynomial.
  std::uint32_t support() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(unsigned n) const;

  Poly partial(SymbolId id) const;

  /// Greatest monomial dividing every term (the one monomial for zero).
  Monomial monomial_content() const;
  /// Divides every term by m; every term must be divisible.
  Poly divide_monomial(const Monomial& m) const;

  /// Collects coefficients by the part of each monomial over `keep`.
  /// Returns (monomial over keep, coefficient polynomial in the remaining symbols).
  std::vector<std::pair<Monomial, Poly>> collect(std::span<const SymbolId> keep) const;

  /// Throws std::out_of_range if a symbol of the polynomial is unbound.
  Rational evaluate(const Point& point) const;

  bool operator==(const Poly& other) const;

 private:
  std::vector<Term> terms_;
};

/// Exact division by a single divisor using graded-lex reduction.
/// Returns q with n == q*d, or nothing when the remainder is nonzero.
std::optional<Poly> exact_polynomial_quotient(const Poly& n, const Poly& d);

}  // namespace weylsym
