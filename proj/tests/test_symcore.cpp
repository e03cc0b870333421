#include <doctest.h>

#include <random>

#include "weylsym/models.hpp"
#include "weylsym/symcore/linalg.hpp"
#include "weylsym/symcore/text.hpp"

using namespace weylsym;
namespace sym = models::sym;
using models::expr;

namespace {

constexpr int kInstances = 120;

struct Gen {
  std::mt19937_64 rng{424242};

  int small(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational rational() {
    Rational r(small(-9, 9), small(1, 5));
    r.canonicalize();
    return r;
  }

  // Random polynomial in x, z, w with up to four terms of degree <= 3.
  Poly poly() {
    const SymbolId vars[3] = {sym::x, sym::z, sym::w};
    std::vector<Term> terms;
    const int n = small(0, 4);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      for (auto v : vars) m = m * Monomial::var(v, small(0, 1) ? small(0, 2) : 0);
      terms.push_back({rational(), m});
    }
    return Poly::from_terms(std::move(terms));
  }

  Poly nonzero_poly() {
    for (;;)
      if (Poly p = poly(); !p.is_zero()) return p;
  }

  RatExpr ratexpr() { return RatExpr(poly(), nonzero_poly()); }

  Point point() {
    Point p;
    for (auto v : {sym::x, sym::z, sym::w}) p.set(v, rational());
    return p;
  }
};

}  // namespace

TEST_CASE("ring operations on examples") {
  const RatExpr x = RatExpr::var(sym::x);
  CHECK((x - x).is_structurally_zero());
  RatExpr sum = RatExpr(1) / x + RatExpr(1) / x;
  CHECK(sum.equals(expr("2*x/x^2")));
  CHECK(is_identically_zero(expr("(x^2 - 1)/(x - 1)") - expr("x + 1")));
  CHECK_THROWS_AS(x / RatExpr(0), SingularFormulaError);
}

TEST_CASE("substitution") {
  Substitution s;
  s.bind(sym::x, RatExpr(2)).bind(sym::w, RatExpr(3));
  CHECK(substitute(expr("x*w"), s).equals(RatExpr(6)));

  Substitution shift;
  shift.bind(sym::q, expr("q - 2*a0/z + eta/z^2"));
  CHECK(substitute(expr("z*q"), shift).equals(expr("(z^2*q - 2*a0*z + eta)/z")));

  CHECK(substitute(expr("x"), Substitution()).equals(expr("x")));

  // Simultaneous, not sequential.
  Substitution swap;
  swap.bind(sym::x, expr("z")).bind(sym::z, expr("x"));
  CHECK(substitute(expr("x - 2*z"), swap).equals(expr("z - 2*x")));

  Substitution bad;
  bad.bind(sym::z, RatExpr(0));
  try {
    substitute(expr("1/z"), bad, &models::symbols());
    FAIL("expected a singular formula");
  } catch (const SingularFormulaError& e) {
    CHECK(std::string(e.what()).find("z") != std::string::npos);
  }
}

TEST_CASE("differentiation") {
  Derivation d;
  d.set(sym::x, RatExpr(1));
  CHECK(d(expr("x^2")).equals(expr("2*x")));

  Derivation exp_rule;
  exp_rule.set(sym::E, expr("a2*E"));
  CHECK(exp_rule(expr("E")).equals(expr("a2*E")));
  CHECK(exp_rule(expr("1/E")).equals(expr("-a2/E")));

  const auto& five = models::load_model("five_dim");
  RatExpr dywq = five.derivation()(expr("y - w*q"));
  CHECK_FALSE(is_identically_zero(dywq + expr("y - w*q")));
  CHECK(is_identically_zero(dywq + expr("y - w*q"), models::normalization()));
}

TEST_CASE("identically zero under the normalization") {
  CHECK(is_identically_zero(expr("x - x")));
  CHECK(is_identically_zero(expr("a0 + a1 + a2 - 1"), models::normalization()));
  CHECK_FALSE(is_identically_zero(expr("a0 + a1 + a2 - 1")));
}

TEST_CASE("exact polynomial quotient") {
  auto p = [](const char* t) { return expr(t).num(); };
  auto q = exact_polynomial_quotient(p("x^2*z - x*z"), p("x"));
  REQUIRE(q);
  CHECK(*q == p("x*z - z"));
  q = exact_polynomial_quotient(p("x^2 - 1"), p("x + 1"));
  REQUIRE(q);
  CHECK(*q == p("x - 1"));
  CHECK_FALSE(exact_polynomial_quotient(p("x^2 + 1"), p("x")));
}

TEST_CASE("jacobian determinants") {
  const std::vector<SymbolId> vars{sym::x, sym::y, sym::z, sym::w, sym::q};
  std::vector<RatExpr> identity;
  for (auto v : vars) identity.push_back(RatExpr::var(v));
  CHECK(jacobian_determinant(identity, vars).equals(RatExpr(1)));

  for (const char* chart : {"chart0", "chart1"}) {
    const auto& m = models::load_map(chart);
    std::vector<RatExpr> images;
    for (auto v : vars) images.push_back(m.image_of(v));
    CHECK(jacobian_determinant(images, vars).equals(RatExpr(1)));
  }

  std::vector<RatExpr> scaled{expr("2*x"), expr("y"), expr("z"), expr("w"), expr("q")};
  CHECK(jacobian_determinant(scaled, vars).equals(RatExpr(2)));
}

TEST_CASE("point evaluation") {
  Point p;
  p.set(sym::x, 1).set(sym::z, 2);
  CHECK(evaluate(expr("x/z"), p) == Rational(1, 2));

  Point zero;
  zero.set(sym::z, 0);
  CHECK_THROWS_AS(evaluate(expr("1/z"), zero), PoleError);
  CHECK_FALSE(try_evaluate(expr("1/z"), zero));

  Point p2;
  p2.set(sym::y, 3).set(sym::w, 1).set(sym::q, 2);
  CHECK(evaluate(expr("y - w*q"), p2) == 1);

  CHECK_THROWS_AS(expr("x*y").num().evaluate(p), std::out_of_range);
}

TEST_CASE("canonical printing round-trips through the parser") {
  for (const auto& sys : models::registry().systems)
    for (const auto& f : sys.rhs) {
      std::string text = to_string(f, models::symbols());
      RatExpr back = expr(text);
      CHECK(back.equals(f));
      CHECK(to_string(back, models::symbols()) == text);
    }
  CHECK(to_string(expr("-(x*w - a2)*x + 1/2"), models::symbols()) == "-x^2*w + x*a2 + 1/2");
  CHECK_THROWS_AS(expr("x +"), ParseError);
  CHECK_THROWS_AS(expr("nosuch*x"), ParseError);
}

TEST_CASE("property: ring axioms") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    Poly a = g.poly(), b = g.poly(), c = g.poly();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("property: Leibniz and quotient rules") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    Derivation d;
    d.set(sym::x, g.ratexpr()).set(sym::z, RatExpr(g.poly())).set(sym::w, RatExpr(g.rational()));
    RatExpr a = g.ratexpr(), b = g.ratexpr();
    CHECK(is_identically_zero(d(a * b) - (d(a) * b + a * d(b))));
    if (!b.is_structurally_zero()) CHECK(is_identically_zero(d(a / b) - (d(a) * b - a * d(b)) / (b * b)));
  }
}

TEST_CASE("property: cross-multiplication equality is an equivalence") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    RatExpr a = g.ratexpr();
    Poly c1 = g.nonzero_poly(), c2 = g.nonzero_poly();
    // b and c equal a but carry different common factors.
    RatExpr b(a.num() * c1, a.den() * c1);
    RatExpr c(a.num() * c2 * c1, a.den() * c1 * c2);
    CHECK(a.equals(a));
    CHECK(a.equals(b) == b.equals(a));
    CHECK(a.equals(b));
    CHECK(b.equals(c));
    CHECK(a.equals(c));
  }
}

TEST_CASE("property: exact division round trip") {
  Gen g;
  for (int i = 0; i < kInstances; ++i) {
    Poly d = g.nonzero_poly(), q = g.poly();
    Poly n = q * d;
    auto got = exact_polynomial_quotient(n, d);
    REQUIRE(got);
    CHECK((*got * d - n).is_zero());
    CHECK(*got == q);

    Poly m = g.poly() + Poly(g.rational());
    if (auto r = exact_polynomial_quotient(m, d)) CHECK((*r * d - m).is_zero());
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  Gen g;
  int compared = 0;
  for (int i = 0; i < kInstances; ++i) {
    RatExpr a = g.ratexpr(), b = g.ratexpr();
    Point p = g.point();
    auto va = try_evaluate(a, p), vb = try_evaluate(b, p);
    if (!va || !vb) continue;
    ++compared;
    CHECK(evaluate(a * b, p) == *va * *vb);
    CHECK(evaluate(a + b, p) == *va + *vb);
    CHECK(evaluate(a - b, p) == *va - *vb);
  }
  CHECK(compared >= 100);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Gen g;
  for (int i = 0; i < 30; ++i) {
    PolyMatrix m(3, std::vector<Poly>(3));
    for (auto& row : m)
      for (auto& e : row) e = g.poly();
    const Poly cofactor = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(determinant(m) == cofactor);
  }
}

TEST_CASE("polynomial nullspace vectors annihilate the matrix") {
  Gen g;
  for (int i = 0; i < 30; ++i) {
    // Two rows, four columns: nullity at least two.
    PolyMatrix m(2, std::vector<Poly>(4));
    for (auto& row : m)
      for (auto& e : row) e = g.poly();
    auto basis = polynomial_nullspace(m);
    CHECK(basis.size() >= 2);
    for (const auto& v : basis)
      for (const auto& row : m) {
        Poly acc;
        for (std::size_t j = 0; j < 4; ++j) acc += row[j] * v[j];
        CHECK(acc.is_zero());
      }
  }
}
