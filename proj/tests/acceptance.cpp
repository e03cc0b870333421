// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "weylsym/numeric.hpp"
#include "weylsym/verify/suite.hpp"
#include "weylsym/weyl.hpp"

namespace {

using namespace weylsym;
namespace sym = models::sym;
using models::expr;
using models::load_model;
using models::Variant;

struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

void symbolic_suite(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  auto sym_ok = [&](const char* system, const char* map, Variant v = Variant::Printed) {
    c.expect(verify::check_symmetry(system, map, v).passed(), std::string("symmetry ") + map);
  };
  sym_ok("five_dim", "s0_5d");
  sym_ok("five_dim", "s1_5d");
  sym_ok("ham_4d", "s0_4d");
  sym_ok("ham_4d", "s1_4d");
  sym_ok("ham_4d", "s2_4d", Variant::Corrected);
  sym_ok("ham_4d", "pi_4d");
  c.expect(verify::check_first_integral("five_dim", "ywq").passed(), "integral ywq");
  c.expect(models::load_integral("ywq").lambda == -1, "ywq rate");
  c.expect(verify::check_first_integral("K1_sys", "I1").passed(), "integral I1");
  c.expect(verify::check_first_integral("tildeK2_sys", "I2").passed(), "integral I2");
  c.expect(verify::check_chart("five_dim", "chart0").passed(), "chart0");
  c.expect(verify::check_chart("five_dim", "chart1").passed(), "chart1");
  for (const char* h : {"ham_4d", "K1_sys", "K2_sys", "tildeK2_sys"})
    c.expect(verify::check_hamiltonian_consistency(h).passed(), std::string("hamiltonian ") + h);
  c.expect(verify::check_reduction_5d_to_4d().passed(), "reduction");
  c.expect(verify::check_second_order_forms().passed(), "second order forms");
  c.expect(verify::check_invariant_divisor().passed(), "invariant divisor");
  c.expect(verify::check_vector_field_degree("five_dim").passed(), "degree");
  int explicit_or_restricted = 0;
  for (const auto& sol : models::registry().solutions) {
    c.expect(verify::check_particular_solution(sol).passed(), "solution " + sol.id);
    ++explicit_or_restricted;
  }
  c.expect(explicit_or_restricted >= 4, "particular solution count");
  for (const auto& r : verify::run_suite(verify::Scope::All)) c.expect(r.passed(), "suite " + r.check_id);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < 60.0, "runtime");
}

void typo_resolution(Criterion& c) {
  // Hand expansion of the x residual of the printed s2 at exact points.
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 15);
  auto field_x = [](const Rational& x, const Rational& w, const Rational& a2) {
    return Rational(-x * x * w + a2 * x + Rational(1, 2));
  };
  auto printed = verify::check_symmetry("five_dim", "s2_5d", Variant::Printed);
  const RatExpr* dx = nullptr;
  for (const auto& r : printed.residuals)
    if (r.label == "dx" && r.value) dx = &*r.value;
  c.expect(dx != nullptr, "printed s2 has an x residual");
  for (int i = 0; dx && i < 50; ++i) {
    Rational x(num(rng), den(rng)), w(num(rng), den(rng)), a0(num(rng), den(rng)), a2(num(rng), den(rng));
    x.canonicalize(), w.canonicalize(), a0.canonicalize(), a2.canonicalize();
    if (x == 0) continue;
    const Rational w_image = (-x * x * w + 2 * x * a0 + 1) / (x * x);
    const Rational oracle = -field_x(x, w, a2) - field_x(-x, w_image, -a2);
    Point p;
    for (auto s : {sym::y, sym::z, sym::q, sym::eta}) p.set(s, 1);
    p.set(sym::x, x).set(sym::w, w).set(sym::a0, a0).set(sym::a2, a2).set(sym::a1, 1 - a0 - a2);
    c.expect(evaluate(*dx, p) == oracle, "hand expansion of the printed x residual");
  }

  auto s2 = verify::check_disputed("symmetry.s2_5d", "five_dim", "s2_5d", false);
  auto chart2 = verify::check_disputed("chart.chart2", "five_dim", "chart2", true);
  c.expect(s2.passed() && chart2.passed(), "exactly one variant verifies");
  c.expect(s2.resolved_variant && chart2.resolved_variant && *s2.resolved_variant == *chart2.resolved_variant,
           "same variant for both objects");
  c.expect(verify::check_disputed_agreement().passed(), "agreement check");
}

void group_theory(Criterion& c) {
  using namespace weyl;
  auto t1 = translation_shift(parse_word("s1 s2 s1 s0"));
  auto t2 = translation_shift(parse_word("s1 s1 s2 s1 s0 s1"));
  c.expect(t1 && t1->vector == std::array<int, 3>{-2, 2, 0}, "T1 shift");
  c.expect(t2 && t2->vector == std::array<int, 3>{0, -2, 2}, "T2 shift");
  RelationOptions opts;
  opts.samples = 20;
  for (const auto& r : verify_group_relations(opts)) c.expect(r.passed(), r.check_id);
}

void integral_search(Criterion& c) {
  const SymbolId five[] = {sym::x, sym::y, sym::z, sym::w, sym::q};
  auto a = verify::first_integral_search("five_dim", 2, 0, {Rational(-1)});
  c.expect(a.integrals.size() == 1 && verify::proportional(a.integrals[0].expr, expr("y - w*q"), five),
           "five_dim finds y - w*q alone");
  const SymbolId k1[] = {sym::q1, sym::p1};
  auto b = verify::first_integral_search("K1_sys", 4, 0, {Rational(0)});
  c.expect(b.integrals.size() == 1 && verify::proportional(b.integrals[0].expr, models::load_integral("I1").expr, k1),
           "K1_sys finds I1 alone");
  auto none = verify::first_integral_search("ham_4d", 3, 2, {Rational(0), Rational(-1), Rational(1)});
  c.expect(none.integrals.empty(), "ham_4d has none");
}

void numeric_targets(Criterion& c) {
  using namespace numeric;
  NumericConfig tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  auto lin = integrate("linear_xz", {{"a0", 1.0}, {"a2", 0.5}, {"eta", 0.0}}, {0.0, 0.0}, 0.0, 1.0, tight);
  c.expect(std::abs(lin.states.back()[0] - (std::exp(0.5) - 1.0)) < 1e-8, "closed form e^{1/2} - 1");

  const ParamValues params{{"a0", 0.3}, {"a2", 0.45}, {"eta", 0.7}};
  const std::vector<double> init{0.4, 1.3, -0.6, 0.8, 0.5};
  NumericConfig standard;
  standard.abs_tol = standard.rel_tol = 1e-10;
  c.expect(invariant_drift(integrate("five_dim", params, init, 0.0, 1.0, standard), "ywq") < 1e-6, "ywq drift");

  std::vector<double> residuals;
  for (double h : {1e-2, 5e-3, 2.5e-3, 1.25e-3, 1e-3}) {
    auto traj = integrate("five_dim", params, init, 0.0, 0.5, tight, OutputMode::fixed_step(h));
    residuals.push_back(dynamics_residual(traj, "five_dim", params));
  }
  for (int i = 0; i < 3; ++i) {
    const double ratio = residuals[i] / residuals[i + 1];
    c.expect(ratio > 3.5 && ratio < 4.5, "fourfold reduction per halving");
  }
  const double decade = residuals[0] / residuals[4];
  c.expect(decade > 80 && decade < 120, "hundredfold reduction over a decade");

  auto traj = integrate("five_dim", params, init, 0.0, 0.5, tight, OutputMode::fixed_step(1e-3));
  auto image = pushforward(traj, "s1_5d");
  c.expect(dynamics_residual(image, "five_dim", image.params) < 1e-4, "s1 pushforward residual");
}

void kernel_properties(Criterion& c) {
  std::mt19937_64 rng(424242);
  auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto rational = [&] {
    Rational r(small(-9, 9), small(1, 5));
    r.canonicalize();
    return r;
  };
  auto poly = [&] {
    std::vector<Term> terms;
    for (int i = small(0, 4); i > 0; --i) {
      Monomial m;
      for (auto v : {sym::x, sym::z, sym::w}) m = m * Monomial::var(v, small(0, 2));
      terms.push_back({rational(), m});
    }
    return Poly::from_terms(std::move(terms));
  };
  auto nonzero = [&] {
    for (;;)
      if (Poly p = poly(); !p.is_zero()) return p;
  };
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    Poly a = poly(), b = poly(), d = nonzero();
    c.expect(a * (b + d) == a * b + a * d && (a * b) * d == a * (b * d) && a * b == b * a, "ring axioms");

    Derivation der;
    der.set(sym::x, RatExpr(poly())).set(sym::z, RatExpr(poly(), nonzero())).set(sym::w, RatExpr(rational()));
    RatExpr u(a, nonzero()), v(b, nonzero());
    c.expect(is_identically_zero(der(u * v) - (der(u) * v + u * der(v))), "Leibniz rule");

    auto q = exact_polynomial_quotient(a * d, d);
    c.expect(q && *q == a, "exact division round trip");

    Point p;
    for (auto s : {sym::x, sym::z, sym::w}) p.set(s, rational());
    auto vu = try_evaluate(u, p), vv = try_evaluate(v, p);
    if (vu && vv) {
      ++compared;
      c.expect(evaluate(u * v, p) == *vu * *vv && evaluate(u + v, p) == *vu + *vv, "evaluation homomorphism");
    }
  }
  c.expect(compared >= 80, "enough evaluation points");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria{
      {"symbolic theorem suite", symbolic_suite},
      {"typo resolution", typo_resolution},
      {"group theory", group_theory},
      {"first-integral search", integral_search},
      {"numeric targets", numeric_targets},
      {"kernel property tests", kernel_properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += !ok;
    std::cout << "criterion " << i + 1 << " " << (ok ? "PASS" : "FAIL") << ": " << criteria[i].first;
    if (!ok) std::cout << " (" << c.failures.front() << (c.failures.size() > 1 ? ", ..." : "") << ")";
    std::cout << '\n';
  }
  return failed ? 1 : 0;
}
