#include <doctest.h>

#include <random>

#include "weylsym/symcore/text.hpp"
#include "weylsym/verify/suite.hpp"

using namespace weylsym;
using namespace weylsym::verify;
namespace sym = models::sym;
using models::expr;
using models::load_map;
using models::load_model;

namespace {

const RatExpr* residual_for(const VerificationReport& r, const std::string& label) {
  for (const auto& res : r.residuals)
    if (res.label == label && res.value) return &*res.value;
  return nullptr;
}

bool mentions(const VerificationReport& r, const std::string& text) {
  for (const auto& n : r.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

// The x component of the five-dimensional field, written out by hand.
Rational field_x(const Rational& x, const Rational& w, const Rational& a2) { return -x * x * w + a2 * x + Rational(1, 2); }

}  // namespace

TEST_CASE("vector field degree") {
  CHECK(check_vector_field_degree("five_dim").passed());
  CHECK(state_degree(load_model("five_dim")) == 3);
  CHECK(check_vector_field_degree(load_model("linear_xz"), 1u).passed());
  CHECK_FALSE(check_vector_field_degree(load_model("linear_xz"), 3u).passed());
  CHECK(state_degree(load_model("K1_sys")) == 3);
  CHECK_THROWS_AS(state_degree(load_model("second_order_x")), StructuralError);
}

TEST_CASE("undisputed symmetries of both systems") {
  for (const char* map : {"s0_5d", "s1_5d"}) CHECK(check_symmetry("five_dim", map).passed());
  for (const char* map : {"s0_4d", "s1_4d", "pi_4d"}) CHECK(check_symmetry("ham_4d", map).passed());
  CHECK_THROWS_AS(check_symmetry("ham_4d", "s1_5d"), StructuralError);
}

TEST_CASE("disputed symmetry s2 on five_dim: only the corrected w verifies") {
  auto printed = check_symmetry("five_dim", "s2_5d", models::Variant::Printed);
  auto corrected = check_symmetry("five_dim", "s2_5d", models::Variant::Corrected);
  CHECK_FALSE(printed.passed());
  CHECK(corrected.passed());
  CHECK(printed.check_id == "symmetry.s2_5d.printed");
  REQUIRE(printed.witness);

  const RatExpr* dx = residual_for(printed, "dx");
  REQUIRE(dx);
  CHECK(is_identically_zero(*dx - expr("2*x*(a0 - a2)"), models::normalization()));

  // Hand expansion at random points: D(-x) - F_x(-x, w', a2' = -a2).
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  for (int i = 0; i < 40; ++i) {
    Rational x(num(rng), den(rng)), w(num(rng), den(rng)), a0(num(rng), den(rng)), a2(num(rng), den(rng));
    x.canonicalize(), w.canonicalize(), a0.canonicalize(), a2.canonicalize();
    if (x == 0) continue;
    const Rational w_image = (-x * x * w + 2 * x * a0 + 1) / (x * x);
    const Rational oracle = -field_x(x, w, a2) - field_x(-x, w_image, -a2);
    Point p;
    p.set(sym::x, x).set(sym::w, w).set(sym::a0, a0).set(sym::a2, a2);
    for (auto s : {sym::y, sym::z, sym::q, sym::eta}) p.set(s, Rational(3, 7));
    p.set(sym::a1, 1 - a0 - a2);
    CHECK(evaluate(*dx, p) == oracle);
  }
}

TEST_CASE("disputed symmetry s2 on ham_4d leaves eta in the printed dp2") {
  auto printed = check_symmetry("ham_4d", "s2_4d", models::Variant::Printed);
  CHECK_FALSE(printed.passed());
  const RatExpr* dp2 = residual_for(printed, "dp2");
  REQUIRE(dp2);
  CHECK(is_identically_zero(*dp2 - expr("eta"), models::normalization()));
  CHECK(check_symmetry("ham_4d", "s2_4d", models::Variant::Corrected).passed());
}

TEST_CASE("disputed composites resolve to the corrected variant") {
  for (auto [check, system, map, chart] :
       {std::tuple{"symmetry.s2_5d", "five_dim", "s2_5d", false}, std::tuple{"symmetry.s2_4d", "ham_4d", "s2_4d", false},
        std::tuple{"chart.chart2", "five_dim", "chart2", true}}) {
    auto r = check_disputed(check, system, map, chart);
    CAPTURE(check);
    CHECK(r.passed());
    REQUIRE(r.resolved_variant);
    CHECK(*r.resolved_variant == "corrected");
  }
  auto agreement = check_disputed_agreement();
  CHECK(agreement.passed());
}

TEST_CASE("first integrals") {
  auto ywq = check_first_integral("five_dim", "ywq");
  CHECK(ywq.passed());
  CHECK(check_first_integral("K1_sys", "I1").passed());
  CHECK(check_first_integral("tildeK2_sys", "I2").passed());

  models::FirstIntegral wrong{"y2wq", "five_dim", expr("y - 2*w*q"), Rational(-1)};
  auto bad = check_first_integral(load_model("five_dim"), wrong);
  CHECK_FALSE(bad.passed());
  CHECK(bad.witness);
  CHECK_THROWS_AS(check_first_integral(load_model("K1_sys"), models::load_integral("ywq")), StructuralError);
}

TEST_CASE("charts") {
  CHECK(check_chart("five_dim", "chart0").passed());
  CHECK(check_chart("five_dim", "chart1").passed());
  CHECK_FALSE(check_chart("five_dim", "chart2", models::Variant::Printed).passed());
  CHECK(check_chart("five_dim", "chart2", models::Variant::Corrected).passed());

  models::BirationalMap tangled = load_map("chart0");
  tangled.id = "tangled";
  for (auto& c : tangled.components)
    if (c.target == sym::q) c.image = expr("q + x*y*q");
  CHECK_THROWS_AS(triangular_inverse(load_model("five_dim"), tangled), StructuralError);
}

TEST_CASE("Hamiltonian structure") {
  for (const char* id : {"ham_4d", "K1_sys", "K2_sys", "tildeK2_sys"}) CHECK(check_hamiltonian_consistency(id).passed());

  // Dropping the coupling from H gives a field that no longer matches ham_4d.
  const auto& ham = load_model("ham_4d");
  models::Hamiltonian decoupled = *ham.hamiltonian;
  decoupled.value = decoupled.parts[0] + decoupled.parts[1];
  decoupled.parts.clear();
  auto split = from_hamiltonian("decoupled", decoupled, sym::s, ham.params, ham.relation);
  CHECK(check_hamiltonian_consistency(split).passed());
  CHECK_FALSE(check_second_order_coupled(split, load_model("coupled_second_order")).passed());
  CHECK(check_second_order_coupled(ham, load_model("coupled_second_order")).passed());
}

TEST_CASE("reduction from five to four dimensions") {
  CHECK(check_reduction_5d_to_4d().passed());
  CHECK_FALSE(check_reduction_5d_to_4d(expr("w*q")).passed());
}

TEST_CASE("second order forms") {
  CHECK(check_second_order_single(load_model("xzw"), load_model("second_order_x")).passed());
  CHECK(check_second_order_forms().passed());
}

TEST_CASE("particular solutions and the invariant divisor") {
  for (const auto& sol : models::registry().solutions) {
    CAPTURE(sol.id);
    CHECK(check_particular_solution(sol).passed());
  }
  auto broken = models::load_particular_solution("linear_xz_sol");
  broken.bindings[0].image = expr("C1*E1 + 1/(2*a2)");
  CHECK_FALSE(check_particular_solution(broken).passed());
  CHECK(check_invariant_divisor().passed());
}

TEST_CASE("helpers") {
  CHECK(solve_affine(expr("2*w + x"), sym::w, expr("z")).equals(expr("(z - x)/2")));
  const SymbolId state[] = {sym::x, sym::w};
  CHECK(proportional(expr("a0*x*w"), expr("x*w/eta"), state));
  CHECK_FALSE(proportional(expr("x*w"), expr("x"), state));
}

TEST_CASE("integral search recovers the known integrals") {
  auto five = first_integral_search("five_dim", 2, 0, {Rational(-1)});
  REQUIRE(five.integrals.size() == 1);
  CHECK(five.complete);
  const SymbolId five_state[] = {sym::x, sym::y, sym::z, sym::w, sym::q};
  CHECK(proportional(five.integrals[0].expr, expr("y - w*q"), five_state));
  CHECK(check_first_integral(load_model("five_dim"), five.integrals[0]).passed());

  auto k1 = first_integral_search("K1_sys", 4, 0, {Rational(0)});
  REQUIRE(k1.integrals.size() == 1);
  for (const auto& fi : k1.integrals) CHECK(check_first_integral(load_model("K1_sys"), fi).passed());
  const SymbolId k1_state[] = {sym::q1, sym::p1};
  bool found = false;
  for (const auto& fi : k1.integrals) found = found || proportional(fi.expr, models::load_integral("I1").expr, k1_state);
  CHECK(found);

  // Positive-rate search on five_dim finds nothing at degree two.
  auto none = first_integral_search("five_dim", 2, 0, {Rational(1)});
  CHECK(none.integrals.empty());
  CHECK(none.complete);
}

TEST_CASE("integral search respects the unknowns cap") {
  SearchOptions small;
  small.max_unknowns = 10;
  CHECK_THROWS_AS(first_integral_search("five_dim", 3, 1, {Rational(0)}, small), CapacityError);
}

TEST_CASE("search is identical in serial and parallel mode") {
  SearchOptions serial, parallel;
  serial.execution = kernels::Execution::Serial;
  parallel.execution = kernels::Execution::Parallel;
  auto a = first_integral_search("ham_4d", 3, 2, {Rational(0), Rational(-1)}, serial);
  auto b = first_integral_search("ham_4d", 3, 2, {Rational(0), Rational(-1)}, parallel);
  REQUIRE(a.integrals.size() == b.integrals.size());
  for (std::size_t i = 0; i < a.integrals.size(); ++i) CHECK(a.integrals[i].expr.equals(b.integrals[i].expr));
  CHECK(a.nullity == b.nullity);
  CHECK(a.integrals.empty());
}

TEST_CASE("suite covers at least fourteen checks and all pass") {
  auto reports = run_suite(Scope::All);
  CHECK(reports.size() >= 14);
  for (const auto& r : reports) {
    CAPTURE(r.check_id);
    CHECK(r.passed());
  }
}

TEST_CASE("suite filtering by scope, map and variant") {
  SuiteOptions only_printed;
  only_printed.variant = VariantChoice::Printed;
  only_printed.map = "s2_5d";
  auto reports = run_suite(Scope::Symmetry, only_printed);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].check_id == "symmetry.s2_5d.printed");
  CHECK_FALSE(reports[0].passed());

  CHECK(run_suite(Scope::Integrals).size() == 3);
  CHECK(parse_scope("charts") == Scope::Charts);
  CHECK_FALSE(parse_scope("everything"));
}

TEST_CASE("repeated runs give byte-identical records apart from timing") {
  SuiteOptions serial;
  serial.execution = kernels::Execution::Serial;
  auto a = run_suite(Scope::All, serial);
  auto b = run_suite(Scope::All);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(format_record_untimed(a[i]) == format_record_untimed(b[i]));
  auto failing = check_symmetry("five_dim", "s2_5d", models::Variant::Printed);
  CHECK(format_record_untimed(failing) ==
        format_record_untimed(check_symmetry("five_dim", "s2_5d", models::Variant::Printed)));
  CHECK(format_text(failing).find("FAIL") != std::string::npos);
  CHECK(mentions(check_disputed("symmetry.s2_5d", "five_dim", "s2_5d", false), "printed"));
}
