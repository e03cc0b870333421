#include "weylsym/verify/suite.hpp"

#include <array>
#include <utility>

#include "weylsym/symcore/text.hpp"

namespace weylsym::verify {

namespace {

constexpr std::array<std::pair<Scope, std::string_view>, 8> kScopeNames{{
    {Scope::All, "all"},
    {Scope::Symmetry, "symmetry"},
    {Scope::Charts, "charts"},
    {Scope::Integrals, "integrals"},
    {Scope::Hamiltonian, "hamiltonian"},
    {Scope::Reduction, "reduction"},
    {Scope::Solutions, "solutions"},
    {Scope::Search, "search"},
}};

std::string variant_suffix(Variant v) { return "." + std::string(models::to_string(v)); }

}  // namespace

std::optional<Scope> parse_scope(std::string_view text) {
  for (const auto& [scope, name] : kScopeNames)
    if (name == text) return scope;
  return std::nullopt;
}

std::string_view to_string(Scope s) {
  for (const auto& [scope, name] : kScopeNames)
    if (scope == s) return name;
  return "?";
}

VerificationReport check_search(std::string_view system_id, unsigned state_bound, unsigned indep_bound,
                                const std::vector<Rational>& lambdas, const std::optional<RatExpr>& expected,
                                const SearchOptions& options) {
  const auto& system = models::load_model(system_id);
  auto r = timed("search." + std::string(system_id), [&](VerificationReport& r) {
    auto found = first_integral_search(system, state_bound, indep_bound, lambdas, options);
    r.seed = options.seed;
    std::string bounds = "state degree <= " + std::to_string(state_bound) + ", " +
                         models::symbols().name(system.indep) + " degree <= " + std::to_string(indep_bound) +
                         ", " + std::to_string(found.unknowns) + " unknowns";
    r.notes.push_back(bounds);
    if (!found.complete) r.fail("symbolic basis did not match the sampled nullity");
    for (const auto& fi : found.integrals)
      r.notes.push_back("found lambda " + weylsym::to_string(fi.lambda) + ": " +
                        weylsym::to_string(fi.expr, models::symbols()));
    if (!expected) {
      if (!found.integrals.empty()) r.fail("expected no integrals");
      else r.notes.push_back("none found");
      return;
    }
    if (found.integrals.size() != 1) {
      r.fail("expected a one-dimensional space, found " + std::to_string(found.integrals.size()));
      return;
    }
    std::vector<SymbolId> vars = system.state;
    vars.push_back(system.indep);
    if (!proportional(found.integrals.front().expr, *expected, vars)) r.fail("found integral is not the expected one");
  });
  return r;
}

VerificationReport check_disputed_agreement() {
  return timed("disputed.agreement", [](VerificationReport& r) {
    auto sym = check_disputed("symmetry.s2_5d", "five_dim", "s2_5d", false);
    auto chart = check_disputed("chart.chart2", "five_dim", "chart2", true);
    r.notes.push_back("s2_5d " + sym.resolved_variant.value_or("unresolved"));
    r.notes.push_back("chart2 " + chart.resolved_variant.value_or("unresolved"));
    if (!sym.resolved_variant || !chart.resolved_variant || *sym.resolved_variant != *chart.resolved_variant)
      r.fail("disputed objects do not resolve to the same variant");
    else
      r.resolved_variant = sym.resolved_variant;
  });
}

std::vector<SuiteEntry> suite_entries(Scope scope, const SuiteOptions& options) {
  std::vector<SuiteEntry> all;
  auto add = [&all](std::string id, Scope s, std::optional<std::string> map, std::function<VerificationReport()> f) {
    all.push_back({std::move(id), s, std::move(map), std::move(f)});
  };
  auto add_map_check = [&](Scope s, std::string system, std::string map, bool chart) {
    const std::string prefix = chart ? "chart." : "symmetry.";
    if (!models::is_disputed(map)) {
      add(prefix + map, s, map, [=] {
        const auto& sys = models::load_model(system);
        const auto& m = models::load_map(map);
        return chart ? check_chart(sys, m) : check_symmetry(sys, m);
      });
      return;
    }
    if (options.variant == VariantChoice::Both) {
      add(prefix + map, s, map, [=] { return check_disputed(prefix + map, system, map, chart); });
      return;
    }
    Variant v = options.variant == VariantChoice::Printed ? Variant::Printed : Variant::Corrected;
    add(prefix + map + variant_suffix(v), s, map, [=] {
      const auto& sys = models::load_model(system);
      const auto& m = models::load_map(map, v);
      return chart ? check_chart(sys, m) : check_symmetry(sys, m);
    });
  };

  add("degree.five_dim", Scope::Charts, std::nullopt, [] { return check_vector_field_degree("five_dim"); });
  add("degree.K1_sys", Scope::Charts, std::nullopt, [] { return check_vector_field_degree("K1_sys"); });
  for (const char* chart : {"chart0", "chart1", "chart2"}) add_map_check(Scope::Charts, "five_dim", chart, true);

  for (const char* map : {"s0_5d", "s1_5d", "s2_5d"}) add_map_check(Scope::Symmetry, "five_dim", map, false);
  for (const char* map : {"s0_4d", "s1_4d", "s2_4d", "pi_4d"}) add_map_check(Scope::Symmetry, "ham_4d", map, false);
  if (options.variant == VariantChoice::Both)
    add("disputed.agreement", Scope::Symmetry, std::nullopt, [] { return check_disputed_agreement(); });

  for (auto [system, integral] : {std::pair{"five_dim", "ywq"}, std::pair{"K1_sys", "I1"},
                                  std::pair{"tildeK2_sys", "I2"}})
    add(std::string("integral.") + integral, Scope::Integrals, std::nullopt,
        [=] { return check_first_integral(system, integral); });

  for (const char* system : {"ham_4d", "K1_sys", "K2_sys", "tildeK2_sys"})
    add(std::string("hamiltonian.") + system, Scope::Hamiltonian, std::nullopt,
        [=] { return check_hamiltonian_consistency(system); });

  add("reduction.5d_to_4d", Scope::Reduction, std::nullopt, [] { return check_reduction_5d_to_4d(); });
  add("second_order_forms", Scope::Reduction, std::nullopt, [] { return check_second_order_forms(); });

  for (const auto& sol : models::registry().solutions)
    add("solution." + sol.id, Scope::Solutions, std::nullopt, [&sol] { return check_particular_solution(sol); });
  add("invariant_divisor.y", Scope::Solutions, std::nullopt, [] { return check_invariant_divisor(); });

  // The searches run their own parallel kernels; keep them serial inside the
  // already-parallel dispatch.
  SearchOptions search{2000, options.seed, kernels::Execution::Serial};
  add("search.five_dim", Scope::Search, std::nullopt, [=] {
    return check_search("five_dim", 2, 0, {Rational(-1)}, models::load_integral("ywq").expr, search);
  });
  add("search.K1_sys", Scope::Search, std::nullopt,
      [=] { return check_search("K1_sys", 4, 0, {Rational(0)}, models::load_integral("I1").expr, search); });
  add("search.ham_4d", Scope::Search, std::nullopt, [=] {
    return check_search("ham_4d", 3, 2, {Rational(0), Rational(-1), Rational(1)}, std::nullopt, search);
  });

  std::vector<SuiteEntry> out;
  for (auto& e : all) {
    if (scope != Scope::All && e.scope != scope) continue;
    if (options.map && e.map != options.map) continue;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<VerificationReport> run_suite(Scope scope, const SuiteOptions& options) {
  auto entries = suite_entries(scope, options);
  std::vector<VerificationReport> reports(entries.size());
  kernels::for_each_index(entries.size(), options.execution, [&](std::size_t i) {
    try {
      reports[i] = entries[i].run();
    } catch (const std::exception& e) {
      reports[i].check_id = entries[i].id;
      reports[i].fail(std::string("error: ") + e.what());
    }
  });
  return reports;
}

}  // namespace weylsym::verify
