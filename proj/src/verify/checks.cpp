#include "weylsym/verify/checks.hpp"

#include <algorithm>

#include "weylsym/symcore/linalg.hpp"
#include "weylsym/symcore/text.hpp"

namespace weylsym::verify {

namespace {

using models::load_map;
using models::load_model;
using models::MapComponent;
using models::symbols;
namespace sym = models::sym;

const std::string& name(SymbolId id) { return symbols().name(id); }

RatExpr reduce(const RatExpr& e, const std::optional<LinearRelation>& rel) {
  return rel ? apply_relation(e, *rel) : e;
}

/// Records `value` (after the relation) as a residual.
void residual(VerificationReport& r, std::string label, const RatExpr& value,
              const std::optional<LinearRelation>& rel) {
  RatExpr reduced = reduce(value, rel);
  r.add_residual(std::move(label), reduced, reduced.is_structurally_zero());
}

void attach_witness(VerificationReport& r) {
  if (r.passed() || r.witness) return;
  for (const auto& res : r.residuals) {
    if (!res.value) continue;
    r.witness = find_witness(*res.value, kDefaultSeed);
    r.seed = kDefaultSeed;
    if (r.witness) return;
  }
}

bool is_state(const VectorFieldSystem& system, SymbolId id) {
  return std::find(system.state.begin(), system.state.end(), id) != system.state.end();
}

std::uint32_t mask_of(std::span<const SymbolId> ids) {
  std::uint32_t m = 0;
  for (auto id : ids) m |= 1u << id.index;
  return m;
}

}  // namespace

RatExpr solve_affine(const RatExpr& lhs, SymbolId var, const RatExpr& value) {
  RatExpr slope = lhs.partial(var);
  if (slope.is_structurally_zero() || !slope.partial(var).is_structurally_zero())
    throw StructuralError("expression is not affine in " + name(var));
  RatExpr at_zero = substitute(lhs, Substitution().bind(var, RatExpr(0)));
  return (value - at_zero) / slope;
}

bool proportional(const RatExpr& a, const RatExpr& b, std::span<const SymbolId> vars) {
  if (a.is_structurally_zero() || b.is_structurally_zero()) return false;
  RatExpr ratio = a / b;
  for (auto v : vars)
    if (!ratio.partial(v).is_structurally_zero()) return false;
  return true;
}

VectorFieldSystem from_hamiltonian(std::string id, const models::Hamiltonian& h, SymbolId indep,
                                   std::vector<SymbolId> params, std::optional<LinearRelation> relation) {
  VectorFieldSystem sys;
  sys.id = std::move(id);
  sys.indep = indep;
  sys.params = std::move(params);
  sys.relation = std::move(relation);
  for (const auto& pair : h.pairs) {
    sys.state.push_back(pair.coordinate);
    sys.rhs.push_back(h.value.partial(pair.momentum));
    sys.state.push_back(pair.momentum);
    sys.rhs.push_back(-h.value.partial(pair.coordinate));
  }
  sys.hamiltonian = h;
  return sys;
}

unsigned state_degree(const VectorFieldSystem& system) {
  unsigned degree = 0;
  for (std::size_t i = 0; i < system.rhs.size(); ++i) {
    const RatExpr& f = system.rhs[i];
    if (f.den().degree_in(system.state) > 0)
      throw StructuralError("right-hand side of " + name(system.state[i]) + " in " + system.id +
                            " is not polynomial in the state");
    degree = std::max(degree, f.num().degree_in(system.state));
  }
  return degree;
}

VerificationReport check_vector_field_degree(const VectorFieldSystem& system, std::optional<unsigned> expected) {
  if (!expected && system.id == "five_dim") expected = 3;
  return timed("degree." + system.id, [&](VerificationReport& r) {
    unsigned d = state_degree(system);
    r.notes.push_back("state degree " + std::to_string(d));
    if (expected && d != *expected) r.fail("expected degree " + std::to_string(*expected));
  });
}

VerificationReport check_vector_field_degree(std::string_view system_id) {
  return check_vector_field_degree(load_model(system_id));
}

VerificationReport check_symmetry(const VectorFieldSystem& system, const BirationalMap& map) {
  if (map.codomain || map.domain != system.id)
    throw StructuralError("map " + map.id + " is not a symmetry of " + system.id);
  std::string id = "symmetry." + map.id;
  if (map.disputed) id += "." + std::string(models::to_string(map.variant));
  auto report = timed(id, [&](VerificationReport& r) {
    const Derivation d = system.derivation();
    const Substitution pull = map.pullback(system.indep);
    const int eps = map.action.indep_sign;
    for (std::size_t i = 0; i < system.state.size(); ++i) {
      const SymbolId target = system.state[i];
      RatExpr lhs = d(map.image_of(target)) * RatExpr(eps);
      RatExpr rhs = substitute(system.rhs[i], pull, &symbols());
      residual(r, "d" + name(target), lhs - rhs, system.relation);
    }
    if (!map.action.preserves_normalization()) r.fail("parameter action leaves the normalization hyperplane");
  });
  attach_witness(report);
  return report;
}

VerificationReport check_symmetry(std::string_view system_id, std::string_view map_id, Variant variant) {
  return check_symmetry(load_model(system_id), load_map(map_id, variant));
}

VerificationReport check_first_integral(const VectorFieldSystem& system, const FirstIntegral& integral) {
  if (integral.system_id != system.id)
    throw StructuralError("integral " + integral.id + " belongs to " + integral.system_id);
  auto report = timed("integral." + integral.id, [&](VerificationReport& r) {
    RatExpr value = system.derivation()(integral.expr) - integral.expr * RatExpr(integral.lambda);
    residual(r, "D(" + integral.id + ") - lambda*" + integral.id, value, system.relation);
    r.notes.push_back("lambda " + weylsym::to_string(integral.lambda));
  });
  attach_witness(report);
  return report;
}

VerificationReport check_first_integral(std::string_view system_id, std::string_view integral_id) {
  return check_first_integral(load_model(system_id), models::load_integral(integral_id));
}

std::vector<MapComponent> triangular_inverse(const VectorFieldSystem& system, const BirationalMap& chart) {
  std::uint32_t unchanged = 0;
  std::vector<std::pair<SymbolId, RatExpr>> shifts;
  for (auto x : system.state) {
    RatExpr shift = chart.image_of(x) - RatExpr::var(x);
    if (shift.is_structurally_zero())
      unchanged |= 1u << x.index;
    else
      shifts.emplace_back(x, shift);
  }
  const std::uint32_t state = mask_of(system.state);
  std::vector<MapComponent> inverse;
  for (auto x : system.state) inverse.push_back({x, RatExpr::var(x)});
  for (const auto& [x, shift] : shifts) {
    if ((shift.support() & state) & ~unchanged)
      throw StructuralError("chart " + chart.id + " is not triangular in " + name(x));
    inverse[system.index_of(x)].image = RatExpr::var(x) - shift;
  }
  return inverse;
}

VerificationReport check_chart(const VectorFieldSystem& system, const BirationalMap& chart) {
  std::string id = "chart." + chart.id;
  if (chart.disputed) id += "." + std::string(models::to_string(chart.variant));
  auto report = timed(id, [&](VerificationReport& r) {
    const auto inverse = triangular_inverse(system, chart);
    Substitution back, forward;
    for (const auto& c : inverse) back.bind(c.target, c.image);
    for (auto x : system.state) forward.bind(x, chart.image_of(x));

    bool round_trip = true;
    for (std::size_t i = 0; i < system.state.size(); ++i) {
      const SymbolId x = system.state[i];
      RatExpr there = substitute(chart.image_of(x), back) - RatExpr::var(x);
      RatExpr again = substitute(inverse[i].image, forward) - RatExpr::var(x);
      if (!there.is_structurally_zero() || !again.is_structurally_zero()) round_trip = false;
      r.add_residual("inverse " + name(x), there, there.is_structurally_zero());
      r.add_residual("forward " + name(x), again, again.is_structurally_zero());
    }
    if (!round_trip) r.notes.push_back("inverse is not two-sided");

    std::vector<RatExpr> images;
    for (auto x : system.state) images.push_back(chart.image_of(x));
    RatExpr jac = jacobian_determinant(images, system.state) - RatExpr(1);
    residual(r, "jacobian - 1", jac, system.relation);

    const Derivation d = system.derivation();
    for (auto x : system.state) {
      RatExpr transported = reduce(substitute(d(chart.image_of(x)), back, &symbols()), system.relation);
      if (transported.is_polynomial() || exact_polynomial_quotient(transported.num(), transported.den())) {
        r.add_residual("polynomial d" + name(x), transported, true);
      } else {
        r.add_residual("polynomial d" + name(x), transported, false);
        r.notes.push_back("transported d" + name(x) + " has a non-polynomial part");
      }
    }
  });
  attach_witness(report);
  return report;
}

VerificationReport check_chart(std::string_view system_id, std::string_view chart_id, Variant variant) {
  return check_chart(load_model(system_id), load_map(chart_id, variant));
}

VerificationReport check_hamiltonian_consistency(const VectorFieldSystem& system) {
  if (!system.hamiltonian) throw StructuralError("system " + system.id + " has no Hamiltonian");
  auto report = timed("hamiltonian." + system.id, [&](VerificationReport& r) {
    const auto& h = *system.hamiltonian;
    for (const auto& pair : h.pairs) {
      residual(r, "d" + name(pair.coordinate) + " - dH/d" + name(pair.momentum),
               system.rhs_of(pair.coordinate) - h.value.partial(pair.momentum), system.relation);
      residual(r, "d" + name(pair.momentum) + " + dH/d" + name(pair.coordinate),
               system.rhs_of(pair.momentum) + h.value.partial(pair.coordinate), system.relation);
    }
    if (!h.parts.empty()) {
      RatExpr sum;
      for (const auto& part : h.parts) sum += part;
      residual(r, "H - sum of parts", h.value - sum, system.relation);
    }
  });
  attach_witness(report);
  return report;
}

VerificationReport check_hamiltonian_consistency(std::string_view system_id) {
  return check_hamiltonian_consistency(load_model(system_id));
}

VerificationReport check_reduction_5d_to_4d(std::optional<RatExpr> y_substitution) {
  auto report = timed("reduction.5d_to_4d", [&](VerificationReport& r) {
    const auto& five = load_model("five_dim");
    const auto& ham = load_model("ham_4d");
    const auto& reduce_map = load_map("reduce_5d_4d");

    // d/dt on the five-dimensional ring, with s = exp(-t) adjoined.
    Derivation dt = five.derivation();
    dt.set(sym::s, -RatExpr::var(sym::s));

    Substitution back_without_y;
    RatExpr y_new;
    for (const auto& c : reduce_map.inverse) {
      if (c.target == sym::y)
        y_new = c.image;
      else
        back_without_y.bind(c.target, c.image);
    }
    if (y_substitution) y_new = substitute(*y_substitution, back_without_y);
    Substitution back = back_without_y;
    back.bind(sym::y, y_new);

    const RatExpr minus_inv_s = RatExpr(-1) / RatExpr::var(sym::s);
    for (const auto& c : reduce_map.components) {
      RatExpr ds = minus_inv_s * substitute(dt(c.image), back, &symbols());
      residual(r, "d" + name(c.target) + "/ds", ds - ham.rhs_of(c.target), ham.relation);
    }
  });
  attach_witness(report);
  return report;
}

VerificationReport check_second_order_single(const VectorFieldSystem& xzw, const VectorFieldSystem& target) {
  auto report = timed("second_order." + xzw.id, [&](VerificationReport& r) {
    const RatExpr& f = xzw.rhs_of(sym::x);
    RatExpr second = xzw.derivation()(f);
    RatExpr w_of_v = solve_affine(f, sym::w, RatExpr::var(sym::v));
    RatExpr eliminated = substitute(second, Substitution().bind(sym::w, w_of_v), &symbols());
    residual(r, "x''", eliminated - target.rhs_of(sym::v), target.relation);
    residual(r, "x'", RatExpr::var(sym::v) - target.rhs_of(sym::x), target.relation);
  });
  attach_witness(report);
  return report;
}

VerificationReport check_second_order_coupled(const VectorFieldSystem& ham, const VectorFieldSystem& target) {
  auto report = timed("second_order." + ham.id, [&](VerificationReport& r) {
    const RatExpr& g1 = ham.rhs_of(sym::p1);
    const RatExpr& g2 = ham.rhs_of(sym::p2);
    const Derivation d = ham.derivation();
    Substitution elim;
    elim.bind(sym::q1, solve_affine(g1, sym::q1, RatExpr::var(sym::v1)));
    elim.bind(sym::q2, solve_affine(g2, sym::q2, RatExpr::var(sym::v2)));
    residual(r, "p1''", substitute(d(g1), elim, &symbols()) - target.rhs_of(sym::v1), target.relation);
    residual(r, "p2''", substitute(d(g2), elim, &symbols()) - target.rhs_of(sym::v2), target.relation);
  });
  attach_witness(report);
  return report;
}

VerificationReport check_second_order_forms() {
  auto single = check_second_order_single(load_model("xzw"), load_model("second_order_x"));
  auto coupled = check_second_order_coupled(load_model("ham_4d"), load_model("coupled_second_order"));
  VerificationReport r;
  r.check_id = "second_order_forms";
  for (auto* part : {&single, &coupled}) {
    for (auto& res : part->residuals) r.residuals.push_back({part->check_id + " " + res.label, res.value});
    if (!part->passed()) r.fail(part->check_id + " failed");
    if (!r.witness && part->witness) r.witness = part->witness, r.seed = part->seed;
    r.millis += part->millis;
  }
  return r;
}

VerificationReport check_particular_solution(const ParticularSolution& sol) {
  const auto& system = load_model(sol.system_id);
  auto report = timed("solution." + sol.id, [&](VerificationReport& r) {
    Substitution bind;
    for (const auto& c : sol.bindings) bind.bind(c.target, c.image);
    for (const auto& c : sol.param_bindings) bind.bind(c.target, c.image);

    if (sol.kind == ParticularSolution::Kind::Explicit) {
      Derivation d;
      d.set(system.indep, RatExpr(1));
      for (const auto& rule : sol.generator_rules) d.set(rule.target, rule.image);
      for (std::size_t i = 0; i < system.state.size(); ++i) {
        const SymbolId x = system.state[i];
        if (!bind.binds(x)) throw StructuralError("solution " + sol.id + " does not bind " + name(x));
        RatExpr value = d(bind.value(x)) - substitute(system.rhs[i], bind, &symbols());
        r.add_residual("d" + name(x), value, value.is_structurally_zero());
      }
      return;
    }

    // Restriction: bound components stay put, the rest reproduce the reduced system.
    if (!sol.reduces_to) throw StructuralError("restriction " + sol.id + " names no reduced system");
    const auto& reduced = load_model(*sol.reduces_to);
    for (std::size_t i = 0; i < system.state.size(); ++i) {
      const SymbolId x = system.state[i];
      RatExpr restricted = substitute(system.rhs[i], bind, &symbols());
      if (bind.binds(x)) {
        RatExpr value = Derivation()(bind.value(x)) - restricted;
        r.add_residual("d" + name(x) + " on the locus", value, value.is_structurally_zero());
      } else if (is_state(reduced, x)) {
        RatExpr value = restricted - reduced.rhs_of(x);
        r.add_residual("d" + name(x) + " vs " + reduced.id, value, value.is_structurally_zero());
      } else {
        r.fail(name(x) + " is neither bound nor a state of " + reduced.id);
      }
    }
    for (auto x : reduced.state)
      if (bind.binds(x) || !is_state(system, x)) r.fail(name(x) + " of " + reduced.id + " is not a free state");
  });
  attach_witness(report);
  return report;
}

VerificationReport check_particular_solution(std::string_view solution_id) {
  return check_particular_solution(models::load_particular_solution(solution_id));
}

VerificationReport check_invariant_divisor() {
  auto report = timed("invariant_divisor.y", [&](VerificationReport& r) {
    const auto& five = load_model("five_dim");
    const RatExpr& fy = five.rhs_of(sym::y);
    const Poly y = Poly::var(sym::y);

    RatExpr special = substitute(fy, Substitution().bind(sym::a1, RatExpr(0)));
    auto quotient = exact_polynomial_quotient(special.num(), y);
    if (quotient && special.is_polynomial())
      r.notes.push_back("a1=0: dy/dt = y*(" + weylsym::to_string(*quotient, symbols()) + ")");
    else
      r.fail("with a1=0, dy/dt is not divisible by y");

    if (exact_polynomial_quotient(fy.num(), y))
      r.fail("with a1 free, dy/dt is divisible by y");
    else
      r.notes.push_back("a1 free: not divisible");

    const auto& reduced = load_model("reduced_alpha1_zero");
    Substitution on_divisor;
    on_divisor.bind(sym::y, RatExpr(0)).bind(sym::a1, RatExpr(0));
    for (auto x : reduced.state) {
      RatExpr value = substitute(five.rhs_of(x), on_divisor) - reduced.rhs_of(x);
      r.add_residual("d" + name(x) + " vs " + reduced.id, value, value.is_structurally_zero());
    }
  });
  attach_witness(report);
  return report;
}

VerificationReport check_disputed(std::string_view check_id, std::string_view system_id, std::string_view map_id,
                                  bool chart) {
  const auto& system = load_model(system_id);
  VerificationReport r;
  r.check_id = std::string(check_id);
  std::vector<Variant> verified;
  std::vector<VerificationReport> parts;
  for (Variant v : {Variant::Printed, Variant::Corrected}) {
    const auto& map = load_map(map_id, v);
    parts.push_back(chart ? check_chart(system, map) : check_symmetry(system, map));
    const auto& part = parts.back();
    const std::string tag(models::to_string(v));
    r.notes.push_back(tag + " " + std::string(to_string(part.status)));
    if (part.passed()) {
      verified.push_back(v);
    } else {
      for (const auto& res : part.residuals)
        if (res.value) r.notes.push_back(tag + " residual " + res.label + " = " + weylsym::to_string(*res.value, symbols()));
      if (!r.witness) r.witness = part.witness, r.seed = part.seed;
    }
    r.millis += part.millis;
  }
  if (verified.size() == 1) {
    r.resolved_variant = std::string(models::to_string(verified.front()));
    r.notes.push_back("resolved " + *r.resolved_variant);
    for (const auto& part : parts)
      if (part.passed()) r.residuals = part.residuals;
  } else {
    r.fail(verified.empty() ? "neither variant verifies" : "both variants verify");
  }
  return r;
}

}  // namespace weylsym::verify
