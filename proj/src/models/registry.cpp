#include <algorithm>
#include <stdexcept>

#include "weylsym/models.hpp"
#include "weylsym/symcore/text.hpp"

namespace weylsym::models {

const SymbolTable& symbols() {
  static const SymbolTable table{
      {"x", SymbolKind::State},        {"y", SymbolKind::State},
      {"z", SymbolKind::State},        {"w", SymbolKind::State},
      {"q", SymbolKind::State},        {"t", SymbolKind::Independent},
      {"q1", SymbolKind::State},       {"p1", SymbolKind::State},
      {"q2", SymbolKind::State},       {"p2", SymbolKind::State},
      {"s", SymbolKind::Independent},  {"x1", SymbolKind::State},
      {"y1", SymbolKind::State},       {"a0", SymbolKind::Parameter},
      {"a1", SymbolKind::Parameter},   {"a2", SymbolKind::Parameter},
      {"eta", SymbolKind::Constant},   {"C1", SymbolKind::Constant},
      {"C2", SymbolKind::Constant},    {"E", SymbolKind::ExpGenerator},
      {"E1", SymbolKind::ExpGenerator}, {"E2", SymbolKind::ExpGenerator},
      {"v", SymbolKind::State},        {"v1", SymbolKind::State},
      {"v2", SymbolKind::State},
  };
  return table;
}

const LinearRelation& normalization() {
  static const LinearRelation rel{sym::a1, Poly(1) - Poly::var(sym::a0) - Poly::var(sym::a2)};
  return rel;
}

RatExpr expr(std::string_view text) { return parse_expression(text, symbols()); }

std::string_view to_string(Variant v) { return v == Variant::Printed ? "printed" : "corrected"; }

Variant parse_variant(std::string_view text) {
  if (text == "printed") return Variant::Printed;
  if (text == "corrected") return Variant::Corrected;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

std::size_t VectorFieldSystem::index_of(SymbolId sid) const {
  auto it = std::find(state.begin(), state.end(), sid);
  if (it == state.end()) throw std::out_of_range("symbol is not a state of system " + id);
  return static_cast<std::size_t>(it - state.begin());
}

Derivation VectorFieldSystem::derivation() const {
  Derivation d;
  for (std::size_t i = 0; i < state.size(); ++i) d.set(state[i], rhs[i]);
  d.set(indep, RatExpr(1));
  return d;
}

ParameterAction ParameterAction::after(const ParameterAction& other) const {
  ParameterAction r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int acc = 0;
      for (int k = 0; k < 3; ++k) acc += matrix[i][k] * other.matrix[k][j];
      r.matrix[i][j] = acc;
    }
    int off = offset[i];
    for (int k = 0; k < 3; ++k) off += matrix[i][k] * other.offset[k];
    r.offset[i] = off;
  }
  r.eta_sign = eta_sign * other.eta_sign;
  r.indep_sign = indep_sign * other.indep_sign;
  return r;
}

std::array<Rational, 3> ParameterAction::apply(const std::array<Rational, 3>& alpha) const {
  std::array<Rational, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = offset[i];
    for (int j = 0; j < 3; ++j) out[i] += matrix[i][j] * alpha[j];
  }
  return out;
}

bool ParameterAction::preserves_normalization() const {
  for (int j = 0; j < 3; ++j)
    if (matrix[0][j] + matrix[1][j] + matrix[2][j] != 1) return false;
  return offset[0] + offset[1] + offset[2] == 0;
}

const RatExpr& BirationalMap::image_of(SymbolId target) const {
  for (const auto& c : components)
    if (c.target == target) return c.image;
  throw std::out_of_range("map " + id + " has no component for the requested symbol");
}

Substitution BirationalMap::pullback(SymbolId indep) const {
  Substitution sub;
  for (const auto& c : components) sub.bind(c.target, c.image);
  const SymbolId alphas[3] = {sym::a0, sym::a1, sym::a2};
  for (int i = 0; i < 3; ++i) {
    Poly image(action.offset[i]);
    for (int j = 0; j < 3; ++j) image += Poly::var(alphas[j]).scaled(action.matrix[i][j]);
    sub.bind(alphas[i], RatExpr(image));
  }
  if (action.eta_sign != 1) sub.bind(sym::eta, -RatExpr::var(sym::eta));
  if (indep_kind == IndepKind::Sign && action.indep_sign != 1) sub.bind(indep, -RatExpr::var(indep));
  return sub;
}

std::vector<RatExpr> transport_rhs(const VectorFieldSystem& system, const BirationalMap& map) {
  Derivation d = system.derivation();
  Substitution back;
  for (const auto& c : map.inverse) back.bind(c.target, c.image);
  std::vector<RatExpr> out;
  out.reserve(map.components.size());
  for (const auto& c : map.components) out.push_back(substitute(d(c.image), back, &symbols()));
  return out;
}

namespace {

using Action = ParameterAction;

Action reflection_s0() { return {{{{-1, 0, 0}, {2, 1, 0}, {0, 0, 1}}}, {0, 0, 0}, 1, 1}; }
Action reflection_s1() { return {{{{1, 1, 0}, {0, -1, 0}, {0, 1, 1}}}, {0, 0, 0}, 1, 1}; }
Action reflection_s2() { return {{{{1, 0, 0}, {0, 1, 2}, {0, 0, -1}}}, {0, 0, 0}, 1, 1}; }

Action with_signs(Action a, int eta_sign, int indep_sign) {
  a.eta_sign = eta_sign;
  a.indep_sign = indep_sign;
  return a;
}

std::vector<MapComponent> components(std::initializer_list<std::pair<SymbolId, const char*>> list) {
  std::vector<MapComponent> out;
  for (const auto& [target, text] : list) out.push_back({target, expr(text)});
  return out;
}

VectorFieldSystem make_system(std::string id, std::vector<SymbolId> state, SymbolId indep,
                              std::vector<SymbolId> params, std::initializer_list<const char*> rhs,
                              bool relation) {
  VectorFieldSystem sys;
  sys.id = std::move(id);
  sys.state = std::move(state);
  sys.indep = indep;
  sys.params = std::move(params);
  for (const char* r : rhs) sys.rhs.push_back(expr(r));
  if (relation) sys.relation = normalization();
  return sys;
}

VectorFieldSystem restrict_system(const VectorFieldSystem& from, std::string id,
                                  std::vector<SymbolId> keep, std::vector<SymbolId> zeroed) {
  Substitution zero;
  for (auto z : zeroed) zero.bind(z, RatExpr(0));
  VectorFieldSystem sys;
  sys.id = std::move(id);
  sys.indep = from.indep;
  sys.params = from.params;
  sys.relation = from.relation;
  for (auto k : keep) {
    sys.state.push_back(k);
    sys.rhs.push_back(substitute(from.rhs_of(k), zero));
  }
  return sys;
}

ModelSet build() {
  using namespace sym;
  ModelSet set;
  auto& systems = set.systems;

  systems.push_back(make_system("five_dim", {x, y, z, w, q}, t, {a0, a1, a2},
                                {
                                    "-(x*w - a2)*x + 1/2",
                                    "(x*w + z*q - 1)*y + a1*w*q",
                                    "-(z*q - a0)*z - eta/2",
                                    "(x*w - z*q - a2)*w + y*z",
                                    "(z*q - x*w - a0)*q + x*y",
                                },
                                true));
  systems.push_back(make_system("reduced_alpha1_zero", {x, z, w, q}, t, {a0, a2},
                                {
                                    "-(x*w - a2)*x + 1/2",
                                    "-(z*q - a0)*z - eta/2",
                                    "(x*w - z*q - a2)*w",
                                    "(z*q - x*w - a0)*q",
                                },
                                false));
  systems.push_back(make_system("linear_xz", {x, z}, t, {a0, a2},
                                {"a2*x + 1/2", "a0*z - eta/2"}, false));
  systems.push_back(make_system("xzw", {x, z, w}, t, {a0, a2},
                                {"-(x*w - a2)*x + 1/2", "a0*z - eta/2", "(x*w - a2)*w"}, false));
  systems.push_back(make_system("second_order_x", {x, v}, t, {a2},
                                {"v", "v^2/x - a2/2 - 1/(4*x)"}, false));

  VectorFieldSystem ham = make_system("ham_4d", {q1, p1, q2, p2}, s, {a0, a1, a2},
                                      {
                                          "-q1^2*p1/s + a2*q1/s - p2/s",
                                          "q1*p1^2/s - a2*p1/s - 1/(2*s)",
                                          "-q2^2*p2/s - (a1 + a2)*q2/s - p1/s",
                                          "q2*p2^2/s + (a1 + a2)*p2/s + eta/2",
                                      },
                                      true);
  const RatExpr k1 = expr("-(q1^2*p1^2 - 2*a2*q1*p1 - q1)/(2*s)");
  const RatExpr k2 = expr("-(q2^2*p2^2 + 2*(a1 + a2)*q2*p2 + eta*s*q2)/(2*s)");
  ham.hamiltonian = Hamiltonian{
      expr("-(q1^2*p1^2 - 2*a2*q1*p1 - q1)/(2*s) - (q2^2*p2^2 + 2*(a1 + a2)*q2*p2 + eta*s*q2)/(2*s)"
           " - p1*p2/s"),
      {{q1, p1}, {q2, p2}},
      {k1, k2, expr("-p1*p2/s")}};
  systems.push_back(ham);

  VectorFieldSystem k1_sys = restrict_system(ham, "K1_sys", {q1, p1}, {q2, p2});
  k1_sys.hamiltonian = Hamiltonian{k1, {{q1, p1}}, {}};
  systems.push_back(k1_sys);

  VectorFieldSystem k2_sys = restrict_system(ham, "K2_sys", {q2, p2}, {q1, p1});
  k2_sys.hamiltonian = Hamiltonian{k2, {{q2, p2}}, {}};
  systems.push_back(k2_sys);

  BirationalMap scale;
  scale.id = "scale_step";
  scale.domain = "K2_sys";
  scale.codomain = "tildeK2_sys";
  scale.components = components({{x1, "s*q2"}, {y1, "p2/s"}});
  scale.inverse = components({{q2, "x1/s"}, {p2, "s*y1"}});

  VectorFieldSystem tilde;
  tilde.id = "tildeK2_sys";
  tilde.state = {x1, y1};
  tilde.indep = s;
  tilde.params = {a0, a1, a2};
  tilde.relation = normalization();
  tilde.rhs = transport_rhs(k2_sys, scale);
  tilde.hamiltonian =
      Hamiltonian{expr("-(x1^2*y1^2 + 2*(a1 + a2 - 1)*x1*y1 + eta*x1)/(2*s)"), {{x1, y1}}, {}};
  systems.push_back(tilde);

  systems.push_back(make_system(
      "coupled_second_order", {p1, v1, p2, v2}, s, {a0, a1, a2},
      {
          "v1",
          "v1^2/p1 - v1/s - a2/(2*s^2) - 1/(4*s^2*p1) - p1^2*p2/s^2",
          "v2",
          "v2^2/p2 - v2/s + a0*eta/(2*s) - eta^2/(4*p2) - p1*p2^2/s^2",
      },
      true));

  // --- maps ---------------------------------------------------------------
  auto& maps = set.maps;
  auto add_map = [&maps](std::string id, Variant variant, std::string domain,
                         std::vector<MapComponent> comps, Action action, bool disputed) {
    BirationalMap m;
    m.id = std::move(id);
    m.variant = variant;
    m.domain = std::move(domain);
    m.components = std::move(comps);
    m.action = action;
    m.disputed = disputed;
    maps.push_back(std::move(m));
  };

  add_map("s0_5d", Variant::Printed, "five_dim",
          components({{x, "x"},
                      {y, "y - 2*a0*w/z + eta*w/z^2"},
                      {z, "z"},
                      {w, "w"},
                      {q, "q - 2*a0/z + eta/z^2"}}),
          with_signs(reflection_s0(), -1, 1), false);
  add_map("s1_5d", Variant::Printed, "five_dim",
          components({{x, "x + a1*q/y"}, {y, "y"}, {z, "z + a1*w/y"}, {w, "w"}, {q, "q"}}),
          reflection_s1(), false);
  for (auto [variant, coeff] : {std::pair{Variant::Printed, "a0"}, std::pair{Variant::Corrected, "a2"}}) {
    std::string wimg = std::string("-w + 2*") + coeff + "/x + 1/x^2";
    std::vector<MapComponent> comps = components({{x, "-x"}, {y, "y - 2*a2*q/x - q/x^2"}, {z, "-z"}});
    comps.push_back({w, expr(wimg)});
    comps.push_back({q, expr("-q")});
    add_map("s2_5d", variant, "five_dim", std::move(comps), with_signs(reflection_s2(), -1, 1), true);
  }

  add_map("chart0", Variant::Printed, "five_dim",
          components({{x, "x"},
                      {y, "y - 2*a0*w/z + eta*w/z^2"},
                      {z, "z"},
                      {w, "w"},
                      {q, "q - 2*a0/z + eta/z^2"}}),
          Action::identity(), false);
  add_map("chart1", Variant::Printed, "five_dim",
          components({{x, "x + a1*q/y"}, {y, "y"}, {z, "z + a1*w/y"}, {w, "w"}, {q, "q"}}),
          Action::identity(), false);
  for (auto [variant, coeff] : {std::pair{Variant::Printed, "a0"}, std::pair{Variant::Corrected, "a2"}}) {
    std::string wimg = std::string("w - 2*") + coeff + "/x - 1/x^2";
    std::vector<MapComponent> comps = components({{x, "x"}, {y, "y - 2*a2*q/x - q/x^2"}, {z, "z"}});
    comps.push_back({w, expr(wimg)});
    comps.push_back({q, expr("q")});
    add_map("chart2", variant, "five_dim", std::move(comps), Action::identity(), true);
  }

  add_map("s0_4d", Variant::Printed, "ham_4d",
          components({{q1, "q1"}, {p1, "p1"}, {q2, "q2 - 2*a0/p2 + eta*s/p2^2"}, {p2, "p2"}}),
          with_signs(reflection_s0(), 1, -1), false);
  add_map("s1_4d", Variant::Printed, "ham_4d",
          components({{q1, "q1"},
                      {p1, "p1 + a1*q2/(q1*q2 + 1)"},
                      {q2, "q2"},
                      {p2, "p2 + a1*q1/(q1*q2 + 1)"}}),
          reflection_s1(), false);
  for (auto [variant, eta_sign] : {std::pair{Variant::Printed, -1}, std::pair{Variant::Corrected, 1}}) {
    add_map("s2_4d", variant, "ham_4d",
            components({{q1, "-q1 + 2*a2/p1 + 1/p1^2"}, {p1, "-p1"}, {q2, "-q2"}, {p2, "-p2"}}),
            with_signs(reflection_s2(), eta_sign, -1), true);
  }
  add_map("pi_4d", Variant::Printed, "ham_4d",
          components({{q1, "-eta*s*q2"}, {p1, "-p2/(eta*s)"}, {q2, "-q1/(eta*s)"}, {p2, "-eta*s*p1"}}),
          {{{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}, {0, 0, 0}, 1, 1}, false);

  BirationalMap reduce;
  reduce.id = "reduce_5d_4d";
  reduce.domain = "five_dim";
  reduce.codomain = "ham_4d";
  reduce.indep_kind = IndepKind::ExpNeg;
  reduce.components = components({{q1, "w"}, {p1, "x"}, {q2, "q/s"}, {p2, "z*s"}});
  reduce.inverse = components({{w, "q1"}, {x, "p1"}, {q, "q2*s"}, {z, "p2/s"}, {y, "q1*q2*s + s"}});
  maps.push_back(std::move(reduce));
  maps.push_back(std::move(scale));

  // --- integrals ------------------------------------------------------------
  set.integrals.push_back({"ywq", "five_dim", expr("y - w*q"), Rational(-1)});
  set.integrals.push_back({"I1", "K1_sys", expr("q1^2*p1^2 - 2*a2*q1*p1 - q1"), Rational(0)});
  set.integrals.push_back(
      {"I2", "tildeK2_sys", expr("x1^2*y1^2 + 2*(a1 + a2 - 1)*x1*y1 + eta*x1"), Rational(0)});

  // --- particular solutions -------------------------------------------------
  {
    ParticularSolution sol;
    sol.id = "linear_xz_sol";
    sol.system_id = "linear_xz";
    sol.bindings = components({{x, "C1*E1 - 1/(2*a2)"}, {z, "C2*E2 + eta/(2*a0)"}});
    sol.generator_rules = components({{E1, "a2*E1"}, {E2, "a0*E2"}});
    set.solutions.push_back(std::move(sol));
  }
  // E stands for exp(C1*(t + C2)); the second binding is the derivative of the first.
  for (auto [id, text] : {std::pair{"second_order_sol_a", "((E - a2)^2 - C1^2)/(4*C1^2*E)"},
                          std::pair{"second_order_sol_b",
                                    "(E^2*(a2^2 - C1^2) - 2*a2*E + 1)/(4*C1^2*E)"}}) {
    ParticularSolution sol;
    sol.id = id;
    sol.system_id = "second_order_x";
    sol.generator_rules = components({{E, "C1*E"}});
    Derivation d;
    d.set(E, expr("C1*E"));
    RatExpr xs = expr(text);
    sol.bindings = {{x, xs}, {v, d(xs)}};
    set.solutions.push_back(std::move(sol));
  }
  {
    ParticularSolution sol;
    sol.id = "rest_wq_zero";
    sol.system_id = "five_dim";
    sol.kind = ParticularSolution::Kind::Restriction;
    sol.bindings = components({{y, "0"}, {w, "0"}, {q, "0"}});
    sol.param_bindings = components({{a1, "0"}});
    sol.reduces_to = "linear_xz";
    set.solutions.push_back(std::move(sol));
  }
  {
    ParticularSolution sol;
    sol.id = "rest_q_zero";
    sol.system_id = "five_dim";
    sol.kind = ParticularSolution::Kind::Restriction;
    sol.bindings = components({{y, "0"}, {q, "0"}});
    sol.param_bindings = components({{a1, "0"}});
    sol.reduces_to = "xzw";
    set.solutions.push_back(std::move(sol));
  }
  return set;
}

template <typename T>
const T& find_by_id(const std::vector<T>& items, std::string_view id, const char* what) {
  for (const auto& item : items)
    if (item.id == id) return item;
  throw std::out_of_range(std::string("unknown ") + what + " '" + std::string(id) + "'");
}

}  // namespace

const ModelSet& registry() {
  static const ModelSet set = build();
  return set;
}

const VectorFieldSystem& load_model(std::string_view id) {
  return find_by_id(registry().systems, id, "model");
}

bool is_disputed(std::string_view map_id) {
  for (const auto& m : registry().maps)
    if (m.id == map_id && m.disputed) return true;
  return false;
}

const BirationalMap& load_map(std::string_view id, Variant variant) {
  bool known = false;
  for (const auto& m : registry().maps) {
    if (m.id != id) continue;
    known = true;
    if (m.variant == variant) return m;
  }
  if (!known) throw std::out_of_range("unknown map '" + std::string(id) + "'");
  throw std::invalid_argument("map '" + std::string(id) + "' has no " + std::string(to_string(variant)) +
                              " variant");
}

const FirstIntegral& load_integral(std::string_view id) {
  return find_by_id(registry().integrals, id, "integral");
}

const ParticularSolution& load_particular_solution(std::string_view id) {
  return find_by_id(registry().solutions, id, "particular solution");
}

std::vector<std::string> model_ids() {
  std::vector<std::string> out;
  for (const auto& s : registry().systems) out.push_back(s.id);
  return out;
}

std::vector<std::string> map_ids() {
  std::vector<std::string> out;
  for (const auto& m : registry().maps)
    if (std::find(out.begin(), out.end(), m.id) == out.end()) out.push_back(m.id);
  return out;
}

}  // namespace weylsym::models
