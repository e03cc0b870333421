#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weylsym/symcore/ratexpr.hpp"

namespace weylsym::models {

/// The symbol universe shared by every registered model.
const SymbolTable& symbols();

namespace sym {
inline constexpr SymbolId x{0}, y{1}, z{2}, w{3}, q{4}, t{5};
inline constexpr SymbolId q1{6}, p1{7}, q2{8}, p2{9}, s{10}, x1{11}, y1{12};
inline constexpr SymbolId a0{13}, a1{14}, a2{15}, eta{16}, C1{17}, C2{18};
inline constexpr SymbolId E{19}, E1{20}, E2{21}, v{22}, v1{23}, v2{24};
}  // namespace sym

/// a1 = 1 - a0 - a2.
const LinearRelation& normalization();

/// Parses an expression over the shared symbol universe.
RatExpr expr(std::string_view text);

enum class Variant { Printed, Corrected };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

struct HamiltonianPair {
  SymbolId coordinate;
  SymbolId momentum;
};

/// dq/du = +dH/dp, dp/du = -dH/dq for every pair.
struct Hamiltonian {
  RatExpr value;
  std::vector<HamiltonianPair> pairs;
  /// Printed decomposition whose sum must equal `value` (may be empty).
  std::vector<RatExpr> parts;
};

struct VectorFieldSystem {
  std::string id;
  std::vector<SymbolId> state;
  SymbolId indep;
  std::vector<SymbolId> params;
  std::vector<RatExpr> rhs;
  std::optional<LinearRelation> relation;
  std::optional<Hamiltonian> hamiltonian;

  std::size_t index_of(SymbolId id) const;
  const RatExpr& rhs_of(SymbolId id) const { return rhs.at(index_of(id)); }
  /// d/d(indep) along the flow: state -> rhs, indep -> 1.
  Derivation derivation() const;
};

/// Affine action alpha -> M alpha + offset on (a0, a1, a2), plus the signs
/// applied to eta and to the independent variable.
struct ParameterAction {
  std::array<std::array<int, 3>, 3> matrix{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::array<int, 3> offset{0, 0, 0};
  int eta_sign = 1;
  int indep_sign = 1;

  static ParameterAction identity() { return {}; }
  /// (this o other): apply `other` first.
  ParameterAction after(const ParameterAction& other) const;
  std::array<Rational, 3> apply(const std::array<Rational, 3>& alpha) const;
  /// Column sums one and offsets summing to zero.
  bool preserves_normalization() const;
  bool operator==(const ParameterAction&) const = default;
};

enum class IndepKind {
  Sign,    // u -> indep_sign * u
  ExpNeg,  // new independent variable s = exp(-u)
};

struct MapComponent {
  SymbolId target;
  RatExpr image;
};

struct BirationalMap {
  std::string id;
  Variant variant = Variant::Printed;
  std::string domain;
  std::optional<std::string> codomain;  // set when the map changes variables
  std::vector<MapComponent> components;
  ParameterAction action;
  IndepKind indep_kind = IndepKind::Sign;
  /// Explicit inverse (domain symbol <- expression in target symbols).
  std::vector<MapComponent> inverse;
  bool disputed = false;

  const RatExpr& image_of(SymbolId target) const;
  /// Bindings for pulling a formula back through the map: state, parameters,
  /// eta and the independent variable.
  Substitution pullback(SymbolId indep) const;
};

struct FirstIntegral {
  std::string id;
  std::string system_id;
  RatExpr expr;
  Rational lambda;
};

struct ParticularSolution {
  enum class Kind { Explicit, Restriction };
  std::string id;
  std::string system_id;
  Kind kind = Kind::Explicit;
  std::vector<MapComponent> bindings;
  std::vector<MapComponent> param_bindings;
  std::vector<MapComponent> generator_rules;
  std::optional<std::string> reduces_to;
};

struct ModelSet {
  std::vector<VectorFieldSystem> systems;
  std::vector<BirationalMap> maps;
  std::vector<FirstIntegral> integrals;
  std::vector<ParticularSolution> solutions;
};

/// Immutable registry, built once on first use.
const ModelSet& registry();

const VectorFieldSystem& load_model(std::string_view id);
/// Throws std::invalid_argument when `corrected` is requested for an
/// undisputed map, std::out_of_range for unknown ids.
const BirationalMap& load_map(std::string_view id, Variant variant = Variant::Printed);
const FirstIntegral& load_integral(std::string_view id);
const ParticularSolution& load_particular_solution(std::string_view id);
bool is_disputed(std::string_view map_id);

std::vector<std::string> model_ids();
std::vector<std::string> map_ids();

/// new_rhs_k(target coords) = D(image_k) rewritten through `inverse`.
std::vector<RatExpr> transport_rhs(const VectorFieldSystem& system, const BirationalMap& map);

std::string dump(const ModelSet& set);
ModelSet parse_models(std::string_view text);

}  // namespace weylsym::models
