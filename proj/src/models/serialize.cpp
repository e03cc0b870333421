#include <sstream>
#include <stdexcept>

#include "weylsym/models.hpp"
#include "weylsym/symcore/text.hpp"

// Text format: one block per object, "<kind> <id> [variant]" ... "end".
// Expressions use the canonical infix printer so a dump parses back to an
// identical dump.

namespace weylsym::models {

namespace {

const std::string& name(SymbolId id) { return symbols().name(id); }
std::string str(const RatExpr& e) { return weylsym::to_string(e, symbols()); }
std::string str(const Rational& r) { return weylsym::to_string(r); }

std::string names(const std::vector<SymbolId>& ids) {
  std::string out;
  for (auto id : ids) out += (out.empty() ? "" : " ") + name(id);
  return out;
}

void dump_components(std::ostringstream& os, const char* key, const std::vector<MapComponent>& comps) {
  for (const auto& c : comps) os << "  " << key << ' ' << name(c.target) << " = " << str(c.image) << '\n';
}

}  // namespace

std::string dump(const ModelSet& set) {
  std::ostringstream os;
  for (const auto& sys : set.systems) {
    os << "system " << sys.id << '\n';
    os << "  indep " << name(sys.indep) << '\n';
    os << "  state " << names(sys.state) << '\n';
    os << "  params " << names(sys.params) << '\n';
    if (sys.relation)
      os << "  relation " << name(sys.relation->eliminated) << " = " << str(RatExpr(sys.relation->replacement))
         << '\n';
    for (std::size_t i = 0; i < sys.state.size(); ++i)
      os << "  d " << name(sys.state[i]) << " = " << str(sys.rhs[i]) << '\n';
    if (sys.hamiltonian) {
      os << "  hamiltonian " << str(sys.hamiltonian->value) << '\n';
      for (const auto& p : sys.hamiltonian->pairs)
        os << "  pair " << name(p.coordinate) << ' ' << name(p.momentum) << '\n';
      for (const auto& part : sys.hamiltonian->parts) os << "  part " << str(part) << '\n';
    }
    os << "end\n\n";
  }
  for (const auto& m : set.maps) {
    os << "map " << m.id << ' ' << to_string(m.variant) << '\n';
    os << "  domain " << m.domain << '\n';
    if (m.codomain) os << "  codomain " << *m.codomain << '\n';
    if (m.disputed) os << "  disputed\n";
    os << "  indep " << (m.indep_kind == IndepKind::ExpNeg ? "exp_neg" : "sign") << ' '
       << m.action.indep_sign << '\n';
    os << "  eta_sign " << m.action.eta_sign << '\n';
    os << "  matrix";
    for (const auto& row : m.action.matrix)
      for (int v : row) os << ' ' << v;
    os << '\n';
    os << "  offset " << m.action.offset[0] << ' ' << m.action.offset[1] << ' ' << m.action.offset[2] << '\n';
    dump_components(os, "map", m.components);
    dump_components(os, "inverse", m.inverse);
    os << "end\n\n";
  }
  for (const auto& fi : set.integrals) {
    os << "integral " << fi.id << '\n';
    os << "  system " << fi.system_id << '\n';
    os << "  lambda " << str(fi.lambda) << '\n';
    os << "  expr " << str(fi.expr) << '\n';
    os << "end\n\n";
  }
  for (const auto& sol : set.solutions) {
    os << "solution " << sol.id << '\n';
    os << "  system " << sol.system_id << '\n';
    os << "  kind " << (sol.kind == ParticularSolution::Kind::Explicit ? "explicit" : "restriction") << '\n';
    if (sol.reduces_to) os << "  reduces_to " << *sol.reduces_to << '\n';
    dump_components(os, "rule", sol.generator_rules);
    dump_components(os, "param", sol.param_bindings);
    dump_components(os, "bind", sol.bindings);
    os << "end\n\n";
  }
  return os.str();
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : in_(std::string(text)) {}

  bool next(std::string& key, std::string& rest) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto first = line.find_first_not_of(' ');
      if (first == std::string::npos) continue;
      line = line.substr(first);
      auto sp = line.find(' ');
      key = line.substr(0, sp);
      rest = sp == std::string::npos ? "" : line.substr(sp + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("model text line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

std::vector<SymbolId> parse_names(const std::string& text) {
  std::istringstream is(text);
  std::vector<SymbolId> out;
  std::string n;
  while (is >> n) out.push_back(symbols().at(n));
  return out;
}

MapComponent parse_component(const std::string& rest, const Reader& r) {
  auto eq = rest.find(" = ");
  if (eq == std::string::npos) r.fail("expected '<symbol> = <expr>'");
  return {symbols().at(rest.substr(0, eq)), expr(rest.substr(eq + 3))};
}

std::pair<std::string, std::string> split_head(const std::string& rest) {
  auto sp = rest.find(' ');
  if (sp == std::string::npos) return {rest, ""};
  return {rest.substr(0, sp), rest.substr(sp + 1)};
}

}  // namespace

ModelSet parse_models(std::string_view text) {
  ModelSet set;
  Reader r(text);
  std::string key, rest;
  while (r.next(key, rest)) {
    if (key == "system") {
      VectorFieldSystem sys;
      sys.id = rest;
      while (r.next(key, rest) && key != "end") {
        if (key == "indep") {
          sys.indep = symbols().at(rest);
        } else if (key == "state") {
          sys.state = parse_names(rest);
        } else if (key == "params") {
          sys.params = parse_names(rest);
        } else if (key == "relation") {
          auto c = parse_component(rest, r);
          if (!c.image.is_polynomial()) r.fail("relation must be polynomial");
          sys.relation = LinearRelation{c.target, c.image.num()};
        } else if (key == "d") {
          auto c = parse_component(rest, r);
          if (sys.rhs.size() >= sys.state.size() || sys.state[sys.rhs.size()] != c.target)
            r.fail("derivative out of state order");
          sys.rhs.push_back(c.image);
        } else if (key == "hamiltonian") {
          sys.hamiltonian = Hamiltonian{expr(rest), {}, {}};
        } else if (key == "pair") {
          if (!sys.hamiltonian) r.fail("pair before hamiltonian");
          auto ids = parse_names(rest);
          if (ids.size() != 2) r.fail("pair needs two symbols");
          sys.hamiltonian->pairs.push_back({ids[0], ids[1]});
        } else if (key == "part") {
          if (!sys.hamiltonian) r.fail("part before hamiltonian");
          sys.hamiltonian->parts.push_back(expr(rest));
        } else {
          r.fail("unknown system key '" + key + "'");
        }
      }
      if (sys.rhs.size() != sys.state.size()) r.fail("system " + sys.id + " has missing derivatives");
      set.systems.push_back(std::move(sys));
    } else if (key == "map") {
      BirationalMap m;
      auto [id, variant] = split_head(rest);
      m.id = id;
      m.variant = parse_variant(variant);
      while (r.next(key, rest) && key != "end") {
        std::istringstream is(rest);
        if (key == "domain") {
          m.domain = rest;
        } else if (key == "codomain") {
          m.codomain = rest;
        } else if (key == "disputed") {
          m.disputed = true;
        } else if (key == "indep") {
          std::string kind;
          is >> kind >> m.action.indep_sign;
          m.indep_kind = kind == "exp_neg" ? IndepKind::ExpNeg : IndepKind::Sign;
        } else if (key == "eta_sign") {
          is >> m.action.eta_sign;
        } else if (key == "matrix") {
          for (auto& row : m.action.matrix)
            for (int& v : row) is >> v;
        } else if (key == "offset") {
          is >> m.action.offset[0] >> m.action.offset[1] >> m.action.offset[2];
        } else if (key == "map") {
          m.components.push_back(parse_component(rest, r));
        } else if (key == "inverse") {
          m.inverse.push_back(parse_component(rest, r));
        } else {
          r.fail("unknown map key '" + key + "'");
        }
        if (is.fail()) r.fail("malformed integers for '" + key + "'");
      }
      set.maps.push_back(std::move(m));
    } else if (key == "integral") {
      FirstIntegral fi;
      fi.id = rest;
      while (r.next(key, rest) && key != "end") {
        if (key == "system") fi.system_id = rest;
        else if (key == "lambda") fi.lambda = Rational(rest), fi.lambda.canonicalize();
        else if (key == "expr") fi.expr = expr(rest);
        else r.fail("unknown integral key '" + key + "'");
      }
      set.integrals.push_back(std::move(fi));
    } else if (key == "solution") {
      ParticularSolution sol;
      sol.id = rest;
      while (r.next(key, rest) && key != "end") {
        if (key == "system") sol.system_id = rest;
        else if (key == "kind")
          sol.kind = rest == "explicit" ? ParticularSolution::Kind::Explicit : ParticularSolution::Kind::Restriction;
        else if (key == "reduces_to") sol.reduces_to = rest;
        else if (key == "rule") sol.generator_rules.push_back(parse_component(rest, r));
        else if (key == "param") sol.param_bindings.push_back(parse_component(rest, r));
        else if (key == "bind") sol.bindings.push_back(parse_component(rest, r));
        else r.fail("unknown solution key '" + key + "'");
      }
      set.solutions.push_back(std::move(sol));
    } else {
      r.fail("unknown block '" + key + "'");
    }
  }
  return set;
}

}  // namespace weylsym::models
