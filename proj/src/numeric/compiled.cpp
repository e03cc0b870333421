#include "weylsym/numeric.hpp"
#include "numeric_internal.hpp"

namespace weylsym::numeric {

std::vector<CompiledExpr::Term> CompiledExpr::compile(const Poly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term c{t.coeff.get_d(), {}};
    for (std::size_t i = 0; i < Monomial::kSize; ++i)
      if (unsigned e = t.mono.exponent(i))
        c.factors.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(e)});
    out.push_back(std::move(c));
  }
  return out;
}

CompiledExpr::CompiledExpr(const RatExpr& e) : num_(compile(e.num())), den_(compile(e.den())) {}

double CompiledExpr::eval(const std::vector<Term>& terms, const Values& v) {
  double sum = 0.0;
  for (const auto& t : terms) {
    double prod = t.coeff;
    for (const auto& f : t.factors)
      for (unsigned k = 0; k < f.power; ++k) prod *= v[f.index];
    sum += prod;
  }
  return sum;
}

double CompiledExpr::numerator(const Values& v) const { return eval(num_, v); }
double CompiledExpr::denominator(const Values& v) const { return eval(den_, v); }

ParamValues complete_params(const models::VectorFieldSystem& system, ParamValues params) {
  if (system.relation && !params.count("a1")) {
    const double a0 = params.count("a0") ? params.at("a0") : 0.0;
    const double a2 = params.count("a2") ? params.at("a2") : 0.0;
    params["a1"] = 1.0 - a0 - a2;
  }
  return params;
}

namespace detail {

Values bind(const ParamValues& params) {
  Values v{};
  for (const auto& [name, value] : params) {
    auto id = models::symbols().find(name);
    if (!id) throw std::invalid_argument("unknown parameter '" + name + "'");
    v[id->index] = value;
  }
  return v;
}

std::vector<CompiledExpr> compile_rhs(const models::VectorFieldSystem& system) {
  std::vector<CompiledExpr> out;
  out.reserve(system.rhs.size());
  for (const auto& f : system.rhs) out.emplace_back(f);
  return out;
}

}  // namespace detail

}  // namespace weylsym::numeric
