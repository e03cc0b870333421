#include "weylsym/verify/integral_search.hpp"

#include <algorithm>
#include <map>

#include "weylsym/symcore/linalg.hpp"
#include "weylsym/symcore/text.hpp"

namespace weylsym::verify {

namespace {

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return (a <=> b) < 0; }
};

void enumerate(const std::vector<SymbolId>& vars, std::size_t from, unsigned budget, Monomial current,
               std::vector<Monomial>& out) {
  out.push_back(current);
  if (budget == 0) return;
  for (std::size_t i = from; i < vars.size(); ++i)
    enumerate(vars, i, budget - 1, current * Monomial::var(vars[i]), out);
}

std::vector<Monomial> ansatz(const models::VectorFieldSystem& system, unsigned state_bound, unsigned indep_bound,
                             bool skip_constant) {
  std::vector<Monomial> state_monos;
  enumerate(system.state, 0, state_bound, Monomial(), state_monos);
  std::vector<Monomial> out;
  for (unsigned k = 0; k <= indep_bound; ++k)
    for (const auto& m : state_monos) {
      Monomial full = m * Monomial::var(system.indep, k);
      if (skip_constant && full.is_one()) continue;
      out.push_back(full);
    }
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

/// Columns are unknown coefficients, rows are monomials in state and indep.
struct LinearSystem {
  std::vector<Monomial> unknowns;
  PolyMatrix matrix;
  std::uint32_t coefficient_symbols = 0;
};

LinearSystem build(const models::VectorFieldSystem& system, const std::vector<Monomial>& unknowns,
                   const Rational& lambda) {
  const Derivation d = system.derivation();
  std::vector<RatExpr> columns;
  columns.reserve(unknowns.size());
  for (const auto& m : unknowns) {
    RatExpr b(Poly::monomial(1, m));
    RatExpr c = d(b) - b * RatExpr(lambda);
    if (system.relation) c = apply_relation(c, *system.relation);
    columns.push_back(std::move(c));
  }
  const Poly common = common_denominator(columns);

  std::vector<SymbolId> keep = system.state;
  keep.push_back(system.indep);

  LinearSystem ls;
  ls.unknowns = unknowns;
  std::map<Monomial, std::size_t, MonoLess> rows;
  std::vector<std::vector<std::pair<std::size_t, Poly>>> entries(unknowns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto scale = exact_polynomial_quotient(common, columns[j].den());
    if (!scale) throw std::logic_error("common denominator does not cover a column");
    Poly col = columns[j].num() * *scale;
    for (auto& [mono, coeff] : col.collect(keep)) {
      auto [it, inserted] = rows.try_emplace(mono, rows.size());
      ls.coefficient_symbols |= coeff.support();
      entries[j].emplace_back(it->second, std::move(coeff));
    }
  }
  ls.matrix.assign(rows.size(), std::vector<Poly>(unknowns.size()));
  for (std::size_t j = 0; j < entries.size(); ++j)
    for (auto& [i, coeff] : entries[j]) ls.matrix[i][j] = std::move(coeff);
  return ls;
}

/// Divides a polynomial vector by its sparsest nonzero entry when that is exact.
std::vector<Poly> tidy(std::vector<Poly> v) {
  const Poly* pivot = nullptr;
  for (const auto& e : v)
    if (!e.is_zero() && (!pivot || e.size() < pivot->size())) pivot = &e;
  if (!pivot) return v;
  const Poly divisor = *pivot;
  std::vector<Poly> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    auto q = exact_polynomial_quotient(e, divisor);
    if (!q) return v;
    out.push_back(std::move(*q));
  }
  return out;
}

}  // namespace

SearchOutcome first_integral_search(const models::VectorFieldSystem& system, unsigned state_degree_bound,
                                    unsigned indep_degree_bound, const std::vector<Rational>& lambdas,
                                    const SearchOptions& options) {
  if (state_degree_bound < 1) throw std::invalid_argument("state degree bound must be at least 1");
  SearchOutcome outcome;
  for (const auto& lambda : lambdas) {
    const auto unknowns = ansatz(system, state_degree_bound, indep_degree_bound, sgn(lambda) == 0);
    if (unknowns.size() > options.max_unknowns)
      throw CapacityError("ansatz has " + std::to_string(unknowns.size()) + " unknowns, cap is " +
                          std::to_string(options.max_unknowns));
    outcome.unknowns = std::max(outcome.unknowns, unknowns.size());
    const LinearSystem ls = build(system, unknowns, lambda);

    std::vector<std::vector<Poly>> basis;
    bool matched = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !matched; ++attempt) {
      Point point = kernels::sample_points(ls.coefficient_symbols, 1, options.seed + attempt).front();
      auto numeric = kernels::nullspace(kernels::evaluate_matrix(ls.matrix, point, options.execution),
                                        options.execution);
      if (numeric.basis.empty()) {
        // Full rank at one point certifies full rank generically.
        basis.clear();
        matched = true;
        break;
      }
      std::vector<std::size_t> support;
      for (std::size_t j = 0; j < unknowns.size(); ++j)
        for (const auto& v : numeric.basis)
          if (sgn(v[j]) != 0) {
            support.push_back(j);
            break;
          }
      PolyMatrix restricted;
      for (const auto& row : ls.matrix) {
        std::vector<Poly> r;
        bool nonzero = false;
        for (auto j : support) {
          r.push_back(row[j]);
          nonzero = nonzero || !row[j].is_zero();
        }
        if (nonzero) restricted.push_back(std::move(r));
      }
      basis.clear();
      for (auto& v : polynomial_nullspace(restricted)) {
        std::vector<Poly> full(unknowns.size());
        for (std::size_t k = 0; k < support.size(); ++k) full[support[k]] = std::move(v[k]);
        basis.push_back(tidy(std::move(full)));
      }
      matched = basis.size() == numeric.basis.size();
    }
    if (!matched) outcome.complete = false;
    outcome.nullity.push_back(basis.size());

    const Derivation d = system.derivation();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Poly p;
      for (std::size_t j = 0; j < unknowns.size(); ++j)
        if (!basis[k][j].is_zero()) p += basis[k][j].times_monomial(unknowns[j]);
      RatExpr e(p);
      if (!is_identically_zero(d(e) - e * RatExpr(lambda), system.relation)) outcome.complete = false;
      outcome.integrals.push_back({system.id + ".lambda" + weylsym::to_string(lambda) + "." + std::to_string(k),
                                   system.id, e, lambda});
    }
  }
  return outcome;
}

SearchOutcome first_integral_search(std::string_view system_id, unsigned state_degree_bound,
                                    unsigned indep_degree_bound, const std::vector<Rational>& lambdas,
                                    const SearchOptions& options) {
  return first_integral_search(models::load_model(system_id), state_degree_bound, indep_degree_bound, lambdas,
                               options);
}

}  // namespace weylsym::verify
