#include "weylsym/symcore/linalg.hpp"

#include <stdexcept>

namespace weylsym {

namespace {

Poly exact_div(const Poly& n, const Poly& d) {
  if (d.is_constant()) return n.scaled(1 / d.constant_term());
  auto q = exact_polynomial_quotient(n, d);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return *q;
}

}  // namespace

PolyEchelon bareiss_echelon(PolyMatrix m) {
  PolyEchelon out;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows ? m[0].size() : 0;
  Poly prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t best = nrows;
    for (std::size_t i = r; i < nrows; ++i) {
      if (m[i][c].is_zero()) continue;
      if (best == nrows || m[i][c].size() < m[best][c].size()) best = i;
    }
    if (best == nrows) continue;
    if (best != r) {
      std::swap(m[best], m[r]);
      out.sign = -out.sign;
    }
    const Poly pivot = m[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Poly factor = m[i][c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Poly v = pivot * m[i][j];
        if (!factor.is_zero()) v -= factor * m[r][j];
        m[i][j] = exact_div(v, prev);
      }
      m[i][c] = Poly();
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = std::move(m);
  return out;
}

Poly determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return Poly(1);
  auto ech = bareiss_echelon(std::move(m));
  if (ech.rank() < n) return Poly();
  Poly d = ech.rows[n - 1][n - 1];
  return ech.sign < 0 ? -d : d;
}

std::vector<std::vector<Poly>> polynomial_nullspace(const PolyMatrix& m) {
  if (m.empty()) return {};
  const std::size_t ncols = m[0].size();
  auto ech = bareiss_echelon(m);
  const std::size_t k = ech.rank();
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  Poly scale = k ? ech.rows[k - 1][ech.pivots[k - 1]] : Poly(1);

  std::vector<std::vector<Poly>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Poly> x(ncols);
    x[f] = scale;
    for (std::size_t ii = k; ii-- > 0;) {
      const auto& row = ech.rows[ii];
      Poly acc = row[f] * scale;
      for (std::size_t jj = ii + 1; jj < k; ++jj) acc += row[ech.pivots[jj]] * x[ech.pivots[jj]];
      x[ech.pivots[ii]] = exact_div(-acc, row[ech.pivots[ii]]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Poly common_denominator(std::span<const RatExpr> exprs) {
  Monomial mono;
  std::vector<Poly> factors;
  for (const auto& e : exprs) {
    Monomial m = e.den().monomial_content();
    mono = Monomial::lcm(mono, m);
    Poly rest = m.is_one() ? e.den() : e.den().divide_monomial(m);
    if (rest.is_constant()) continue;
    bool seen = false;
    for (const auto& f : factors) seen = seen || f == rest;
    if (!seen) factors.push_back(std::move(rest));
  }
  Poly l = Poly::monomial(1, mono);
  for (const auto& f : factors) l = l * f;
  return l;
}

RatExpr jacobian_determinant(std::span<const RatExpr> map, std::span<const SymbolId> vars) {
  if (map.size() != vars.size()) throw std::invalid_argument("jacobian_determinant: size mismatch");
  const std::size_t n = map.size();
  PolyMatrix m(n, std::vector<Poly>(n));
  Poly den_product(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RatExpr> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) row.push_back(map[i].partial(vars[j]));
    Poly l = common_denominator(row);
    for (std::size_t j = 0; j < n; ++j) m[i][j] = exact_div(row[j].num() * l, row[j].den());
    den_product = den_product * l;
  }
  return RatExpr(determinant(std::move(m)), den_product);
}

}  // namespace weylsym
