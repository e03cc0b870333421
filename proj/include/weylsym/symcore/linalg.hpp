#pragma once

#include <span>
#include <vector>

#include "weylsym/symcore/ratexpr.hpp"

namespace weylsym {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Row echelon form produced by fraction-free (Bareiss) elimination.
struct PolyEchelon {
  PolyMatrix rows;                  // first rank() rows are the pivot rows
  std::vector<std::size_t> pivots;  // pivot column of each pivot row
  int sign = 1;                     // parity of row exchanges

  std::size_t rank() const { return pivots.size(); }
};

PolyEchelon bareiss_echelon(PolyMatrix m);

Poly determinant(PolyMatrix m);

/// Basis of the right nullspace over the fraction field. Each vector has
/// polynomial entries (scaled by the last Bareiss pivot).
std::vector<std::vector<Poly>> polynomial_nullspace(const PolyMatrix& m);

/// Polynomial divisible by every denominator in `exprs`.
Poly common_denominator(std::span<const RatExpr> exprs);

/// det(d map_i / d vars_j), exact.
RatExpr jacobian_determinant(std::span<const RatExpr> map, std::span<const SymbolId> vars);

}  // namespace weylsym
