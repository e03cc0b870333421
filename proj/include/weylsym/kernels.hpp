#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "weylsym/symcore/ratexpr.hpp"

// Hot loops with two interchangeable implementations: a plain serial loop kept
// as the reference, and an OpenMP version. Both must give identical results.

namespace weylsym::kernels {

enum class Execution { Serial, Parallel };

using RationalMatrix = std::vector<std::vector<Rational>>;

struct RationalNullspace {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  /// One vector per free column, with a 1 in that column.
  std::vector<std::vector<Rational>> basis;
};

/// Gauss-Jordan elimination over Q. Pivots are chosen by the first nonzero
/// row so the output is independent of execution mode.
RationalNullspace nullspace_serial(RationalMatrix m);
RationalNullspace nullspace_parallel(RationalMatrix m);
RationalNullspace nullspace(RationalMatrix m, Execution ex);

/// Evaluates every entry of a polynomial matrix at `point`.
RationalMatrix evaluate_matrix(const std::vector<std::vector<Poly>>& m, const Point& point, Execution ex);

/// Calls body(i) for i in [0, n). Parallel mode uses a dynamic OpenMP
/// schedule; body must only write to per-index state.
void for_each_index(std::size_t n, Execution ex, const std::function<void(std::size_t)>& body);

/// Pre-generated seeded sample points: for each point, each symbol in `mask`
/// gets a rational with numerator in [-bound, bound] and denominator in [1, bound].
std::vector<Point> sample_points(std::uint32_t mask, std::size_t count, std::uint64_t seed, int bound = 50);

}  // namespace weylsym::kernels
