#include <utility>

#include "weylsym/kernels.hpp"

namespace weylsym::kernels {

namespace {

std::size_t columns(const RationalMatrix& m) { return m.empty() ? 0 : m.front().size(); }

// Shared driver: `eliminate` clears column `col` in every row except `pivot_row`.
template <typename Eliminate>
RationalNullspace gauss_jordan(RationalMatrix m, Eliminate&& eliminate) {
  const std::size_t rows = m.size(), cols = columns(m);
  RationalNullspace out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    eliminate(m, r, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : out.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < out.rank; ++i) v[out.pivots[i]] = -m[i][f];
    out.basis.push_back(std::move(v));
  }
  return out;
}

void clear_row(RationalMatrix& m, std::size_t i, std::size_t pivot_row, std::size_t c) {
  if (i == pivot_row || sgn(m[i][c]) == 0) return;
  const Rational factor = m[i][c];
  const std::size_t cols = m[i].size();
  for (std::size_t j = c; j < cols; ++j)
    if (sgn(m[pivot_row][j]) != 0) m[i][j] -= factor * m[pivot_row][j];
}

}  // namespace

RationalNullspace nullspace_serial(RationalMatrix m) {
  return gauss_jordan(std::move(m), [](RationalMatrix& a, std::size_t r, std::size_t c) {
    for (std::size_t i = 0; i < a.size(); ++i) clear_row(a, i, r, c);
  });
}

RationalNullspace nullspace_parallel(RationalMatrix m) {
  return gauss_jordan(std::move(m), [](RationalMatrix& a, std::size_t r, std::size_t c) {
    const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) clear_row(a, static_cast<std::size_t>(i), r, c);
  });
}

RationalNullspace nullspace(RationalMatrix m, Execution ex) {
  return ex == Execution::Serial ? nullspace_serial(std::move(m)) : nullspace_parallel(std::move(m));
}

RationalMatrix evaluate_matrix(const std::vector<std::vector<Poly>>& m, const Point& point, Execution ex) {
  RationalMatrix out(m.size());
  for_each_index(m.size(), ex, [&](std::size_t i) {
    out[i].reserve(m[i].size());
    for (const auto& p : m[i]) out[i].push_back(p.evaluate(point));
  });
  return out;
}

}  // namespace weylsym::kernels
