#include <random>

#include "weylsym/kernels.hpp"

namespace weylsym::kernels {

void for_each_index(std::size_t n, Execution ex, const std::function<void(std::size_t)>& body) {
  if (ex == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

std::vector<Point> sample_points(std::uint32_t mask, std::size_t count, std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  std::vector<Point> points(count);
  for (auto& p : points) {
    for (std::uint8_t i = 0; i < 32; ++i) {
      if (!((mask >> i) & 1u)) continue;
      Rational r(num(rng), den(rng));
      r.canonicalize();
      p.set(SymbolId{i}, r);
    }
  }
  return points;
}

}  // namespace weylsym::kernels
