#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "weylsym/kernels.hpp"
#include "weylsym/models.hpp"
#include "weylsym/verify/report.hpp"

namespace weylsym::verify {

/// The requested ansatz has more unknown coefficients than the configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  std::size_t max_unknowns = 2000;
  std::uint64_t seed = kDefaultSeed;
  kernels::Execution execution = kernels::Execution::Parallel;
};

struct SearchOutcome {
  std::vector<models::FirstIntegral> integrals;
  /// Dimension of the solution space per candidate, in candidate order.
  std::vector<std::size_t> nullity;
  std::size_t unknowns = 0;
  /// False when the symbolic basis could not be matched to the sampled nullity.
  bool complete = true;
};

/// Polynomials P in the state (total degree <= state_degree_bound) with
/// coefficients polynomial in the independent variable (degree <=
/// indep_degree_bound) and rational in the parameters, such that D(P) = lambda*P.
/// Constants are excluded for lambda = 0.
SearchOutcome first_integral_search(const models::VectorFieldSystem& system, unsigned state_degree_bound,
                                    unsigned indep_degree_bound, const std::vector<Rational>& lambdas,
                                    const SearchOptions& options = {});
SearchOutcome first_integral_search(std::string_view system_id, unsigned state_degree_bound,
                                    unsigned indep_degree_bound, const std::vector<Rational>& lambdas,
                                    const SearchOptions& options = {});

}  // namespace weylsym::verify
