#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weylsym/kernels.hpp"
#include "weylsym/verify/checks.hpp"
#include "weylsym/verify/integral_search.hpp"

namespace weylsym::verify {

enum class Scope { All, Symmetry, Charts, Integrals, Hamiltonian, Reduction, Solutions, Search };

std::optional<Scope> parse_scope(std::string_view text);
std::string_view to_string(Scope s);

enum class VariantChoice { Printed, Corrected, Both };

struct SuiteOptions {
  /// Both runs the composite check for disputed maps.
  VariantChoice variant = VariantChoice::Both;
  /// Restricts symmetry and chart checks to one map id.
  std::optional<std::string> map;
  std::uint64_t seed = kDefaultSeed;
  kernels::Execution execution = kernels::Execution::Parallel;
};

struct SuiteEntry {
  std::string id;
  Scope scope;
  std::optional<std::string> map;
  std::function<VerificationReport()> run;
};

/// Every check in registry order, filtered by scope and options.
std::vector<SuiteEntry> suite_entries(Scope scope, const SuiteOptions& options = {});

/// Runs the selected checks (concurrently in parallel mode); reports come
/// back in registry order. A check that throws becomes a failed report.
std::vector<VerificationReport> run_suite(Scope scope, const SuiteOptions& options = {});

/// Search wrapped as a check: passes iff the found space matches `expected`
/// (one integral proportional to it, or nothing when unset).
VerificationReport check_search(std::string_view system_id, unsigned state_bound, unsigned indep_bound,
                                const std::vector<Rational>& lambdas, const std::optional<RatExpr>& expected,
                                const SearchOptions& options = {});

/// Both disputed objects resolve, and to the same variant.
VerificationReport check_disputed_agreement();

}  // namespace weylsym::verify
