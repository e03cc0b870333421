#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weylsym/kernels.hpp"
#include "weylsym/models.hpp"
#include "weylsym/verify/report.hpp"

namespace weylsym::weyl {

using models::ParameterAction;
using models::Variant;

/// th1: generators of the five-dimensional system; th2: the four-dimensional
/// system, which also has the diagram automorphism pi.
enum class Context { Th1, Th2 };
enum class Generator { S0, S1, S2, Pi };

class WordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A zero denominator at an intermediate point; names the generator.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroupWord {
  std::vector<Generator> letters;
  Context context = Context::Th1;

  GroupWord then(const GroupWord& other) const;
  GroupWord power(unsigned n) const;
};

/// Whitespace-separated letters from {s0, s1, s2, pi}; th1 words reject pi.
GroupWord parse_word(std::string_view text, Context context = Context::Th1);
std::string to_string(const GroupWord& word);
std::string_view to_string(Generator g);

/// How a written word acts on points: LeftToRight applies the first letter first.
enum class Ordering { LeftToRight, RightToLeft };
std::string_view to_string(Ordering o);

/// The map realizing a generator; disputed maps use `disputed`.
const models::BirationalMap& generator_map(Generator g, Context context, Variant disputed = Variant::Corrected);

ParameterAction parameter_action(const GroupWord& word, Ordering ordering);
/// Uses the calibrated ordering.
ParameterAction parameter_action(const GroupWord& word);

/// The unique ordering under which s1 s2 s1 s0 shifts the parameters by
/// (-2, 2, 0). Throws CalibrationError if zero or two orderings do.
Ordering calibrate_convention();

struct Shift {
  std::array<int, 3> vector{};
  int eta_sign = 1;
  int indep_sign = 1;
  /// The 3x3 linear part is the identity itself, not just on the hyperplane.
  bool exact_identity = false;
};

/// The translation on the hyperplane a0 + a1 + a2 = 1 performed by the word,
/// or nothing when its linear part is not the identity there.
std::optional<Shift> translation_shift(const GroupWord& word);
std::optional<Shift> translation_shift(const ParameterAction& action);

/// State, a0, a1, a2, eta and the independent variable of the context.
std::vector<SymbolId> point_symbols(Context context);

/// Exact image of `point` under the word (calibrated ordering).
Point apply_word_to_point(const GroupWord& word, const Point& point, Variant disputed = Variant::Corrected);

struct RelationOptions {
  std::size_t samples = 20;
  std::uint64_t seed = verify::kDefaultSeed;
  kernels::Execution execution = kernels::Execution::Parallel;
  Variant disputed = Variant::Corrected;
};

/// Checks lhs == rhs exactly on parameters and at sampled exact points on
/// the field action. The report is labeled sampled and carries the seed.
verify::VerificationReport check_relation(std::string id, const GroupWord& lhs, const GroupWord& rhs,
                                          const RelationOptions& options = {});

/// s_i^2, (s0 s1)^4, (s1 s2)^4, (s0 s2)^2 in both contexts; pi^2,
/// pi s0 pi = s2, pi s1 pi = s1 in th2. Normalization of each generator.
std::vector<verify::VerificationReport> verify_group_relations(const RelationOptions& options = {});

/// Whether pi T1 pi = T2 holds on parameters and on the field. Reported,
/// never asserted: status is always PASS and the verdict is in the notes.
verify::VerificationReport report_pi_translation_conjugacy(const RelationOptions& options = {});

}  // namespace weylsym::weyl
