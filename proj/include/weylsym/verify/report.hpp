#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylsym/symcore/ratexpr.hpp"

namespace weylsym::verify {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

enum class Status { Pass, Fail };

struct Residual {
  std::string label;
  std::optional<RatExpr> value;  // empty means identically zero
};

struct VerificationReport {
  std::string check_id;
  Status status = Status::Pass;
  std::vector<Residual> residuals;
  /// Point (symbol name, value) where some residual is nonzero.
  std::optional<std::vector<std::pair<std::string, Rational>>> witness;
  double millis = 0.0;
  std::vector<std::string> notes;
  bool sampled = false;
  std::optional<std::uint64_t> seed;
  /// For composite checks over a disputed map: the variant that verified.
  std::optional<std::string> resolved_variant;

  bool passed() const { return status == Status::Pass; }
  /// Adds a residual, storing nothing when it vanishes; marks failure otherwise.
  void add_residual(std::string label, const RatExpr& value, bool vanishes);
  void fail(std::string note);
};

std::string_view to_string(Status s);
std::string witness_string(const VerificationReport& r);
/// "<check_id> PASS|FAIL <millis> ms" with notes appended.
std::string format_text(const VerificationReport& r);
/// One JSON object per line: check_id, status, witness, seed, millis, notes.
std::string format_record(const VerificationReport& r);
/// Same as format_record but without timing, for byte comparisons.
std::string format_record_untimed(const VerificationReport& r);

/// Samples small rationals for the symbols of `e` until its value is nonzero
/// and finite; gives up after 100 attempts.
std::optional<std::vector<std::pair<std::string, Rational>>> find_witness(const RatExpr& e,
                                                                          std::uint64_t seed);

/// Runs `body` on a fresh report and stamps its duration.
template <typename Body>
VerificationReport timed(std::string check_id, Body&& body) {
  VerificationReport report;
  report.check_id = std::move(check_id);
  auto start = std::chrono::steady_clock::now();
  body(report);
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace weylsym::verify
