#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weylsym/models.hpp"

namespace weylsym::numeric {

using Values = std::array<double, SymbolTable::kMaxSymbols>;
/// Parameter and constant values by symbol name (a0, a1, a2, eta, ...).
using ParamValues = std::map<std::string, double>;

/// Singular initial data, or a span through a singularity of the field.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A map denominator is (nearly) zero at a trajectory sample.
class NearSingularError : public std::domain_error {
 public:
  NearSingularError(const std::string& what, std::size_t index) : std::domain_error(what), index(index) {}
  std::size_t index;
};

/// Double-precision evaluator for an exact expression.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const RatExpr& e);
  double operator()(const Values& v) const { return numerator(v) / denominator(v); }
  double numerator(const Values& v) const;
  double denominator(const Values& v) const;

 private:
  struct Factor {
    std::uint8_t index;
    std::uint8_t power;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };
  static double eval(const std::vector<Term>& terms, const Values& v);
  static std::vector<Term> compile(const Poly& p);

  std::vector<Term> num_;
  std::vector<Term> den_;
};

/// Thresholds and tolerances used by the numeric checks; every one is an
/// engineering choice, so they live in one place.
struct NumericConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double blow_up_norm = 1e8;
  double near_singular = 1e-12;
  double drift_tol = 1e-6;
  double self_residual_tol = 1e-5;
  double pushforward_residual_tol = 1e-4;
};

enum class OutputKind { Adaptive, FixedStep, AtTimes };

struct OutputMode {
  OutputKind kind = OutputKind::Adaptive;
  double step = 0.0;          // FixedStep
  std::vector<double> times;  // AtTimes: monotone, starting after u0

  static OutputMode adaptive() { return {}; }
  static OutputMode fixed_step(double h) { return {OutputKind::FixedStep, h, {}}; }
  static OutputMode at_times(std::vector<double> t) { return {OutputKind::AtTimes, 0.0, std::move(t)}; }
};

enum class Termination { Completed, BlowUp, StepUnderflow };
std::string_view to_string(Termination t);

struct IntegratorMeta {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  OutputKind output = OutputKind::Adaptive;
  double fixed_step = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  Termination reason = Termination::Completed;
};

struct Trajectory {
  std::string system_id;
  ParamValues params;
  std::vector<std::string> state_names;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  IntegratorMeta meta;
};

/// Fills a1 = 1 - a0 - a2 when the system carries the normalization and a1 is absent.
ParamValues complete_params(const models::VectorFieldSystem& system, ParamValues params);

/// Dormand-Prince 5(4) with per-component error bound abs + rel*|state|,
/// safety 0.9 and growth clamp [0.2, 5]. Output times are hit exactly.
Trajectory integrate(const models::VectorFieldSystem& system, const ParamValues& params,
                     const std::vector<double>& init, double u0, double u1, const NumericConfig& config = {},
                     const OutputMode& output = {});
Trajectory integrate(std::string_view system_id, const ParamValues& params, const std::vector<double>& init,
                     double u0, double u1, const NumericConfig& config = {}, const OutputMode& output = {});

/// max |c(u) - c(u0)| / max(|c(u0)|, 1e-12) where c = integral * exp(-lambda*u).
double invariant_drift(const Trajectory& traj, const models::FirstIntegral& integral);
double invariant_drift(const Trajectory& traj, std::string_view integral_id);

/// Applies the map sample by sample, transforming parameters, eta and the
/// independent variable (time is re-sorted when it is reflected).
Trajectory pushforward(const Trajectory& traj, const models::BirationalMap& map, const NumericConfig& config = {});
Trajectory pushforward(const Trajectory& traj, std::string_view map_id,
                       models::Variant variant = models::Variant::Printed, const NumericConfig& config = {});

/// Max over interior samples and components of |central difference - rhs|.
/// Requires uniform spacing and at least five samples.
double dynamics_residual(const Trajectory& traj, const models::VectorFieldSystem& system, const ParamValues& params);
double dynamics_residual(const Trajectory& traj, std::string_view system_id, const ParamValues& params);

/// Header "u,<state names>", 17 significant digits.
void write_csv(const Trajectory& traj, const std::string& path);
std::string to_csv(const Trajectory& traj);
/// Parameters, tolerances, step counts and termination reason.
std::string metadata_json(const Trajectory& traj);
void write_metadata(const Trajectory& traj, const std::string& path);

}  // namespace weylsym::numeric
