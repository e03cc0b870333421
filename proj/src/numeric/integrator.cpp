#include <algorithm>
#include <cmath>
#include <limits>

#include "numeric_internal.hpp"

namespace weylsym::numeric {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::BlowUp: return "blow_up";
    case Termination::StepUnderflow: return "step_underflow";
  }
  return "?";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (error weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 5.0;

class Field {
 public:
  Field(const models::VectorFieldSystem& system, const ParamValues& params)
      : state_(system.state), indep_(system.indep), rhs_(detail::compile_rhs(system)),
        base_(detail::bind(params)) {}

  void operator()(double u, const std::vector<double>& y, std::vector<double>& out) const {
    Values v = base_;
    v[indep_.index] = u;
    for (std::size_t i = 0; i < state_.size(); ++i) v[state_[i].index] = y[i];
    for (std::size_t i = 0; i < rhs_.size(); ++i) out[i] = rhs_[i](v);
  }

 private:
  std::vector<SymbolId> state_;
  SymbolId indep_;
  std::vector<CompiledExpr> rhs_;
  Values base_;
};

bool finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void check_domain(const models::VectorFieldSystem& system, double u0, double u1) {
  for (const auto& f : system.rhs) {
    if (!f.den().depends_on(system.indep)) continue;
    // The only independent-variable denominators in the registry are powers of it.
    if (std::min(u0, u1) <= 0.0 && std::max(u0, u1) >= 0.0)
      throw DomainError("span crosses " + models::symbols().name(system.indep) + "=0");
  }
}

}  // namespace

Trajectory integrate(const models::VectorFieldSystem& system, const ParamValues& raw_params,
                     const std::vector<double>& init, double u0, double u1, const NumericConfig& config,
                     const OutputMode& output) {
  if (init.size() != system.state.size())
    throw std::invalid_argument("initial state has " + std::to_string(init.size()) + " components, system " +
                                system.id + " has " + std::to_string(system.state.size()));
  if (!(config.abs_tol > 0) || !(config.rel_tol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (u1 == u0) throw std::invalid_argument("empty integration span");
  check_domain(system, u0, u1);

  const ParamValues params = complete_params(system, raw_params);
  const Field f(system, params);
  const std::size_t n = init.size();
  const double dir = u1 > u0 ? 1.0 : -1.0;

  std::vector<double> targets;
  switch (output.kind) {
    case OutputKind::Adaptive:
      targets = {u1};
      break;
    case OutputKind::FixedStep: {
      if (!(output.step > 0)) throw std::invalid_argument("fixed step must be positive");
      const auto count = static_cast<long>(std::floor(std::abs(u1 - u0) / output.step + 1e-9));
      for (long k = 1; k <= count; ++k) targets.push_back(u0 + dir * static_cast<double>(k) * output.step);
      if (targets.empty()) throw std::invalid_argument("fixed step exceeds the span");
      break;
    }
    case OutputKind::AtTimes:
      targets = output.times;
      if (targets.empty()) throw std::invalid_argument("no output times");
      for (std::size_t i = 0; i < targets.size(); ++i) {
        double prev = i == 0 ? u0 : targets[i - 1];
        if ((targets[i] - prev) * dir <= 0) throw std::invalid_argument("output times must move monotonically away from u0");
      }
      break;
  }

  Trajectory traj;
  traj.system_id = system.id;
  traj.params = params;
  for (auto s : system.state) traj.state_names.push_back(models::symbols().name(s));
  traj.meta.abs_tol = config.abs_tol;
  traj.meta.rel_tol = config.rel_tol;
  traj.meta.output = output.kind;
  traj.meta.fixed_step = output.step;

  std::vector<double> y = init;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
  f(u0, y, k1);
  if (!finite(k1)) throw DomainError("initial point is singular for " + system.id);

  traj.times.push_back(u0);
  traj.states.push_back(y);

  double u = u0;
  const double span = std::abs(targets.back() - u0);
  double h = std::min(span, 1e-2 * std::max(1.0, std::abs(u0)));
  if (output.kind == OutputKind::FixedStep) h = std::min(h, output.step);
  std::size_t next = 0;

  while (next < targets.size()) {
    const double target = targets[next];
    double step = std::min(h, std::abs(target - u));
    const bool lands = step >= std::abs(target - u);
    if (step < 1e-14 * std::max(1.0, std::abs(u))) {
      traj.meta.reason = Termination::StepUnderflow;
      return traj;
    }
    const double hs = dir * step;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    f(u + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    f(u + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(u + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(u + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(u + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const double u_new = lands ? target : u + hs;
    f(u_new, y5, k7);

    double err = 0.0;
    bool ok = finite(y5) && finite(k7);
    if (ok) {
      for (std::size_t i = 0; i < n; ++i) {
        double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double scale = config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(e) / scale);
      }
      ok = std::isfinite(err);
    }
    if (!ok) {
      ++traj.meta.rejected;
      h = step * kMinFactor;
      continue;
    }

    double factor = err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
    if (err > 1.0) {
      ++traj.meta.rejected;
      h = step * std::min(factor, 1.0);
      continue;
    }

    ++traj.meta.accepted;
    u = u_new;
    y = y5;
    k1 = k7;
    // A step shortened to land on an output time must not cap the next one.
    h = std::max(h, step) * factor;
    if (lands) ++next;
    if (output.kind == OutputKind::Adaptive || lands) {
      traj.times.push_back(u);
      traj.states.push_back(y);
    }
    if (norm(y) > config.blow_up_norm) {
      traj.meta.reason = Termination::BlowUp;
      return traj;
    }
  }
  traj.meta.reason = Termination::Completed;
  return traj;
}

Trajectory integrate(std::string_view system_id, const ParamValues& params, const std::vector<double>& init,
                     double u0, double u1, const NumericConfig& config, const OutputMode& output) {
  return integrate(models::load_model(system_id), params, init, u0, u1, config, output);
}

}  // namespace weylsym::numeric
