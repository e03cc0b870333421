#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "numeric_internal.hpp"

namespace weylsym::numeric {

namespace {

namespace sym = models::sym;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

const char* output_name(OutputKind k) {
  switch (k) {
    case OutputKind::Adaptive: return "adaptive";
    case OutputKind::FixedStep: return "fixed_step";
    case OutputKind::AtTimes: return "at_times";
  }
  return "?";
}

}  // namespace

double invariant_drift(const Trajectory& traj, const models::FirstIntegral& integral) {
  if (traj.system_id != integral.system_id)
    throw std::invalid_argument("integral " + integral.id + " is not defined for " + traj.system_id);
  const auto& system = models::load_model(traj.system_id);
  const CompiledExpr value(integral.expr);
  const double lambda = integral.lambda.get_d();
  Values v = detail::bind(traj.params);
  double first = 0.0, drift = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double u = traj.times[k];
    v[system.indep.index] = u;
    for (std::size_t i = 0; i < system.state.size(); ++i) v[system.state[i].index] = traj.states[k][i];
    const double c = value(v) * std::exp(-lambda * u);
    if (k == 0)
      first = c;
    else
      drift = std::max(drift, std::abs(c - first));
  }
  return drift / std::max(std::abs(first), 1e-12);
}

double invariant_drift(const Trajectory& traj, std::string_view integral_id) {
  return invariant_drift(traj, models::load_integral(integral_id));
}

Trajectory pushforward(const Trajectory& traj, const models::BirationalMap& map, const NumericConfig& config) {
  if (map.domain != traj.system_id)
    throw std::invalid_argument("map " + map.id + " acts on " + map.domain + ", not on " + traj.system_id);
  const auto& source = models::load_model(map.domain);
  const auto& target = models::load_model(map.codomain.value_or(map.domain));

  std::vector<std::pair<SymbolId, CompiledExpr>> images;
  for (auto x : target.state) images.emplace_back(x, CompiledExpr(map.image_of(x)));

  Trajectory out;
  out.system_id = target.id;
  out.params = traj.params;
  out.meta = traj.meta;
  for (auto x : target.state) out.state_names.push_back(models::symbols().name(x));

  if (traj.params.count("a0") && traj.params.count("a1") && traj.params.count("a2")) {
    const double a[3] = {traj.params.at("a0"), traj.params.at("a1"), traj.params.at("a2")};
    const char* names[3] = {"a0", "a1", "a2"};
    for (int i = 0; i < 3; ++i) {
      double v = map.action.offset[i];
      for (int j = 0; j < 3; ++j) v += map.action.matrix[i][j] * a[j];
      out.params[names[i]] = v;
    }
  }
  if (traj.params.count("eta")) out.params["eta"] = map.action.eta_sign * traj.params.at("eta");

  Values v = detail::bind(traj.params);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double u = traj.times[k];
    v[source.indep.index] = u;
    double new_u = u;
    if (map.indep_kind == models::IndepKind::ExpNeg) {
      new_u = std::exp(-u);
      v[sym::s.index] = new_u;
    } else {
      new_u = map.action.indep_sign * u;
    }
    for (std::size_t i = 0; i < source.state.size(); ++i) v[source.state[i].index] = traj.states[k][i];
    std::vector<double> state;
    state.reserve(images.size());
    for (const auto& [x, image] : images) {
      const double den = image.denominator(v);
      if (std::abs(den) < config.near_singular)
        throw NearSingularError("map " + map.id + " is singular at sample " + std::to_string(k) + " (component " +
                                    models::symbols().name(x) + ")",
                                k);
      state.push_back(image.numerator(v) / den);
    }
    out.times.push_back(new_u);
    out.states.push_back(std::move(state));
  }
  if (map.indep_kind == models::IndepKind::Sign && map.action.indep_sign == -1) {
    std::reverse(out.times.begin(), out.times.end());
    std::reverse(out.states.begin(), out.states.end());
  }
  return out;
}

Trajectory pushforward(const Trajectory& traj, std::string_view map_id, models::Variant variant,
                       const NumericConfig& config) {
  return pushforward(traj, models::load_map(map_id, variant), config);
}

double dynamics_residual(const Trajectory& traj, const models::VectorFieldSystem& system,
                         const ParamValues& params) {
  const std::size_t n = traj.times.size();
  if (n < 5) throw std::invalid_argument("dynamics residual needs at least five samples");
  if (!traj.states.empty() && traj.states.front().size() != system.state.size())
    throw std::invalid_argument("trajectory dimension does not match " + system.id);
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (std::abs((traj.times[k + 1] - traj.times[k]) - h) > 1e-6 * std::abs(h))
      throw std::invalid_argument("dynamics residual needs uniformly spaced samples");

  const auto rhs = detail::compile_rhs(system);
  Values v = detail::bind(complete_params(system, params));
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    v[system.indep.index] = traj.times[k];
    for (std::size_t i = 0; i < system.state.size(); ++i) v[system.state[i].index] = traj.states[k][i];
    for (std::size_t i = 0; i < system.state.size(); ++i) {
      const double fd = (traj.states[k + 1][i] - traj.states[k - 1][i]) / (2 * h);
      worst = std::max(worst, std::abs(fd - rhs[i](v)));
    }
  }
  return worst;
}

double dynamics_residual(const Trajectory& traj, std::string_view system_id, const ParamValues& params) {
  return dynamics_residual(traj, models::load_model(system_id), params);
}

std::string to_csv(const Trajectory& traj) {
  std::string out = "u";
  for (const auto& name : traj.state_names) out += "," + name;
  out += '\n';
  char buf[32];
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
    out += buf;
    for (double x : traj.states[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Trajectory& traj, const std::string& path) { write_file(path, to_csv(traj)); }

std::string metadata_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["system"] = traj.system_id;
  j["params"] = traj.params;
  j["state"] = traj.state_names;
  j["abs_tol"] = traj.meta.abs_tol;
  j["rel_tol"] = traj.meta.rel_tol;
  j["output"] = output_name(traj.meta.output);
  if (traj.meta.output == OutputKind::FixedStep) j["fixed_step"] = traj.meta.fixed_step;
  j["accepted_steps"] = traj.meta.accepted;
  j["rejected_steps"] = traj.meta.rejected;
  j["termination"] = std::string(to_string(traj.meta.reason));
  j["samples"] = traj.times.size();
  j["arithmetic"] = "real double precision";
  return j.dump(2) + "\n";
}

void write_metadata(const Trajectory& traj, const std::string& path) { write_file(path, metadata_json(traj)); }

}  // namespace weylsym::numeric
