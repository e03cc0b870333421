#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weylsym/models.hpp"
#include "weylsym/numeric.hpp"
#include "weylsym/symcore/text.hpp"
#include "weylsym/verify/suite.hpp"
#include "weylsym/weyl.hpp"

namespace {

using namespace weylsym;

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct RunConfig {
  std::string scope = "all";
  std::string variant = "both";
  std::string map;
  std::uint64_t seed = verify::kDefaultSeed;
  std::size_t samples = 20;
  std::string format = "text";
  std::string out;
  bool serial = false;

  std::string word;
  std::string context;

  std::string system;
  std::vector<std::string> params;
  std::string init;
  std::string span = "0,1";
  numeric::NumericConfig numeric;
  double fixed_step = 0.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed number in ") + what + ": '" + item + "'");
    }
  }
  return out;
}

kernels::Execution execution(const RunConfig& cfg) {
  return cfg.serial ? kernels::Execution::Serial : kernels::Execution::Parallel;
}

void emit(const std::vector<verify::VerificationReport>& reports, const RunConfig& cfg) {
  for (const auto& r : reports)
    std::cout << (cfg.format == "records" ? verify::format_record(r) : verify::format_text(r)) << '\n';
  if (!cfg.out.empty()) {
    std::ofstream os(cfg.out);
    if (!os) throw std::runtime_error("cannot write " + cfg.out);
    for (const auto& r : reports) os << verify::format_record(r) << '\n';
  }
}

int cmd_verify(const RunConfig& cfg) {
  auto scope = verify::parse_scope(cfg.scope);
  if (!scope) throw UsageError("unknown scope '" + cfg.scope + "'");
  verify::SuiteOptions opts;
  opts.variant = cfg.variant == "printed"     ? verify::VariantChoice::Printed
                 : cfg.variant == "corrected" ? verify::VariantChoice::Corrected
                                              : verify::VariantChoice::Both;
  if (!cfg.map.empty()) {
    auto ids = models::map_ids();
    if (std::find(ids.begin(), ids.end(), cfg.map) == ids.end()) throw UsageError("unknown map '" + cfg.map + "'");
    opts.map = cfg.map;
  }
  opts.seed = cfg.seed;
  opts.execution = execution(cfg);
  auto reports = verify::run_suite(*scope, opts);
  if (reports.empty()) throw UsageError("no checks match the selection");
  emit(reports, cfg);

  std::size_t failed = 0;
  for (const auto& r : reports) failed += !r.passed();
  if (cfg.format == "text") {
    std::cout << reports.size() << " checks, " << failed << " failed\n";
    for (const auto& r : reports)
      if (r.resolved_variant) std::cout << "  " << r.check_id << ": " << *r.resolved_variant << " variant verifies\n";
  }
  return failed ? kFailed : kOk;
}

weyl::GroupWord parse_word(const RunConfig& cfg) {
  weyl::Context ctx = weyl::Context::Th1;
  if (cfg.context == "th2" || (cfg.context.empty() && cfg.word.find("pi") != std::string::npos))
    ctx = weyl::Context::Th2;
  else if (!cfg.context.empty() && cfg.context != "th1")
    throw UsageError("unknown context '" + cfg.context + "'");
  try {
    return weyl::parse_word(cfg.word, ctx);
  } catch (const weyl::WordError& e) {
    throw UsageError(e.what());
  }
}

std::string signed_int(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

int cmd_group(const std::string& sub, const RunConfig& cfg) {
  weyl::RelationOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.execution = execution(cfg);
  if (sub == "relations") {
    std::cout << "presentation: standard D3(2) relations (assumed); composition "
              << weyl::to_string(weyl::calibrate_convention()) << "; samples " << cfg.samples << "; seed "
              << cfg.seed << '\n';
    auto reports = weyl::verify_group_relations(opts);
    reports.push_back(weyl::report_pi_translation_conjugacy(opts));
    emit(reports, cfg);
    for (const auto& r : reports)
      if (!r.passed()) return kFailed;
    return kOk;
  }
  const auto word = parse_word(cfg);
  if (sub == "action") {
    const auto a = weyl::parameter_action(word);
    std::cout << "word " << weyl::to_string(word) << '\n';
    for (int i = 0; i < 3; ++i)
      std::cout << "  a" << i << "' = (" << a.matrix[i][0] << ", " << a.matrix[i][1] << ", " << a.matrix[i][2]
                << ") . a + " << a.offset[i] << '\n';
    std::cout << "  eta_sign " << signed_int(a.eta_sign) << "\n  indep_sign " << signed_int(a.indep_sign) << '\n';
    return kOk;
  }
  auto shift = weyl::translation_shift(word);
  if (!shift) {
    std::cout << weyl::to_string(word) << ": not a translation\n";
    return kOk;
  }
  std::cout << weyl::to_string(word) << ": (" << shift->vector[0] << ", " << shift->vector[1] << ", "
            << shift->vector[2] << ") eta_sign " << signed_int(shift->eta_sign) << " indep_sign "
            << signed_int(shift->indep_sign) << '\n';
  return kOk;
}

int cmd_integrate(const RunConfig& cfg) {
  const models::VectorFieldSystem* system = nullptr;
  try {
    system = &models::load_model(cfg.system);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  numeric::ParamValues params;
  for (const auto& p : cfg.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("parameter must be NAME=VALUE: '" + p + "'");
    auto name = p.substr(0, eq);
    if (!models::symbols().find(name)) throw UsageError("unknown parameter '" + name + "'");
    params[name] = parse_numbers(p.substr(eq + 1), "--param").at(0);
  }
  auto init = parse_numbers(cfg.init, "--init");
  if (init.size() != system->state.size())
    throw UsageError(system->id + " needs " + std::to_string(system->state.size()) + " initial values");
  auto span = parse_numbers(cfg.span, "--span");
  if (span.size() != 2) throw UsageError("--span needs two numbers");

  auto output = cfg.fixed_step > 0 ? numeric::OutputMode::fixed_step(cfg.fixed_step) : numeric::OutputMode::adaptive();
  numeric::Trajectory traj;
  try {
    traj = numeric::integrate(*system, params, init, span[0], span[1], cfg.numeric, output);
  } catch (const numeric::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  std::string csv = cfg.out.empty() ? system->id + ".csv" : cfg.out;
  numeric::write_csv(traj, csv);
  std::string sidecar = std::filesystem::path(csv).replace_extension(".json").string();
  numeric::write_metadata(traj, sidecar);
  std::cout << "wrote " << csv << " and " << sidecar << " (" << traj.times.size() << " samples, "
            << numeric::to_string(traj.meta.reason) << ")\n";
  for (const auto& fi : models::registry().integrals) {
    if (fi.system_id != system->id) continue;
    double drift = numeric::invariant_drift(traj, fi);
    std::cout << "drift " << fi.id << ' ' << drift << (drift < cfg.numeric.drift_tol ? "" : " (above tolerance)")
              << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact verification of a five-dimensional Painleve-type system and its Weyl group symmetry"};
  app.require_subcommand(0, 1);
  bool dump_models = false;
  app.add_flag("--dump-models", dump_models, "Print the model registry and exit");

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed for sampling and witnesses");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "records"}));
    sub->add_option("--out", cfg.out, "Write structured records (or CSV for integrate) here");
    sub->add_flag("--serial", cfg.serial, "Run kernels serially");
  };

  auto* verify_cmd = app.add_subcommand("verify", "Run symbolic checks");
  verify_cmd->add_option("scope", cfg.scope,
                         "all|symmetry|charts|integrals|hamiltonian|reduction|solutions|search");
  verify_cmd->add_option("--variant", cfg.variant, "Disputed-map variant")
      ->check(CLI::IsMember({"printed", "corrected", "both"}));
  verify_cmd->add_option("--map", cfg.map, "Restrict symmetry/chart checks to one map");
  add_common(verify_cmd);

  std::string group_sub;
  auto* group_cmd = app.add_subcommand("group", "Weyl group explorer");
  group_cmd->add_option("what", group_sub, "relations|action|shift")
      ->required()
      ->check(CLI::IsMember({"relations", "action", "shift"}));
  group_cmd->add_option("word", cfg.word, "Word such as \"s1 s2 s1 s0\"");
  group_cmd->add_option("--context", cfg.context, "th1 (five-dimensional) or th2 (four-dimensional)");
  group_cmd->add_option("--samples", cfg.samples, "Sample points per relation")->check(CLI::PositiveNumber);
  add_common(group_cmd);

  auto* int_cmd = app.add_subcommand("integrate", "Integrate a system numerically");
  int_cmd->add_option("system", cfg.system, "System id")->required();
  int_cmd->add_option("--param", cfg.params, "NAME=VALUE (repeatable)");
  int_cmd->add_option("--init", cfg.init, "Comma-separated initial state")->required();
  int_cmd->add_option("--span", cfg.span, "u0,u1");
  int_cmd->add_option("--abs-tol", cfg.numeric.abs_tol)->check(CLI::PositiveNumber);
  int_cmd->add_option("--rel-tol", cfg.numeric.rel_tol)->check(CLI::PositiveNumber);
  int_cmd->add_option("--fixed-step", cfg.fixed_step, "Equally spaced output with this step")
      ->check(CLI::PositiveNumber);
  int_cmd->add_option("--drift-tol", cfg.numeric.drift_tol, "Drift reported as above tolerance past this");
  add_common(int_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (dump_models) {
      std::cout << models::dump(models::registry());
      return kOk;
    }
    if (group_cmd->parsed()) {
      if (group_sub != "relations" && cfg.word.empty()) throw UsageError("group " + group_sub + " needs a word");
      return cmd_group(group_sub, cfg);
    }
    if (int_cmd->parsed()) return cmd_integrate(cfg);
    return cmd_verify(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
