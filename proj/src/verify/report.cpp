#include "weylsym/verify/report.hpp"

#include <random>

#include <json.hpp>

#include "weylsym/models.hpp"
#include "weylsym/symcore/text.hpp"

namespace weylsym::verify {

void VerificationReport::add_residual(std::string label, const RatExpr& value, bool vanishes) {
  if (vanishes) {
    residuals.push_back({std::move(label), std::nullopt});
    return;
  }
  residuals.push_back({std::move(label), value});
  status = Status::Fail;
}

void VerificationReport::fail(std::string note) {
  status = Status::Fail;
  notes.push_back(std::move(note));
}

std::string_view to_string(Status s) { return s == Status::Pass ? "PASS" : "FAIL"; }

std::string witness_string(const VerificationReport& r) {
  if (!r.witness) return "";
  std::string out;
  for (const auto& [name, value] : *r.witness) {
    if (!out.empty()) out += ",";
    out += name + "=" + weylsym::to_string(value);
  }
  return out;
}

std::string format_text(const VerificationReport& r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", r.millis);
  std::string line = r.check_id + " " + std::string(to_string(r.status)) + " " + ms + " ms";
  if (r.sampled) line += " [sampled]";
  for (const auto& n : r.notes) line += "; " + n;
  if (r.witness) line += "; witness " + witness_string(r);
  return line;
}

namespace {

nlohmann::ordered_json record_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["status"] = std::string(to_string(r.status));
  j["witness"] = r.witness ? nlohmann::ordered_json(witness_string(r)) : nlohmann::ordered_json(nullptr);
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  j["sampled"] = r.sampled;
  if (r.resolved_variant) j["resolved_variant"] = *r.resolved_variant;
  j["notes"] = r.notes;
  auto residuals = nlohmann::ordered_json::array();
  for (const auto& res : r.residuals)
    residuals.push_back({{"label", res.label},
                         {"value", res.value ? weylsym::to_string(*res.value, models::symbols()) : "0"}});
  j["residuals"] = residuals;
  return j;
}

}  // namespace

std::string format_record(const VerificationReport& r) {
  auto j = record_json(r);
  j["millis"] = r.millis;
  return j.dump();
}

std::string format_record_untimed(const VerificationReport& r) { return record_json(r).dump(); }

std::optional<std::vector<std::pair<std::string, Rational>>> find_witness(const RatExpr& e,
                                                                          std::uint64_t seed) {
  if (e.is_structurally_zero()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 50);
  const auto& table = models::symbols();
  const std::uint32_t support = e.support();
  for (int attempt = 0; attempt < 100; ++attempt) {
    Point p;
    std::vector<std::pair<std::string, Rational>> values;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!((support >> i) & 1u)) continue;
      Rational r(num(rng), den(rng));
      r.canonicalize();
      SymbolId id{static_cast<std::uint8_t>(i)};
      p.set(id, r);
      values.emplace_back(table.name(id), r);
    }
    auto v = try_evaluate(e, p);
    if (v && sgn(*v) != 0) return values;
  }
  return std::nullopt;
}

}  // namespace weylsym::verify
