#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "weylsym/numeric.hpp"

using namespace weylsym;
using namespace weylsym::numeric;
using models::Variant;

namespace {

const ParamValues kGeneric{{"a0", 0.3}, {"a2", 0.45}, {"eta", 0.7}};
const std::vector<double> kStart{0.4, 1.3, -0.6, 0.8, 0.5};

NumericConfig tight(double tol = 1e-12) {
  NumericConfig c;
  c.abs_tol = c.rel_tol = tol;
  return c;
}

Trajectory five_dim_grid(const ParamValues& params, double h, double span = 0.5) {
  return integrate("five_dim", params, kStart, 0.0, span, tight(), OutputMode::fixed_step(h));
}

}  // namespace

TEST_CASE("linear equation against its closed form") {
  // dx/dt = x/2 + 1/2 from x(0) = 0 gives x(1) = e^{1/2} - 1.
  auto traj = integrate("linear_xz", {{"a0", 1.0}, {"a2", 0.5}, {"eta", 0.0}}, {0.0, 0.0}, 0.0, 1.0, tight());
  CHECK(traj.times.back() == 1.0);
  CHECK(std::abs(traj.states.back()[0] - (std::exp(0.5) - 1.0)) < 1e-8);
  CHECK(traj.meta.reason == Termination::Completed);
}

TEST_CASE("an equilibrium stays put") {
  auto traj = integrate("five_dim", {{"a0", 0.5}, {"a2", 0.25}, {"eta", 1.0}}, {-2.0, 0.0, 1.0, 0.0, 0.0}, 0.0, 3.0);
  for (const auto& s : traj.states) {
    CHECK(std::abs(s[0] + 2.0) < 1e-12);
    CHECK(std::abs(s[2] - 1.0) < 1e-12);
  }
}

TEST_CASE("tightening tolerances reduces the error") {
  const ParamValues p{{"a0", 1.0}, {"a2", 0.5}, {"eta", 0.0}};
  const double exact = std::exp(0.5 * 3.0) - 1.0;
  auto loose = integrate("linear_xz", p, {0.0, 0.0}, 0.0, 3.0, tight(1e-6));
  auto strict = integrate("linear_xz", p, {0.0, 0.0}, 0.0, 3.0, tight(1e-8));
  CHECK(std::abs(strict.states.back()[0] - exact) < std::abs(loose.states.back()[0] - exact));
  CHECK(strict.meta.accepted > loose.meta.accepted);
}

TEST_CASE("four-dimensional span through s = 0 is refused") {
  CHECK_THROWS_AS(integrate("ham_4d", kGeneric, {0.1, 0.2, 0.3, 0.4}, -1.0, 1.0), DomainError);
  CHECK_NOTHROW(integrate("ham_4d", kGeneric, {0.1, 0.2, 0.3, 0.4}, 1.0, 1.5));
  CHECK_THROWS_AS(integrate("five_dim", kGeneric, {1.0, 2.0}, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate("five_dim", {{"bogus", 1.0}}, kStart, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("first integrals are conserved along trajectories") {
  auto traj = integrate("five_dim", kGeneric, kStart, 0.0, 1.0, tight());
  CHECK(invariant_drift(traj, "ywq") < 1e-6);

  auto k1 = integrate("K1_sys", kGeneric, {0.6, -0.4}, 1.0, 2.0, tight());
  CHECK(invariant_drift(k1, "I1") < 1e-6);

  auto k2 = integrate("tildeK2_sys", kGeneric, {0.3, 0.9}, 1.0, 2.0, tight());
  CHECK(invariant_drift(k2, "I2") < 1e-6);

  models::FirstIntegral perturbed = models::load_integral("ywq");
  perturbed.expr = models::expr("y - 101/100*w*q");
  CHECK(invariant_drift(traj, perturbed) > 1e-3);
  CHECK_THROWS_AS(invariant_drift(k1, "ywq"), std::invalid_argument);
}

TEST_CASE("self residual of a fixed-step trajectory") {
  auto traj = five_dim_grid(kGeneric, 1e-3);
  CHECK(dynamics_residual(traj, "five_dim", kGeneric) < 1e-5);

  ParamValues wrong = kGeneric;
  wrong["a0"] += 1.0;
  CHECK(dynamics_residual(traj, "five_dim", wrong) > 1e-2);
}

TEST_CASE("central differences converge at second order") {
  const double coarse = dynamics_residual(five_dim_grid(kGeneric, 1e-2), "five_dim", kGeneric);
  const double fine = dynamics_residual(five_dim_grid(kGeneric, 5e-3), "five_dim", kGeneric);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("residual input validation") {
  auto traj = integrate("five_dim", kGeneric, kStart, 0.0, 0.5);
  CHECK_THROWS_AS(dynamics_residual(traj, "five_dim", kGeneric), std::invalid_argument);
  auto few = integrate("five_dim", kGeneric, kStart, 0.0, 0.3, {}, OutputMode::fixed_step(0.1));
  CHECK_THROWS_AS(dynamics_residual(few, "five_dim", kGeneric), std::invalid_argument);
}

TEST_CASE("pushforward through s1 is again a solution") {
  auto traj = five_dim_grid(kGeneric, 1e-3);
  auto image = pushforward(traj, "s1_5d");
  CHECK(image.system_id == "five_dim");
  CHECK(image.params.at("a1") == doctest::Approx(-traj.params.at("a1")));
  CHECK(dynamics_residual(image, "five_dim", image.params) < 1e-4);

  // With a1 = 0 the map is the identity on states.
  ParamValues flat{{"a0", 0.4}, {"a2", 0.6}, {"eta", 0.7}};
  auto base = five_dim_grid(flat, 1e-2);
  auto same = pushforward(base, "s1_5d");
  for (std::size_t k = 0; k < base.states.size(); ++k)
    for (std::size_t i = 0; i < 5; ++i) CHECK(same.states[k][i] == doctest::Approx(base.states[k][i]).epsilon(1e-14));
}

TEST_CASE("pushforward through s0 transforms parameters and eta") {
  auto traj = five_dim_grid(kGeneric, 1e-3);
  auto image = pushforward(traj, "s0_5d");
  CHECK(image.params.at("a0") == doctest::Approx(-0.3));
  CHECK(image.params.at("a1") == doctest::Approx(0.25 + 0.6));
  CHECK(image.params.at("eta") == doctest::Approx(-0.7));
  CHECK(dynamics_residual(image, "five_dim", image.params) < 1e-4);
}

TEST_CASE("only the corrected s2 carries solutions to solutions") {
  auto traj = five_dim_grid(kGeneric, 1e-3);
  auto corrected = pushforward(traj, "s2_5d", Variant::Corrected);
  auto printed = pushforward(traj, "s2_5d", Variant::Printed);
  CHECK(dynamics_residual(corrected, "five_dim", corrected.params) < 1e-4);
  CHECK(dynamics_residual(printed, "five_dim", printed.params) > 1e-2);
}

TEST_CASE("reflected time is re-sorted") {
  auto traj = integrate("ham_4d", kGeneric, {0.1, 0.2, 0.3, 0.4}, 1.0, 1.5, tight(), OutputMode::fixed_step(1e-3));
  auto image = pushforward(traj, "s0_4d");
  CHECK(image.times.front() == doctest::Approx(-1.5));
  CHECK(image.times.back() == doctest::Approx(-1.0));
  for (std::size_t k = 1; k < image.times.size(); ++k) CHECK(image.times[k] > image.times[k - 1]);
  CHECK(dynamics_residual(image, "ham_4d", image.params) < 1e-4);
}

TEST_CASE("the reduced trajectory solves the four-dimensional system") {
  // Sample at times whose images s = exp(-t) are equally spaced.
  const double u0 = 0.1, s0 = std::exp(-u0), ds = 1e-3;
  std::vector<double> times;
  for (int k = 1; k <= 300; ++k) times.push_back(-std::log(s0 - k * ds));
  std::vector<double> init = kStart;
  init[1] = init[3] * init[4] + s0;  // on the locus y - w*q = exp(-t)
  auto traj = integrate("five_dim", kGeneric, init, u0, times.back(), tight(), OutputMode::at_times(times));
  REQUIRE(traj.times.size() == 301);
  auto reduced = pushforward(traj, "reduce_5d_4d");
  CHECK(reduced.system_id == "ham_4d");
  CHECK(reduced.times.front() == doctest::Approx(s0));
  CHECK(dynamics_residual(reduced, "ham_4d", reduced.params) < 1e-4);
}

TEST_CASE("near-singular samples are reported with their index") {
  // With w = 0 and a2 = 0, x = -1/2 + t/2 reaches zero at t = 1; s2 divides by x.
  auto traj = integrate("five_dim", {{"a0", 0.3}, {"a2", 0.0}, {"eta", 0.0}}, {-0.5, 0.0, 0.0, 0.0, 0.0}, 0.0, 2.0,
                        tight(), OutputMode::fixed_step(0.25));
  try {
    pushforward(traj, "s2_5d", Variant::Corrected);
    FAIL("expected a near-singular sample");
  } catch (const NearSingularError& e) {
    CHECK(e.index == 4);
  }
}

TEST_CASE("integration is deterministic and serializes cleanly") {
  auto a = integrate("five_dim", kGeneric, kStart, 0.0, 1.0);
  auto b = integrate("five_dim", kGeneric, kStart, 0.0, 1.0);
  CHECK(to_csv(a) == to_csv(b));
  const std::string csv = to_csv(a);
  CHECK(csv.rfind("u,x,y,z,w,q\n", 0) == 0);

  auto meta = nlohmann::json::parse(metadata_json(a));
  CHECK(meta["system"] == "five_dim");
  CHECK(meta["termination"] == "completed");
  CHECK(meta["params"]["a1"].get<double>() == doctest::Approx(0.25));
  CHECK(meta["samples"].get<std::size_t>() == a.times.size());

  const auto dir = std::filesystem::temp_directory_path() / "weylsym_numeric_test";
  std::filesystem::create_directories(dir);
  write_csv(a, (dir / "t.csv").string());
  write_metadata(a, (dir / "t.json").string());
  std::ifstream in(dir / "t.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "u,x,y,z,w,q");
  std::filesystem::remove_all(dir);
}

TEST_CASE("blow-up is detected") {
  auto traj = integrate("linear_xz", {{"a0", 1.0}, {"a2", 30.0}, {"eta", 0.0}}, {1.0, 0.0}, 0.0, 10.0);
  CHECK(traj.meta.reason == Termination::BlowUp);
  CHECK(traj.times.back() < 10.0);
}
