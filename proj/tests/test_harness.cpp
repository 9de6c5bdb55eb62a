#include <doctest.h>

#include "helpers.hpp"
#include "ppbif/error.hpp"
#include "ppbif/harness.hpp"
#include "ppbif/report_json.hpp"

using namespace ppbif;

namespace {

SweepConfig small(ModelFamily f, std::set<Check> checks, std::size_t n = 60) {
  SweepConfig c;
  c.family = f;
  c.samples = n;
  c.seed = 42;
  c.checks = std::move(checks);
  return c;
}

}  // namespace

TEST_CASE("splitmix64 reference output") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
}

TEST_CASE("rng conversion from the 64-bit engine") {
  SampleRng rng(5489);
  // First mt19937_64 output for the default seed is 14514284786278117030.
  CHECK(rng.uniform() == static_cast<double>(14514284786278117030ull >> 11) * 0x1.0p-53);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.log_uniform(0.1, 10.0);
    CHECK(v >= 0.1);
    CHECK(v <= 10.0);
  }
}

TEST_CASE("check names round-trip") {
  for (auto c : {Check::Hopf, Check::BT, Check::NS, Check::Rigidity, Check::DynamicsConfirm}) {
    CHECK(parse_check(to_string(c)) == c);
  }
  CHECK(parse_check("dynamics-confirm") == Check::DynamicsConfirm);
  CHECK_FALSE(parse_check("chaos").has_value());
}

TEST_CASE("sweep config validation") {
  auto c = small(ModelFamily::Bazykin, {});
  try {
    validate_sweep_config(c);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
    CHECK(std::string(e.what()).find("no checks requested") != std::string::npos);
  }
  c = small(ModelFamily::Bazykin, {Check::Hopf});
  c.free_param = "zeta";
  CHECK_THROWS_AS(validate_sweep_config(c), Error);
  c = small(ModelFamily::Bazykin, {Check::Hopf});
  c.ranges["zeta"] = {};
  CHECK_THROWS_AS(validate_sweep_config(c), Error);
}

TEST_CASE("sweep reports are identical for a fixed seed and any thread count") {
  auto c = small(ModelFamily::Bazykin, {Check::Hopf, Check::BT, Check::Rigidity}, 40);
  c.threads = 1;
  const auto a = nlohmann::json(run_sweep(c)).dump();
  c.threads = 3;
  const auto b = nlohmann::json(run_sweep(c)).dump();
  CHECK(a == b);
  c.seed = 43;
  CHECK(nlohmann::json(run_sweep(c)).dump() != a);
}

TEST_CASE("bazykin sweep has no counterexamples") {
  const auto rep = run_sweep(small(ModelFamily::Bazykin, {Check::Hopf, Check::Rigidity}, 300));
  CHECK(rep.counterexamples.empty());
  CHECK(rep.summary.points_by_kind.at("Hopf") > 0);
  CHECK(rep.summary.rigidity_blocked == rep.summary.rigidity_evaluated);
}

TEST_CASE("holling iv sweep has no counterexamples and no bt points") {
  auto c = small(ModelFamily::HollingIV, {Check::Hopf, Check::BT}, 200);
  c.ranges["h10"] = {0.1, 10};
  const auto rep = run_sweep(c);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.summary.points_by_kind.at("BT") == 0);
}

TEST_CASE("crowley-martin sweep has no counterexamples") {
  const auto rep = run_sweep(small(ModelFamily::CrowleyMartin, {Check::Hopf, Check::BT, Check::Rigidity}, 200));
  CHECK(rep.counterexamples.empty());
}

TEST_CASE("discrete sweep records confirmed counterexamples") {
  const auto rep = run_sweep(small(ModelFamily::DiscreteCrowleyMartin, {Check::NS}, 100));
  CHECK_FALSE(rep.counterexamples.empty());
  std::size_t merged = 0;
  for (const auto& ce : rep.counterexamples) {
    CHECK(ce.confirmed_at_tight_tolerance);
    REQUIRE(ce.point.has_value());
    CHECK(ce.point->verdict.branch != Branch::Descending);
    merged += ce.violating_points;
  }
  CHECK(merged == rep.summary.violating_points);
}

TEST_CASE("dynamics confirmation in a sweep") {
  auto c = small(ModelFamily::Bazykin, {Check::DynamicsConfirm}, 4);
  c.dynamics_cap = 4;
  const auto rep = run_sweep(c);
  for (const auto& s : rep.samples) {
    for (const auto& d : s.dynamics) {
      if (d.evaluated) CHECK(d.flips);
    }
  }
}

TEST_CASE("duality on a shared nullcline") {
  const auto rep = duality_report({1, 2, 1, 1, 0, 1, 1}, 1e-3, 0.045, 12);
  CHECK(rep.entries.size() == 12);
  CHECK(rep.both_nonempty == 12);
  CHECK(rep.ordered == rep.both_nonempty);
  for (const auto& e : rep.entries) {
    CHECK(e.x_v == doctest::Approx(0.5));
    for (double x : e.hopf_x) CHECK(x < 0.5);
    for (double x : e.ns_x) CHECK(x > 0.5);
  }
}

TEST_CASE("duality beyond the largest hopf interference value") {
  const auto rep = duality_report({1, 2, 1, 1, 0, 1, 1}, 0.05, 0.06, 3);
  for (const auto& e : rep.entries) CHECK(e.hopf_empty);
}
