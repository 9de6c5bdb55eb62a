#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "ppbif/bifurcation.hpp"
#include "ppbif/dynamics.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"

using namespace ppbif;
using namespace testing_support;

namespace {

Trajectory synthetic(double rate, double omega, double radius, double t_end, double dt) {
  Trajectory t;
  t.step = dt;
  for (double s = 0.0; s <= t_end; s += dt) {
    const double r = radius * std::exp(rate * s);
    t.times.push_back(s);
    t.states.push_back({1.0 + r * std::cos(omega * s), 1.0 + r * std::sin(omega * s)});
  }
  return t;
}

double endpoint_error(const ModelInstance& m, PlanarState s0, double t_end, double dt, PlanarState ref) {
  const auto tr = integrate_flow(m, s0, t_end, dt, 1u << 30);
  const auto e = tr.states.back();
  return std::hypot(e.x - ref.x, e.y - ref.y);
}

}  // namespace

TEST_CASE("an exact equilibrium is stationary") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const auto tr = integrate_flow(pt.instance(), pt.state, 100.0, 0.01, 100);
  for (const auto& s : tr.states) {
    CHECK(std::abs(s.x - pt.state.x) <= 1e-8);
    CHECK(std::abs(s.y - pt.state.y) <= 1e-8);
  }
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(100.0));
  CHECK_FALSE(tr.diverged);
}

TEST_CASE("map fixed point gives a constant orbit") {
  const auto m = discrete_cm(1, 2, 1, 1, 0.1, 1, 1);
  const auto c = condition_on_cep(m, 0.7);
  const PlanarState s{0.7, prey_nullcline(c, 0.7).g};
  const auto tr = iterate_map(c, s, 1000);
  CHECK(tr.is_map);
  CHECK(tr.method_order == 1);
  CHECK(tr.states.size() == 1001);
  for (const auto& p : tr.states) CHECK(std::hypot(p.x - s.x, p.y - s.y) <= 1e-12);
}

TEST_CASE("rk4 global error is fourth order") {
  const auto m = bazykin(1, 3, 2, 1, 1, 0.2, 0.5);
  const PlanarState s0{1.2, 0.4};
  const auto ref = integrate_flow(m, s0, 5.0, 1e-4, 1u << 30).states.back();
  const double e1 = endpoint_error(m, s0, 5.0, 0.1, ref);
  const double e2 = endpoint_error(m, s0, 5.0, 0.05, ref);
  CHECK(e1 / e2 >= 12.0);
  CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("recording stride keeps the endpoints") {
  const auto tr = integrate_flow(reference_bazykin(), {1, 0.5}, 1.0, 0.03, 7);
  CHECK(tr.step == doctest::Approx(1.0 / 34.0));
  CHECK(tr.times.back() == doctest::Approx(1.0));
  CHECK(tr.times.size() == 1 + 34 / 7 + 1);
}

TEST_CASE("synthetic spiral converges") {
  const auto v = classify_orbit(synthetic(-0.05, 1.0, 0.5, 400, 0.05), {1, 1});
  CHECK(v.kind == OrbitKind::ConvergesToEquilibrium);
  CHECK(v.decay_rate < 0.0);
}

TEST_CASE("synthetic circle is a limit cycle with the constructed period") {
  const double omega = 2.0 * std::numbers::pi / 7.0;
  const auto v = classify_orbit(synthetic(0.0, omega, 0.3, 700, 0.01), {1, 1});
  CHECK(v.kind == OrbitKind::LimitCycle);
  REQUIRE(v.period_estimate.has_value());
  CHECK(*v.period_estimate == doctest::Approx(7.0).epsilon(0.02));
  CHECK(v.amplitude == doctest::Approx(0.3).epsilon(0.01));
}

TEST_CASE("synthetic blowup is divergent") {
  const auto v = classify_orbit(synthetic(0.05, 1.0, 1.0, 600, 0.05), {1, 1});
  CHECK(v.kind == OrbitKind::Divergent);
}

TEST_CASE("synthetic map circle is an invariant circle") {
  auto t = synthetic(0.0, 0.7, 0.2, 4000, 1.0);
  t.is_map = true;
  t.method_order = 1;
  CHECK(classify_orbit(t, {1, 1}).kind == OrbitKind::InvariantCircle);
}

TEST_CASE("too few samples") {
  try {
    classify_orbit(synthetic(0.0, 1.0, 1.0, 10, 0.1), {1, 1});
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }
}

TEST_CASE("characteristic step is clamped") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const double dt = characteristic_dt(pt.instance(), pt.state);
  CHECK(dt >= 1e-4);
  CHECK(dt <= 1e-2);
}

TEST_CASE("bazykin hopf crossing flips the orbit type") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const auto probe = probe_crossing(pt, pt.instance());
  CHECK(probe.flips);
  CHECK(probe.side_matches);
  CHECK(probe.below.verdict.kind == OrbitKind::ConvergesToEquilibrium);
  CHECK(probe.above.verdict.kind == OrbitKind::LimitCycle);
  CHECK(probe.transversality > 0.0);
}

TEST_CASE("neimark-sacker crossing flips the orbit type") {
  const auto m = discrete_cm(1, 2, 1, 1, 0.1, 1, 1);
  const auto pts = ns_locus(m, "c", {.x_panels = 32});
  const BifurcationPoint* chosen = nullptr;
  for (const auto& p : pts) {
    if (p.verdict.branch == Branch::Descending && p.x_star > 0.6) {
      chosen = &p;
      break;
    }
  }
  REQUIRE(chosen != nullptr);
  const auto probe = probe_crossing(*chosen, chosen->instance());
  CHECK(probe.flips);
  CHECK(probe.side_matches);
  const bool circle = probe.below.verdict.kind == OrbitKind::InvariantCircle ||
                      probe.above.verdict.kind == OrbitKind::InvariantCircle;
  CHECK(circle);
}
