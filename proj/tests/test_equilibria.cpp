#include <doctest.h>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "ppbif/bifurcation.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/harness.hpp"

using namespace ppbif;
using namespace testing_support;

TEST_CASE("holling iv predator nullcline is linear in x") {
  const auto y = predator_nullcline_y(holling(1, 2, 1), 0.25);
  REQUIRE(y.has_value());
  CHECK(*y == doctest::Approx(0.125));
}

TEST_CASE("crowley-martin predator nullcline can be negative") {
  CHECK_FALSE(predator_nullcline_y(crowley_martin(0.5, 2, 1, 1, 1, 1, 1), 1.0).has_value());
}

TEST_CASE("bazykin predator nullcline touches zero where the numerical response equals d") {
  // e a x / (x + b) = d at x = 1 for e = 0.2, a = 1, b = 1, d = 0.1
  CHECK_FALSE(predator_nullcline_y(bazykin(1, 3, 1, 1, 0.2, 0.1, 1), 1.0).has_value());
}

TEST_CASE("hopf-family bazykin equilibrium") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const auto eqs = find_coexistence_equilibria(pt.instance());
  bool found = false;
  for (const auto& e : eqs) {
    if (std::abs(e.state.x - 0.5) < 1e-10 && std::abs(e.state.y - oracle::kBazykinHopfY) < 1e-10) {
      found = true;
      CHECK(e.residual_norm <= 1e-10 * std::max(1.0, e.residual_scale));
    }
  }
  CHECK(found);
}

TEST_CASE("no coexistence gives an empty list") {
  // Predator conversion too weak: e a x/(x+b) < d on the whole interval.
  CHECK(find_coexistence_equilibria(bazykin(1, 3, 1, 1, 0.01, 1, 1)).empty());
}

TEST_CASE("equilibria are sorted, distinct and labelled") {
  const auto m = bazykin(1, 10, 1, 1, 1, 0.3, 0.05);
  const NullclineProfile p(m);
  const auto eqs = find_coexistence_equilibria(m, p);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    CHECK(eqs[i].state.x > 0.0);
    CHECK(eqs[i].state.y > 0.0);
    CHECK(eqs[i].branch == branch_of(p, eqs[i].state.x));
    if (i > 0) CHECK(eqs[i].state.x > eqs[i - 1].state.x);
  }
}

TEST_CASE("boundary equilibria") {
  const auto b = boundary_equilibria(reference_bazykin());
  REQUIRE(b.size() == 2);
  CHECK(b[0].x == 0.0);
  CHECK(b[1].x == doctest::Approx(3.0));
  CHECK(b[1].y == 0.0);
}

TEST_CASE("conditioning places an equilibrium on the prey nullcline") {
  for (const auto& m : {reference_bazykin(), holling(2, 1, 1), crowley_martin(1, 2, 1, 1, 0.2, 1, 0.5),
                        discrete_cm(1, 2, 1, 1, 0.2, 1, 0.5)}) {
    const NullclineProfile p(m);
    const double x = p.x_lo() + 0.3 * (p.x_hi() - p.x_lo());
    const auto c = condition_on_cep(m, x);
    const PlanarState s{x, prey_nullcline(c, x).g};
    const auto v = vector_field(c, s);
    CHECK(std::abs(v.dx) <= 1e-12 * residual_scale(c, s));
    CHECK(std::abs(v.dy) <= 1e-12 * residual_scale(c, s));
  }
}

TEST_CASE("newton refinement recovers a perturbed equilibrium") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const auto s = refine_equilibrium(pt.instance(), {0.51, 0.115});
  REQUIRE(s.has_value());
  CHECK(s->x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s->y == doctest::Approx(oracle::kBazykinHopfY).epsilon(1e-12));
}

TEST_CASE("holling iv under the tied parametrization has exactly one equilibrium") {
  SampleRng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const auto m = holling(rng.log_uniform(0.1, 10), rng.log_uniform(0.1, 10), rng.log_uniform(0.1, 10),
                           rng.uniform() < 0.5 ? 0.0 : rng.log_uniform(0.01, 0.1));
    const auto eqs = find_coexistence_equilibria(m);
    if (m.holling_params().delta_eff() <= 0.0) {
      CHECK(eqs.empty());
    } else {
      CHECK(eqs.size() == 1);
    }
  }
}
