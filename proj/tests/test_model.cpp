#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "curvosc/model.hpp"

using namespace curvosc;

TEST_CASE("parameter validation rejects zero curvature and nonpositive strength") {
  CHECK_THROWS_AS(validate(ModelParams{0.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{1.0, -2.0}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(ModelParams{inf, 1.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(ModelParams{-0.5, 2.0}));
}

TEST_CASE("radial domain is the half line or the sphere interior") {
  const RadialDomain plane = radial_domain({1.0, 3.0});
  CHECK(plane.lo == 0.0);
  CHECK(std::isinf(plane.hi));
  CHECK(plane.contains(1e6));
  CHECK(!plane.contains(0.0));

  const RadialDomain sphere = radial_domain({-4.0, 3.0});
  CHECK(sphere.hi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sphere.contains(0.499));
  CHECK(!sphere.contains(0.5));
}

TEST_CASE("effective potential matches hand values at unit radius") {
  CHECK(v_eff({1.0, 3.0}, 0.0, 1.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(v_eff({1.0, 3.0}, 1.0, 1.0) == doctest::Approx(2.75).epsilon(1e-15));
}

TEST_CASE("centrifugal-free potential vanishes toward the origin") {
  CHECK(std::abs(v_eff({1.0, 3.0}, 0.0, 1e-8)) < 1e-15);
  CHECK(std::abs(v_eff({-1.0, 2.0}, 0.0, 1e-8)) < 1e-15);
  // With angular momentum the barrier diverges instead.
  CHECK(v_eff({1.0, 3.0}, 1.0, 1e-8) > 1e15);
}

TEST_CASE("potential evaluation outside the domain throws") {
  CHECK_THROWS_AS(v_eff({-1.0, 2.0}, 1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(v_eff({-1.0, 2.0}, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(v_eff({1.0, 3.0}, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(v_eff({1.0, 3.0}, 1.0, -0.3), std::domain_error);
}

TEST_CASE("potential minimum closed form on both surfaces") {
  const auto plane = v_eff_minimum({1.0, 3.0}, 1.0);
  REQUIRE(plane);
  REQUIRE(plane->r_min);
  CHECK(*plane->r_min == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(plane->v_min == doctest::Approx(2.5).epsilon(1e-15));

  const auto sphere = v_eff_minimum({-1.0, 2.0}, 1.0);
  REQUIRE(sphere);
  REQUIRE(sphere->r_min);
  CHECK(*sphere->r_min == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(sphere->v_min == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("no interior minimum at high angular momentum on the plane") {
  CHECK(!v_eff_minimum({1.0, 3.0}, 3.0));
  CHECK(!v_eff_minimum({1.0, 3.0}, -4.0));
  // The sphere keeps a minimum at any J.
  CHECK(v_eff_minimum({-1.0, 2.0}, 50.0));
}

TEST_CASE("zero angular momentum uses the floor convention") {
  const auto floor = v_eff_minimum({1.0, 3.0}, 0.0);
  REQUIRE(floor);
  CHECK(!floor->r_min);
  CHECK(floor->v_min == 0.0);
}

TEST_CASE("minimum is signed-J symmetric") {
  const auto pos = v_eff_minimum({-0.7, 1.3}, 0.9);
  const auto neg = v_eff_minimum({-0.7, 1.3}, -0.9);
  REQUIRE(pos);
  REQUIRE(neg);
  CHECK(*pos->r_min == *neg->r_min);
  CHECK(pos->v_min == neg->v_min);
}

TEST_CASE("energy of the circular state sits on the potential floor") {
  const ClassicalState circular{1.0, 0.0, 0.0, 1.5};
  CHECK(energy_of_state({1.0, 3.0}, circular) == doctest::Approx(3.375).epsilon(1e-15));
  CHECK(energy_of_state({1.0, 3.0}, {1.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("energy at rest equals the effective potential") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 0.9), jdist(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const ModelParams params{k % 2 ? 1.3 : -1.3, 2.1};
    const double r = (params.lambda < 0) ? u(rng) * radial_domain(params).hi : u(rng) * 2.0;
    const double J = jdist(rng);
    CHECK(energy_of_state(params, {r, 0.0, 0.0, J}) ==
          doctest::Approx(v_eff(params, J, r)).epsilon(1e-14));
  }
}

TEST_CASE("motion constants and regime for the bounded plane benchmark") {
  const MotionConstants mc = motion_constants({1.0, 3.0}, 1.0, 3.0);
  CHECK(mc.C == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(mc.qa == -1.0);
  CHECK(mc.qc == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(mc.delta == doctest::Approx(-13.0).epsilon(1e-15));
  CHECK(mc.omega == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(mc.regime == Regime::Bounded);
}

TEST_CASE("threshold energy classifies as the limiting case with zero frequency") {
  const MotionConstants mc = motion_constants({1.0, 3.0}, 1.0, 4.5);
  CHECK(mc.C == doctest::Approx(0.0));
  CHECK(std::abs(mc.qc) < 1e-14);
  CHECK(mc.regime == Regime::Limiting);
  CHECK(mc.omega == 0.0);
}

TEST_CASE("motion constants on the sphere") {
  const MotionConstants mc = motion_constants({-1.0, 2.0}, 1.0, 3.0);
  CHECK(mc.C == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(mc.qc == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(mc.omega == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(mc.regime == Regime::Bounded);
}

TEST_CASE("energies below the potential floor are forbidden, not errors") {
  CHECK(motion_constants({1.0, 3.0}, 1.0, 2.0).regime == Regime::Forbidden);
  // J = 0 floor sits at zero energy, itself excluded.
  CHECK(motion_constants({1.0, 3.0}, 0.0, 0.0).regime == Regime::Forbidden);
  CHECK(motion_constants({1.0, 3.0}, 0.0, -1.0).regime == Regime::Forbidden);
  CHECK(motion_constants({1.0, 3.0}, 0.0, 0.5).regime == Regime::Bounded);
}

TEST_CASE("high angular momentum on the plane splits at the escape threshold") {
  // No stationary point: everything at or below alpha^2/(2 lambda) is
  // unreachable, everything above escapes.
  CHECK(motion_constants({1.0, 3.0}, 3.0, 4.5).regime == Regime::Forbidden);
  CHECK(motion_constants({1.0, 3.0}, 3.0, 2.0).regime == Regime::Forbidden);
  CHECK(motion_constants({1.0, 3.0}, 3.0, 5.0).regime == Regime::Unbounded);
  CHECK(motion_constants({1.0, 3.0}, -3.5, 6.0).regime == Regime::Unbounded);
}

TEST_CASE("nonfinite inputs are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(motion_constants({1.0, 3.0}, nan, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(motion_constants({1.0, 3.0}, 1.0, nan), std::invalid_argument);
}

TEST_CASE("regime names round-trip through to_string") {
  CHECK(std::string(to_string(Regime::Bounded)) == "Bounded");
  CHECK(std::string(to_string(Regime::Forbidden)) == "Forbidden");
  CHECK(std::string(to_string(Regime::Unbounded)) == "Unbounded");
  CHECK(std::string(to_string(Regime::Limiting)) == "Limiting");
}
