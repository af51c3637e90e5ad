#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "curvosc/closed_form.hpp"
#include "curvosc/model.hpp"

using namespace curvosc;

namespace {
constexpr double kPi = 3.14159265358979323846;
// Frozen oracle values for the two bounded benchmarks and the unbounded one.
constexpr double kBoundedPlaneA = 0.60092521257733154885;   // sqrt(13)/6
constexpr double kUnboundedA = 1.9220937657784659816;       // sqrt(133)/6
constexpr double kUnboundedPerigee = 0.088760432445132648226;  // A + B
}  // namespace

TEST_CASE("bounded amplitudes on the plane benchmark") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.0, 3.0);
  CHECK(traj.kind == TrajectoryKind::Bounded);
  CHECK(traj.omega == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(traj.A == doctest::Approx(kBoundedPlaneA).epsilon(1e-14));
  CHECK(traj.B == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("bounded amplitudes on the sphere benchmark") {
  const auto traj = bounded_trajectory({-1.0, 2.0}, 1.0, 3.0);
  CHECK(traj.omega == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(traj.A == doctest::Approx(0.15).epsilon(1e-13));
  CHECK(traj.B == doctest::Approx(0.35).epsilon(1e-13));
  // Both turning radii stay inside the sphere wall.
  CHECK(traj.B + traj.A < 1.0);
  CHECK(traj.B - traj.A > 0.0);
}

TEST_CASE("circular energy collapses the amplitude") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.5, 3.375);
  CHECK(std::abs(traj.A) <= 1e-12);
  CHECK(traj.B == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero angular momentum collapses the inner turning point") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 0.0, 2.0);
  CHECK(traj.A == doctest::Approx(traj.B).epsilon(1e-14));
  const auto range = r2_range(traj);
  CHECK(range.first == doctest::Approx(0.0));
}

TEST_CASE("bounded construction rejects other regimes") {
  CHECK_THROWS_AS(bounded_trajectory({1.0, 3.0}, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(bounded_trajectory({1.0, 3.0}, 1.0, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(bounded_trajectory({1.0, 3.0}, 3.0, 5.0), std::invalid_argument);
}

TEST_CASE("unbounded amplitudes on the plane benchmark") {
  const auto traj = unbounded_trajectory({1.0, 3.0}, 1.0, 6.0);
  CHECK(traj.omega == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(traj.A == doctest::Approx(kUnboundedA).epsilon(1e-14));
  CHECK(traj.B == doctest::Approx(-11.0 / 6.0).epsilon(1e-14));
  CHECK(traj.A + traj.B == doctest::Approx(kUnboundedPerigee).epsilon(1e-12));
}

TEST_CASE("unbounded needs the hyperbolic plane") {
  CHECK_THROWS_AS(unbounded_trajectory({-1.0, 2.0}, 1.0, 10.0), std::invalid_argument);
  const auto line = unbounded_trajectory({1.0, 3.0}, 0.0, 6.0);
  CHECK(line.A == doctest::Approx(-line.B).epsilon(1e-14));
}

TEST_CASE("limiting amplitudes and the angular-momentum cutoff") {
  const auto traj = limiting_trajectory({1.0, 3.0}, 1.0);
  CHECK(traj.A == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
  CHECK(traj.B == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(traj.omega == 0.0);

  CHECK(limiting_trajectory({1.0, 3.0}, 0.0).B == doctest::Approx(0.0));
  CHECK_THROWS_AS(limiting_trajectory({1.0, 3.0}, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(limiting_trajectory({-1.0, 2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("radius evaluation hits the stated extremes") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.0, 3.0);
  const double t_max = kPi / (4.0 * traj.omega);  // sin(2 w t) = 1
  CHECK(eval_r2(traj, t_max) == doctest::Approx(traj.B + traj.A).epsilon(1e-12));

  const auto circular = bounded_trajectory({1.0, 3.0}, 1.5, 3.375);
  CHECK(eval_r2(circular, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eval_r2(circular, 17.3) == doctest::Approx(1.0).epsilon(1e-12));

  const auto lim = limiting_trajectory({1.0, 3.0}, 1.0);
  CHECK(eval_r2(lim, 0.0) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("radial profile repeats with period pi over omega") {
  const auto traj = bounded_trajectory({-1.0, 2.0}, 1.0, 3.0, 0.7);
  const double period = kPi / traj.omega;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> tdist(-20.0, 20.0);
  for (int k = 0; k < 100; ++k) {
    const double t = tdist(rng);
    CHECK(eval_r2(traj, t + period) == doctest::Approx(eval_r2(traj, t)).epsilon(1e-12));
  }
}

TEST_CASE("turning points solve the energy equation") {
  const struct {
    ModelParams params;
    double J, E;
  } cases[] = {{{1.0, 3.0}, 1.0, 3.0}, {{-1.0, 2.0}, 1.0, 3.0}, {{1.0, 3.0}, 1.0, 6.0}};
  for (const auto& c : cases) {
    const auto traj = make_trajectory(c.params, c.J, c.E);
    const auto range = r2_range(traj);
    CHECK(v_eff(c.params, c.J, std::sqrt(range.first)) ==
          doctest::Approx(c.E).epsilon(1e-10));
    if (std::isfinite(range.second))
      CHECK(v_eff(c.params, c.J, std::sqrt(range.second)) ==
            doctest::Approx(c.E).epsilon(1e-10));
  }
}

TEST_CASE("energy reconstructs from the frequency") {
  // Bounded: E = (alpha^2 - w^2)/(2 lambda); unbounded flips the sign of w^2.
  const auto bounded = bounded_trajectory({1.0, 3.0}, 1.0, 3.0);
  CHECK((9.0 - bounded.omega * bounded.omega) / 2.0 ==
        doctest::Approx(3.0).epsilon(1e-12));
  const auto unbounded = unbounded_trajectory({1.0, 3.0}, 1.0, 6.0);
  CHECK((9.0 + unbounded.omega * unbounded.omega) / 2.0 ==
        doctest::Approx(6.0).epsilon(1e-12));
  const auto sphere = bounded_trajectory({-1.0, 2.0}, 1.0, 3.0);
  CHECK((4.0 - sphere.omega * sphere.omega) / -2.0 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("azimuth advances at J over r squared") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.0, 3.0, 0.3, 0.2);
  const double h = 1e-5;
  for (double t = 0.1; t < 2.0; t += 0.23) {
    const double rate = (eval_state(traj, t + h).phi - eval_state(traj, t - h).phi) / (2 * h);
    const double expect = traj.J / eval_r2(traj, t);
    CHECK(rate == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("azimuth is monotone for positive J and continuous across branches") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.0, 3.0);
  double prev = eval_state(traj, 0.0).phi;
  for (int k = 1; k <= 2000; ++k) {
    const double phi = eval_state(traj, k * 0.01).phi;
    CHECK(phi > prev);
    CHECK(phi - prev < 0.2);  // no branch jumps
    prev = phi;
  }
}

TEST_CASE("initial azimuth of the plane benchmark") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.0, 3.0);
  // tan(phi_az - K) = (w/J) A at t = 0 with phi = 0.
  const double expect = std::atan(std::sqrt(3.0) * kBoundedPlaneA);
  CHECK(eval_state(traj, 0.0).phi == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("circular orbit rotates uniformly") {
  const auto traj = bounded_trajectory({1.0, 3.0}, 1.5, 3.375, 0.0, 0.4);
  const double phi0 = eval_state(traj, 0.0).phi;
  for (double t = 0.5; t < 8.0; t += 0.7)
    CHECK(eval_state(traj, t).phi - phi0 == doctest::Approx(1.5 * t).epsilon(1e-12));
}

TEST_CASE("line motion keeps the azimuth on the two half lines") {
  const auto lim = limiting_trajectory({1.0, 3.0}, 0.0, 2.0, 0.8);
  // (A t + phi)^2 stays positive for t >= 0: no origin passage, phi = K.
  for (double t = 0.0; t < 3.0; t += 0.37)
    CHECK(eval_state(lim, t).phi == doctest::Approx(0.8).epsilon(1e-14));

  const auto traj = bounded_trajectory({1.0, 3.0}, 0.0, 2.0, 0.0, 0.8);
  for (double t = 0.05; t < 3.0; t += 0.11) {
    const double phi = eval_state(traj, t).phi;
    const double gap = std::remainder(phi - 0.8, kPi);
    CHECK(std::abs(gap) < 1e-12);
  }
}

TEST_CASE("state energy matches the constructing energy") {
  const struct {
    ModelParams params;
    double J, E;
  } cases[] = {{{1.0, 3.0}, 1.0, 3.0}, {{-1.0, 2.0}, 1.0, 3.0}, {{1.0, 3.0}, 1.0, 6.0},
               {{1.0, 3.0}, 1.0, 4.5}};
  for (const auto& c : cases) {
    const auto traj = make_trajectory(c.params, c.J, c.E, 0.4, 0.1);
    for (double t = 0.1; t < 1.4; t += 0.31) {
      const auto state = eval_state(traj, t);
      CHECK(energy_of_state(c.params, state) == doctest::Approx(c.E).epsilon(1e-10));
      CHECK(state.J == c.J);
    }
  }
}

TEST_CASE("make_trajectory dispatches on the regime and rejects forbidden input") {
  CHECK(make_trajectory({1.0, 3.0}, 1.0, 3.0).kind == TrajectoryKind::Bounded);
  CHECK(make_trajectory({1.0, 3.0}, 1.0, 6.0).kind == TrajectoryKind::Unbounded);
  CHECK(make_trajectory({1.0, 3.0}, 1.0, 4.5).kind == TrajectoryKind::Limiting);
  CHECK_THROWS_AS(make_trajectory({1.0, 3.0}, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("phase recovery from initial conditions") {
  const ModelParams params{1.0, 3.0};
  const auto base = bounded_trajectory(params, 1.0, 3.0);

  SUBCASE("outer turning point pins the phase to the sine maximum") {
    const double r0 = std::sqrt(base.B + base.A);
    const auto pc = phase_from_initial(params, 1.0, 3.0, r0, 0, 0.0);
    // phi carries square-root sensitivity to r0 at a turning point, so the
    // angle itself is only good to ~sqrt(eps); the radius it reproduces is
    // exact again.
    CHECK(pc.phi == doctest::Approx(kPi / 2.0).epsilon(1e-7));
    const auto traj = bounded_trajectory(params, 1.0, 3.0, pc.phi, pc.K);
    CHECK(eval_state(traj, 0.0).r == doctest::Approx(r0).epsilon(1e-12));
  }
  SUBCASE("midrange radius with outward motion starts the sine at zero") {
    const auto pc = phase_from_initial(params, 1.0, 3.0, std::sqrt(base.B), +1, 0.0);
    CHECK(std::abs(pc.phi) < 1e-12);
  }
  SUBCASE("radius outside the attainable band is rejected") {
    CHECK_THROWS_AS(phase_from_initial(params, 1.0, 3.0, std::sqrt(base.B + base.A) + 0.1,
                                       0, 0.0),
                    std::invalid_argument);
  }
  SUBCASE("recovered constants reproduce the initial state") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.95), angle(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
      const double r2 = base.B - base.A + 2.0 * base.A * u(rng);
      const int sign = (k % 2) ? +1 : -1;
      const double phi0 = angle(rng);
      const auto pc = phase_from_initial(params, 1.0, 3.0, std::sqrt(r2), sign, phi0);
      const auto rebuilt = bounded_trajectory(params, 1.0, 3.0, pc.phi, pc.K);
      const auto state = eval_state(rebuilt, 0.0);
      CHECK(state.r == doctest::Approx(std::sqrt(r2)).epsilon(1e-9));
      CHECK(state.phi == doctest::Approx(phi0).epsilon(1e-9));
      if (std::abs(state.r_dot) > 1e-9) CHECK(state.r_dot * sign > 0.0);
    }
  }
}
