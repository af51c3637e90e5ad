#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/jacobi.hpp>
#include <cmath>
#include <random>

#include "curvosc/jacobi.hpp"

using curvosc::jacobi_derivative;
using curvosc::jacobi_eval;
using curvosc::jacobi_second_derivative;

TEST_CASE("degree zero and one are exact") {
  CHECK(jacobi_eval(0, 0.7, -3.2, 0.4) == 1.0);
  CHECK(jacobi_eval(0, 2.0, 1.5, -5.0) == 1.0);
  // P_1 = (a + 1) + (a + b + 2)(t - 1)/2.
  CHECK(jacobi_eval(1, 1.0, -2.5, 0.0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(jacobi_eval(1, 0.5, 0.5, 0.2) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("value at t = 1 is the binomial coefficient") {
  CHECK(jacobi_eval(3, 1.0, -2.5, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(jacobi_eval(2, 0.5, -3.5, 1.0) == doctest::Approx(1.875).epsilon(1e-14));
  CHECK(jacobi_eval(5, 0.0, 0.7, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("frozen reference values, recurrence path") {
  CHECK(jacobi_eval(3, 0.5, -3.5, 0.3) ==
        doctest::Approx(1.0421249999999999873).epsilon(1e-14));
  CHECK(jacobi_eval(3, 0.5, -3.5, 1.7) ==
        doctest::Approx(4.1903749999999998403).epsilon(1e-14));
  CHECK(jacobi_eval(2, 0.0, 0.5, -0.2) ==
        doctest::Approx(-0.3649999999999999864).epsilon(1e-13));
  CHECK(jacobi_eval(6, 2.0, 0.5, 0.7) ==
        doctest::Approx(-1.8478834296417239073).epsilon(1e-13));
}

TEST_CASE("frozen reference values, explicit-sum fallback") {
  // a + b is a negative integer <= -2 here, where the three-term
  // recurrence has a vanishing leading coefficient.
  CHECK(jacobi_eval(2, 0.0, -3.0, 2.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(jacobi_eval(4, 0.0, -4.0, -0.4) ==
        doctest::Approx(0.008099999999999998801).epsilon(1e-12));
  CHECK(jacobi_eval(5, 1.0, -4.0, 0.9) ==
        doctest::Approx(4.0318059375000003784).epsilon(1e-13));
}

TEST_CASE("derivatives match the frozen value and the difference quotient") {
  CHECK(jacobi_derivative(3, 0.5, -3.5, 0.3) == doctest::Approx(1.14625).epsilon(1e-13));

  // Central differences only probe the well-conditioned low-degree corner;
  // anything steeper and the quotient amplifies evaluation noise past the
  // truth.  The recurrence identity below covers the rest.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> par(-1.4, 1.5), arg(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + int(rng() % 3);
    const double a = std::abs(par(rng));
    const double b = par(rng);
    const double t = arg(rng);
    const auto cd = [&](double h) {
      return (jacobi_eval(n, a, b, t + h) - jacobi_eval(n, a, b, t - h)) / (2.0 * h);
    };
    const double fd = (4.0 * cd(5e-5) - cd(1e-4)) / 3.0;
    CHECK(std::abs(jacobi_derivative(n, a, b, t) - fd) <= 1e-8 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("derivative satisfies the same-parameter recurrence identity") {
  // (2n + a + b)(1 - t^2) P_n' = n (a - b - (2n + a + b) t) P_n
  //                              + 2 (n + a)(n + b) P_{n-1},
  // an independent route to the derivative: the implementation shifts to
  // P_{n-1}^(a+1, b+1), this stays at (a, b).
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> par(-3.8, 2.0), arg(-1.5, 1.8);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + int(rng() % 7);
    const double a = std::abs(par(rng));  // a stays > -1 in the application
    const double b = par(rng);
    const double t = arg(rng);
    const double c = 2.0 * n + a + b;
    const double lhs = c * (1.0 - t * t) * jacobi_derivative(n, a, b, t);
    const double t1 = n * (a - b - c * t) * jacobi_eval(n, a, b, t);
    const double t2 = 2.0 * (n + a) * (n + b) * jacobi_eval(n - 1, a, b, t);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(t1), std::abs(t2)});
    CHECK(std::abs(lhs - t1 - t2) <= 1e-8 * scale);
  }
}

TEST_CASE("second derivative of a quadratic is constant") {
  const double c1 = jacobi_second_derivative(2, 0.5, -3.5, -0.9);
  const double c2 = jacobi_second_derivative(2, 0.5, -3.5, 1.4);
  CHECK(c1 == doctest::Approx(c2).epsilon(1e-14));
  CHECK(jacobi_second_derivative(1, 0.5, -3.5, 0.3) == 0.0);
  CHECK(jacobi_second_derivative(0, 0.5, -3.5, 0.3) == 0.0);
}

TEST_CASE("value and derivatives satisfy the defining differential equation") {
  // (1 - t^2) y'' + (b - a - (a + b + 2) t) y' + n (n + a + b + 1) y = 0,
  // valid for all real t since y is a polynomial.
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> par(-4.5, 2.0), arg(-2.0, 2.0);
  for (int k = 0; k < 300; ++k) {
    const int n = int(rng() % 9);
    const double a = std::abs(par(rng));
    double b = par(rng);
    if (k % 5 == 0) b = -3.0 - int(rng() % 3);  // force the fallback path too
    const double t = arg(rng);
    const double y = jacobi_eval(n, a, b, t);
    const double dy = jacobi_derivative(n, a, b, t);
    const double ddy = jacobi_second_derivative(n, a, b, t);
    const double lhs = (1.0 - t * t) * ddy + (b - a - (a + b + 2.0) * t) * dy +
                       n * (n + a + b + 1.0) * y;
    const double scale = std::max({1.0, std::abs((1.0 - t * t) * ddy),
                                   std::abs((b - a - (a + b + 2.0) * t) * dy),
                                   std::abs(n * (n + a + b + 1.0) * y)});
    // The fallback sums cancel heavily for very negative b, which limits the
    // residual to a few hundred ulps of the largest term.
    CHECK(std::abs(lhs) <= 1e-8 * scale);
  }
}

TEST_CASE("agreement with the reference implementation on the classical range") {
  // boost::math::jacobi covers a, b > -1; our evaluator must coincide there.
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> par(-0.9, 2.5), arg(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = int(rng() % 9);
    const double a = par(rng), b = par(rng), t = arg(rng);
    const double ref = boost::math::jacobi(unsigned(n), a, b, t);
    const double scale = std::max(1.0, std::abs(ref));
    CHECK(std::abs(jacobi_eval(n, a, b, t) - ref) <= 1e-12 * scale);
  }
}
