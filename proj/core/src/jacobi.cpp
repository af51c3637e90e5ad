#include "curvosc/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace curvosc {

namespace {

// Generalized binomial coefficient C(x, k) for real x, integer k >= 0.
double binom(double x, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out *= (x - (k - i)) / i;
  return out;
}

// P_n^(a,b)(t) = sum_s C(n+a, n-s) C(n+b, s) ((t-1)/2)^s ((t+1)/2)^(n-s)
double explicit_sum(int n, double a, double b, double t) {
  const double um = 0.5 * (t - 1.0), up = 0.5 * (t + 1.0);
  double sum = 0.0;
  for (int s = 0; s <= n; ++s)
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(um, s) * std::pow(up, n - s);
  return sum;
}

// The recurrence divides by 2k(k+a+b)(2k+a+b-2); detect a + b close enough
// to a breaking integer that the k = 2..n sweep hits a vanishing factor.
bool recurrence_degenerate(int n, double a, double b) {
  const double s = a + b;
  const double nearest = std::round(s);
  if (std::abs(s - nearest) > 1e-6) return false;
  for (int k = 2; k <= n; ++k)
    if (nearest == double(-k) || nearest == double(2 - 2 * k)) return true;
  return false;
}

}  // namespace

double jacobi_eval(int n, double a, double b, double t) {
  if (n < 0) throw std::invalid_argument("jacobi_eval: degree must be non-negative");
  if (n == 0) return 1.0;
  const double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
  if (n == 1) return p1;
  if (recurrence_degenerate(n, a, b)) return explicit_sum(n, a, b, t);

  double pm = 1.0, pk = p1;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c0 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * ((s * (s - 2.0)) * t + a * a - b * b);
    const double c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = (c1 * pk - c2 * pm) / c0;
    pm = pk;
    pk = next;
  }
  return pk;
}

double jacobi_derivative(int n, double a, double b, double t) {
  if (n <= 0) return 0.0;
  return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, t);
}

double jacobi_second_derivative(int n, double a, double b, double t) {
  if (n <= 1) return 0.0;
  return 0.25 * (n + a + b + 1.0) * (n + a + b + 2.0) *
         jacobi_eval(n - 2, a + 2.0, b + 2.0, t);
}

}  // namespace curvosc
