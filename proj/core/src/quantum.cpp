#include "curvosc/quantum.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

#include "curvosc/errors.hpp"
#include "curvosc/jacobi.hpp"

namespace curvosc {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kQuadratureTarget = 1e-10;

double wall_radius(double lambda) { return 1.0 / std::sqrt(-lambda); }

// Quadrature of f(r) over the radial domain against the curved measure
// (1+lambda r^2)^(-1/2) r dr.  Substitutions first: lambda < 0 uses
// r = wall sin(theta), cancelling the inverse square root at the wall;
// lambda > 0 uses u = lambda r^2/(1+lambda r^2), mapping (0, inf) to
// (0, 1) with measure factor (1+lambda r^2)^(3/2)/(2 lambda) du.  The
// transformed integrand still behaves like (1-u)^(beta/lambda - 3/2 - n)
// near u = 1 with an exponent below one for states near the truncation
// edge, so the quadrature itself is double-exponential (tanh-sinh), which
// certifies algebraic endpoint behaviour where a Gauss rule cannot.
template <class F>
double radial_measure_integral(const QuantumParams& qp, F&& f) {
  constexpr double kHalfPi = 1.57079632679489661923;
  boost::math::quadrature::tanh_sinh<double> quadrature;
  double err = 0.0, l1 = 0.0;
  double value;
  if (qp.lambda < 0.0) {
    const double wall = wall_radius(qp.lambda);
    auto g = [&](double theta) {
      const double sine = std::sin(theta);
      return f(wall * sine) * wall * wall * sine;
    };
    value = quadrature.integrate(g, 0.0, kHalfPi, 0.1 * kQuadratureTarget, &err, &l1);
  } else {
    auto g = [&](double u) {
      const double delta = 1.0 - u;  // exact for u >= 1/2
      const double s = 1.0 / delta;
      const double r = std::sqrt(u / (qp.lambda * delta));
      return f(r) * s * std::sqrt(s) / (2.0 * qp.lambda);
    };
    value = quadrature.integrate(g, 0.0, 1.0, 0.1 * kQuadratureTarget, &err, &l1);
  }
  if (!(err <= 10.0 * kQuadratureTarget * std::max(1.0, l1)))
    throw AccuracyError("radial quadrature did not reach the 1e-10 target", err);
  return value;
}

}  // namespace

void validate(const QuantumParams& qp) {
  if (!std::isfinite(qp.lambda) || qp.lambda == 0.0)
    throw std::invalid_argument("QuantumParams: lambda must be finite and nonzero");
  if (!std::isfinite(qp.beta) || !(qp.beta > 0.0))
    throw std::invalid_argument("QuantumParams: beta must be finite and positive");
}

std::optional<int> max_principal(const QuantumParams& qp) {
  validate(qp);
  if (qp.lambda < 0.0) return std::nullopt;
  const double edge = qp.beta / qp.lambda - 0.5;
  double n_max = std::floor(edge);
  if (n_max == edge) n_max -= 1.0;  // the upper edge itself is excluded
  return static_cast<int>(n_max);
}

bool admissible(const QuantumParams& qp, int n_r, int m) {
  if (n_r < 0) return false;
  const auto cap = max_principal(qp);
  return !cap || 2 * n_r + std::abs(m) <= *cap;
}

double energy_level(const QuantumParams& qp, int n) {
  validate(qp);
  if (n < 0) throw std::invalid_argument("energy_level: n must be non-negative");
  return (n + 1) * (-0.5 * qp.lambda * n + qp.beta);
}

std::vector<EnergyLevel> energy_levels(const QuantumParams& qp, int max_levels) {
  validate(qp);
  if (max_levels < 0) throw std::invalid_argument("energy_levels: max_levels must be >= 0");
  int count = max_levels;
  if (const auto cap = max_principal(qp))
    count = std::min(count, std::max(0, *cap + 1));

  std::vector<EnergyLevel> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    EnergyLevel level;
    level.n = n;
    level.energy = energy_level(qp, n);
    for (int m = -n; m <= n; m += 2) level.states.push_back({(n - std::abs(m)) / 2, m});
    level.degeneracy = static_cast<int>(level.states.size());
    out.push_back(std::move(level));
  }
  return out;
}

RadialWavefunction::RadialWavefunction(const QuantumParams& qp, int n_r, int m)
    : qp_(qp), n_r_(n_r) {
  validate(qp);
  if (!admissible(qp, n_r, m))
    throw std::invalid_argument(
        "RadialWavefunction: (n_r, m) lies above the normalizability cutoff");
  a_ = std::abs(m);
  b_ = -qp.beta / qp.lambda - 0.5;
  exponent_ = -qp.beta / (2.0 * qp.lambda);
}

double RadialWavefunction::operator()(double r) const {
  // Clamp: rounding can push 1 + lambda r^2 a hair below zero at the
  // sphere wall, where R vanishes anyway.
  const double s = std::max(0.0, 1.0 + qp_.lambda * r * r);
  return std::pow(s, exponent_) * std::pow(r, a_) *
         jacobi_eval(n_r_, a_, b_, 1.0 + 2.0 * qp_.lambda * r * r);
}

double RadialWavefunction::derivative(double r) const {
  const double lam = qp_.lambda;
  const double s = 1.0 + lam * r * r;
  const double t = 1.0 + 2.0 * lam * r * r;
  const double w = std::pow(s, exponent_);
  const double wp = 2.0 * exponent_ * lam * r * std::pow(s, exponent_ - 1.0);
  const double x = std::pow(r, a_);
  const double xp = (a_ == 0.0) ? 0.0 : a_ * std::pow(r, a_ - 1.0);
  const double p = jacobi_eval(n_r_, a_, b_, t);
  const double pr = 4.0 * lam * r * jacobi_derivative(n_r_, a_, b_, t);
  return wp * x * p + w * xp * p + w * x * pr;
}

double RadialWavefunction::second_derivative(double r) const {
  const double lam = qp_.lambda;
  const double s = 1.0 + lam * r * r;
  const double t = 1.0 + 2.0 * lam * r * r;
  const double w = std::pow(s, exponent_);
  const double wp = 2.0 * exponent_ * lam * r * std::pow(s, exponent_ - 1.0);
  const double wpp = 2.0 * exponent_ * lam * std::pow(s, exponent_ - 2.0) *
                     (s + 2.0 * (exponent_ - 1.0) * lam * r * r);
  const double x = std::pow(r, a_);
  const double xp = (a_ == 0.0) ? 0.0 : a_ * std::pow(r, a_ - 1.0);
  const double xpp = (a_ == 0.0 || a_ == 1.0) ? 0.0 : a_ * (a_ - 1.0) * std::pow(r, a_ - 2.0);
  const double p = jacobi_eval(n_r_, a_, b_, t);
  const double pt = jacobi_derivative(n_r_, a_, b_, t);
  const double ptt = jacobi_second_derivative(n_r_, a_, b_, t);
  const double pr = 4.0 * lam * r * pt;
  const double prr = 4.0 * lam * pt + 16.0 * lam * lam * r * r * ptt;
  return wpp * x * p + w * xpp * p + w * x * prr +
         2.0 * (wp * xp * p + wp * x * pr + w * xp * pr);
}

RadialEigenstate make_eigenstate(const QuantumParams& qp, int n_r, int m) {
  const RadialWavefunction R(qp, n_r, m);
  RadialEigenstate state;
  state.n_r = n_r;
  state.m = m;
  state.n = 2 * n_r + std::abs(m);
  state.a = R.a();
  state.b = R.b();
  state.energy = energy_level(qp, state.n);
  const double self = radial_measure_integral(qp, [&](double r) {
    const double v = R(r);
    return v * v;
  });
  state.norm = 1.0 / std::sqrt(self);
  return state;
}

double inner_product(const QuantumParams& qp, const RadialEigenstate& state1,
                     const RadialEigenstate& state2) {
  if (state1.m != state2.m)
    throw std::invalid_argument("inner_product: angular quantum numbers differ");
  const RadialWavefunction r1(qp, state1.n_r, state1.m);
  const RadialWavefunction r2(qp, state2.n_r, state2.m);
  const double raw =
      radial_measure_integral(qp, [&](double r) { return r1(r) * r2(r); });
  return state1.norm * state2.norm * raw;
}

double ode_residual(const QuantumParams& qp, const RadialEigenstate& state, double r) {
  const ModelParams domain_params{qp.lambda, 1.0};
  if (!radial_domain(domain_params).contains(r))
    throw std::domain_error("ode_residual: radius outside the radial domain");
  const RadialWavefunction wf(qp, state.n_r, state.m);
  const double s = 1.0 + qp.lambda * r * r;
  const double R = state.norm * wf(r);
  const double Rp = state.norm * wf.derivative(r);
  const double Rpp = state.norm * wf.second_derivative(r);
  const double coeff = -qp.beta * (qp.beta + qp.lambda) * r * r * r * r / s +
                       2.0 * state.energy * r * r - double(state.m) * double(state.m);
  const double raw = r * r * s * Rpp + r * (1.0 + 2.0 * qp.lambda * r * r) * Rp + coeff * R;
  return raw / std::max(1.0, std::abs(R) * r * r);
}

std::complex<double> FullWavefunction::operator()(double r, double phi) const {
  const RadialWavefunction wf(qp, state.n_r, state.m);
  const double radial = state.norm * wf(r) / std::sqrt(kTwoPi);
  return radial * std::complex<double>(std::cos(state.m * phi), std::sin(state.m * phi));
}

FullWavefunction full_wavefunction(const QuantumParams& qp, const RadialEigenstate& state) {
  return {qp, state};
}

}  // namespace curvosc
