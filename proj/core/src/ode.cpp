#include "curvosc/ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace curvosc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pm_pi(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

double radial_accel(const ModelParams& p, double J, double r, double r_dot) {
  const double r2 = r * r;
  const double metric = 1.0 + p.lambda * r2;
  double acc = (p.lambda * r * r_dot * r_dot - p.alpha * p.alpha * r) / metric;
  if (J != 0.0) acc += J * J * metric / (r2 * r);
  return acc;
}

template <std::size_t N>
using VecN = std::array<double, N>;

template <std::size_t N>
VecN<N> axpy(const VecN<N>& y, double h, const VecN<N>& k) {
  VecN<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
// Coefficients of the degree-4 continuous extension.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

template <std::size_t N>
struct DenseSegment {
  double t_lo = 0.0, h = 0.0;
  VecN<N> c1{}, c2{}, c3{}, c4{}, c5{};

  VecN<N> eval(double t) const {
    const double theta = (t - t_lo) / h;
    VecN<N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = c1[i] + theta * (c2[i] + (1.0 - theta) *
                                            (c3[i] + theta * (c4[i] + (1.0 - theta) * c5[i])));
    return out;
  }
};

// Adaptive embedded 5(4) loop.  rhs(y) must only be called on states that
// pass inside(y); any trial stage leaving the domain rejects the step.
// on_step(segment) is invoked once per accepted step.
template <std::size_t N, class Rhs, class Guard, class OnStep>
void run_dopri5(Rhs&& rhs, Guard&& inside, VecN<N> y, const IntegrationConfig& cfg,
                long& n_steps, long& n_rejected, OnStep&& on_step) {
  const double span = cfg.t1 - cfg.t0;
  double t = cfg.t0;
  VecN<N> k1 = rhs(y);

  // Initial step length from the local derivative scales.
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);
    VecN<N> y_trial = axpy(y, h0, k1);
    for (int tries = 0; !inside(y_trial) && tries < 60; ++tries) {
      h0 *= 0.5;
      y_trial = axpy(y, h0, k1);
    }
    const VecN<N> f_trial = rhs(y_trial);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d2 += ((f_trial[i] - k1[i]) / sc) * ((f_trial[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = (dm <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                    : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, span});
  }

  while (t < cfg.t1) {
    if (n_steps + n_rejected > cfg.max_steps)
      throw std::runtime_error("integrate: step budget exhausted");
    if (h < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw std::runtime_error("integrate: step size underflow (singular passage?)");
    h = std::min({h, cfg.max_step, cfg.t1 - t});

    VecN<N> k2, k3, k4, k5, k6, k7, y1;
    bool domain_ok = true;
    auto stage = [&](const VecN<N>& ys, VecN<N>& k) {
      if (!inside(ys)) {
        domain_ok = false;
        return;
      }
      k = rhs(ys);
    };
    stage(axpy(y, h * kA21, k1), k2);
    if (domain_ok) {
      VecN<N> ys;
      for (std::size_t i = 0; i < N; ++i) ys[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
      stage(ys, k3);
    }
    if (domain_ok) {
      VecN<N> ys;
      for (std::size_t i = 0; i < N; ++i)
        ys[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
      stage(ys, k4);
    }
    if (domain_ok) {
      VecN<N> ys;
      for (std::size_t i = 0; i < N; ++i)
        ys[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
      stage(ys, k5);
    }
    if (domain_ok) {
      VecN<N> ys;
      for (std::size_t i = 0; i < N; ++i)
        ys[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] +
                            kA65 * k5[i]);
      stage(ys, k6);
    }
    if (domain_ok) {
      for (std::size_t i = 0; i < N; ++i)
        y1[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                            kB6 * k6[i]);
      stage(y1, k7);
    }
    if (!domain_ok) {
      ++n_rejected;
      h *= 0.5;
      continue;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                            kE6 * k6[i] + kE7 * k7[i]);
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      DenseSegment<N> seg;
      seg.t_lo = t;
      seg.h = h;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = y1[i] - y[i];
        const double bspl = h * k1[i] - dy;
        seg.c1[i] = y[i];
        seg.c2[i] = dy;
        seg.c3[i] = bspl;
        seg.c4[i] = dy - h * k7[i] - bspl;
        seg.c5[i] = h * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] +
                         kD6 * k6[i] + kD7 * k7[i]);
      }
      t += h;
      y = y1;
      k1 = k7;  // first-same-as-last
      ++n_steps;
      on_step(seg);
      const double fac = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++n_rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }
}

void validate(const IntegrationConfig& cfg) {
  if (!(cfg.t1 > cfg.t0) || !std::isfinite(cfg.t0) || !std::isfinite(cfg.t1))
    throw std::invalid_argument("integrate: need finite t1 > t0");
  if (!(cfg.rel_tol > 0.0) || cfg.rel_tol > 1e-2 || !(cfg.abs_tol > 0.0) || cfg.abs_tol > 1e-2)
    throw std::invalid_argument("integrate: tolerances must lie in (0, 1e-2]");
  if (!(cfg.max_step > 0.0))
    throw std::invalid_argument("integrate: max_step must be positive");
  if (cfg.n_samples < 2) throw std::invalid_argument("integrate: need n_samples >= 2");
  if (cfg.max_steps < 1) throw std::invalid_argument("integrate: need max_steps >= 1");
}

}  // namespace

std::array<double, 3> polar_rhs(const ModelParams& params, const ClassicalState& state) {
  if (!radial_domain(params).contains(state.r))
    throw std::domain_error("polar_rhs: radius outside the radial domain");
  return {state.r_dot, radial_accel(params, state.J, state.r, state.r_dot),
          state.J / (state.r * state.r)};
}

SampledTrajectory integrate(const ModelParams& params, const ClassicalState& state0,
                            const IntegrationConfig& config) {
  validate(config);
  const RadialDomain domain = radial_domain(params);
  if (!domain.contains(state0.r))
    throw std::domain_error("integrate: initial radius outside the radial domain");

  SampledTrajectory out;
  out.params = params;
  out.J = state0.J;
  out.energy0 = energy_of_state(params, state0);

  const int n = config.n_samples;
  out.t.resize(n);
  out.r.resize(n);
  out.r_dot.resize(n);
  out.phi.resize(n);
  for (int k = 0; k < n; ++k)
    out.t[k] = config.t0 + (config.t1 - config.t0) * k / (n - 1);

  const double t_slack = 1e-12 * (config.t1 - config.t0);
  std::size_t next = 0;

  if (state0.J == 0.0) {
    // Line motion through the origin: xi is the signed coordinate along
    // the fixed direction phi0, regular at xi = 0.
    const auto rhs = [&params](const VecN<2>& y) -> VecN<2> {
      const double xi = y[0], v = y[1];
      return {v, xi * (params.lambda * v * v - params.alpha * params.alpha) /
                     (1.0 + params.lambda * xi * xi)};
    };
    const auto inside = [&domain](const VecN<2>& y) { return std::abs(y[0]) < domain.hi; };
    const auto record = [&](double xi, double v, std::size_t k) {
      out.r[k] = std::abs(xi);
      out.r_dot[k] = (xi < 0.0) ? -v : v;
      out.phi[k] = (xi < 0.0) ? state0.phi + kPi : state0.phi;
    };

    record(state0.r, state0.r_dot, 0);
    next = 1;
    run_dopri5<2>(rhs, inside, {state0.r, state0.r_dot}, config, out.n_steps, out.n_rejected,
                  [&](const DenseSegment<2>& seg) {
                    while (next < out.t.size() && out.t[next] <= seg.t_lo + seg.h + t_slack) {
                      const VecN<2> y = seg.eval(out.t[next]);
                      record(y[0], y[1], next);
                      ++next;
                    }
                  });

    double drift = 0.0;
    for (int k = 0; k < n; ++k) {
      const double xi2 = out.r[k] * out.r[k];
      const double e = 0.5 * (out.r_dot[k] * out.r_dot[k] +
                              params.alpha * params.alpha * xi2) /
                       (1.0 + params.lambda * xi2);
      drift = std::max(drift, std::abs(e - out.energy0));
    }
    out.energy_drift = drift / std::abs(out.energy0);
    return out;
  }

  const double J = state0.J;
  const auto rhs = [&params, J](const VecN<3>& y) -> VecN<3> {
    return {y[1], radial_accel(params, J, y[0], y[1]), J / (y[0] * y[0])};
  };
  const auto inside = [&domain](const VecN<3>& y) { return domain.contains(y[0]); };

  out.r[0] = state0.r;
  out.r_dot[0] = state0.r_dot;
  out.phi[0] = state0.phi;
  next = 1;
  run_dopri5<3>(rhs, inside, {state0.r, state0.r_dot, state0.phi}, config, out.n_steps,
                out.n_rejected, [&](const DenseSegment<3>& seg) {
                  while (next < out.t.size() && out.t[next] <= seg.t_lo + seg.h + t_slack) {
                    const VecN<3> y = seg.eval(out.t[next]);
                    out.r[next] = y[0];
                    out.r_dot[next] = y[1];
                    out.phi[next] = y[2];
                    ++next;
                  }
                });

  double drift = 0.0;
  for (int k = 0; k < n; ++k)
    drift = std::max(drift, std::abs(energy_of_state(params, out.state_at(k)) - out.energy0));
  out.energy_drift = drift / std::abs(out.energy0);
  return out;
}

ComparisonReport compare_with_closed_form(const SampledTrajectory& sampled,
                                          const ClosedFormTrajectory& traj) {
  if (sampled.params.lambda != traj.params.lambda ||
      sampled.params.alpha != traj.params.alpha)
    throw std::invalid_argument("compare_with_closed_form: model parameters differ");
  if (std::abs(sampled.J - traj.J) > 1e-12 * std::max(1.0, std::abs(traj.J)))
    throw std::invalid_argument("compare_with_closed_form: angular momenta differ");
  if (std::abs(sampled.energy0 - traj.energy) > 1e-9 * std::max(1.0, std::abs(traj.energy)))
    throw std::invalid_argument("compare_with_closed_form: energies differ");

  ComparisonReport report;
  for (std::size_t k = 0; k < sampled.t.size(); ++k) {
    const double u_num = sampled.r[k] * sampled.r[k];
    const double u_closed = eval_r2(traj, sampled.t[k]);
    const double abs_err = std::abs(u_num - u_closed);
    report.max_r2_abs_err = std::max(report.max_r2_abs_err, abs_err);
    report.max_r2_rel_err =
        std::max(report.max_r2_rel_err, abs_err / std::max(1.0, std::abs(u_closed)));

    const double phi_closed = eval_state(traj, sampled.t[k]).phi;
    double d = std::abs(sampled.phi[k] - phi_closed);
    if (traj.J == 0.0) {
      // Line motion: the pi flips at the origin happen at slightly
      // different times in the two representations; compare modulo pi.
      d = std::abs(wrap_pm_pi(sampled.phi[k] - phi_closed));
      d = std::min(d, kPi - d);
    }
    report.max_phi_abs_err = std::max(report.max_phi_abs_err, d);
  }
  return report;
}

double measure_period(const SampledTrajectory& sampled) {
  const std::size_t n = sampled.t.size();
  if (n < 8) throw std::runtime_error("measure_period: too few samples");

  double u_min = std::numeric_limits<double>::infinity(), u_max = -u_min;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = sampled.r[k] * sampled.r[k];
    u_min = std::min(u_min, u);
    u_max = std::max(u_max, u);
  }
  const double mid = 0.5 * (u_min + u_max);
  if (u_max - u_min < 2e-8 * std::max(1.0, std::abs(mid)))
    throw std::runtime_error("measure_period: no radial oscillation detected");

  auto f = [&](std::size_t k) { return sampled.r[k] * sampled.r[k] - mid; };

  std::vector<double> crossings;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(f(k) <= 0.0 && f(k + 1) > 0.0)) continue;
    const double h = sampled.t[k + 1] - sampled.t[k];
    double tau;
    if (k == 0) {
      tau = h * f(k) / (f(k) - f(k + 1));
    } else {
      // Quadratic through (k-1, k, k+1) in the local coordinate tau.
      const double f0 = f(k), fp = f(k + 1), fm = f(k - 1);
      const double qa = 0.5 * (fp - 2.0 * f0 + fm) / (h * h);
      const double qb = 0.5 * (fp - fm) / h;
      const double disc = qb * qb - 4.0 * qa * f0;
      tau = h * f0 / (f0 - fp);
      if (std::abs(qa) > 0.0 && disc >= 0.0) {
        const double root =
            (-qb + (qb >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc)) / (2.0 * qa);
        const double alt = f0 / (qa * root);  // Vieta: product of roots = f0/qa
        for (double cand : {root, alt})
          if (cand >= 0.0 && cand <= h) tau = cand;
      }
    }
    crossings.push_back(sampled.t[k] + tau);
  }
  if (crossings.size() < 2)
    throw std::runtime_error("measure_period: fewer than two midrange crossings");
  return (crossings.back() - crossings.front()) / double(crossings.size() - 1);
}

}  // namespace curvosc
