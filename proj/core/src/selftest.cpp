#include "curvosc/selftest.hpp"

#include <algorithm>
#include <boost/math/special_functions/next.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <tuple>

#include "curvosc/cartesian.hpp"
#include "curvosc/closed_form.hpp"
#include "curvosc/model.hpp"
#include "curvosc/ode.hpp"
#include "curvosc/quantum.hpp"

namespace curvosc {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

double wrap_pm_pi(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

struct Suite {
  std::vector<CheckResult> results;

  // Runs one check; an escaped exception fails it with the message.
  template <class Fn>
  void check(const char* name, Fn&& fn) {
    CheckResult res;
    res.name = name;
    try {
      fn(res);
    } catch (const std::exception& ex) {
      res.pass = false;
      res.detail = std::string("exception: ") + ex.what();
    }
    results.push_back(std::move(res));
  }
};

// Locates the interior minimum of v_eff without using the closed-form
// extremum: geometric grid scan for a bracket, then bisection on the
// central-difference slope.
std::pair<double, double> minimize_v_eff(const ModelParams& params, double J) {
  const RadialDomain domain = radial_domain(params);
  const double lo0 = (params.lambda < 0.0) ? 1e-3 * domain.hi : 1e-3 / std::sqrt(params.lambda);
  const double hi0 = (params.lambda < 0.0) ? (1.0 - 1e-6) * domain.hi
                                           : 1e3 / std::sqrt(params.lambda);
  const int n = 600;
  double best_r = lo0, best_v = v_eff(params, J, lo0);
  const double ratio = std::pow(hi0 / lo0, 1.0 / (n - 1));
  double r = lo0;
  int best_k = 0;
  for (int k = 0; k < n; ++k, r *= ratio) {
    const double v = v_eff(params, J, r);
    if (v < best_v) {
      best_v = v;
      best_r = r;
      best_k = k;
    }
  }
  double lo = (best_k == 0) ? lo0 : best_r / ratio;
  double hi = (best_k == n - 1) ? hi0 : best_r * ratio;
  // Long-double central difference: a double stencil stays noise-limited
  // above 1e-9 on the shallow minima left by J near the cutoff.
  const long double al = params.alpha, ll = params.lambda, jl = J;
  auto slope = [&](double x) -> long double {
    const auto v = [&](long double rr) {
      return 0.5L * al * al * rr * rr / (1.0L + ll * rr * rr) +
             0.5L * jl * jl / (rr * rr);
    };
    const long double h = 1e-6L * x;
    return v(x + h) - v(x - h);
  };
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0L ? hi : lo) = mid;
  }
  const double rm = 0.5 * (lo + hi);
  return {rm, v_eff(params, J, rm)};
}

ModelParams random_params(std::mt19937& rng, int sign = 0) {
  std::uniform_real_distribution<double> mag(0.25, 2.0), strength(0.5, 3.0);
  std::bernoulli_distribution flip(0.5);
  const double s = (sign != 0) ? double(sign) : (flip(rng) ? 1.0 : -1.0);
  return {s * mag(rng), strength(rng)};
}

double random_radius(std::mt19937& rng, const ModelParams& params) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  if (params.lambda < 0.0) return u(rng) * radial_domain(params).hi;
  return u(rng) * 3.0 / std::sqrt(params.lambda);
}

CartesianAmplitudes random_trig(std::mt19937& rng, ModelParams& params) {
  std::uniform_real_distribution<double> amp(0.1, 1.2), phase(0.0, 2.0 * kPi);
  for (;;) {
    params = random_params(rng);
    CartesianAmplitudes amps{CartesianKind::Trig, amp(rng), amp(rng), phase(rng), phase(rng)};
    if (std::abs(std::sin(amps.p1 - amps.p2)) < 0.05) continue;  // line case aside
    try {
      (void)cartesian_invariants(amps, params);
      return amps;
    } catch (const std::invalid_argument&) {
      continue;  // sphere mass factor went non-positive; resample
    }
  }
}

CartesianAmplitudes random_hyper(std::mt19937& rng, ModelParams& params) {
  std::uniform_real_distribution<double> amp(0.6, 1.5), phase(-1.0, 1.0);
  for (;;) {
    params = random_params(rng, +1);
    CartesianAmplitudes amps{CartesianKind::Hyper, amp(rng), amp(rng), phase(rng), phase(rng)};
    if (std::abs(std::sinh(amps.p1 - amps.p2)) < 0.05) continue;
    try {
      (void)cartesian_invariants(amps, params);
      return amps;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
}

CartesianAmplitudes random_linear(std::mt19937& rng, ModelParams& params) {
  std::uniform_real_distribution<double> amp(0.2, 1.5), mag(0.25, 2.0);
  for (;;) {
    const double lambda = mag(rng);
    CartesianAmplitudes amps{CartesianKind::Linear, amp(rng), amp(rng), amp(rng), amp(rng)};
    const double j = amps.A2 * amps.p1 - amps.A1 * amps.p2;
    if (std::abs(j) < 0.05) continue;
    params = {lambda, linear_alpha(amps, lambda)};
    return amps;
  }
}

void check_model(Suite& suite, unsigned seed) {
  suite.check("model.energy_identity", [&](CheckResult& res) {
    std::mt19937 rng(seed + 1);
    std::uniform_real_distribution<double> vel(-3.0, 3.0), jdist(-3.0, 3.0);
    double worst = 0.0;
    for (int it = 0; it < 100000; ++it) {
      const ModelParams params = random_params(rng);
      const ClassicalState state{random_radius(rng, params), vel(rng), 0.0, jdist(rng)};
      const double direct = energy_of_state(params, state);
      const double r2 = state.r * state.r;
      const double split = 0.5 * state.r_dot * state.r_dot / (1.0 + params.lambda * r2) +
                           v_eff(params, state.J, state.r);
      worst = std::max(worst, std::abs(boost::math::float_distance(direct, split)));
    }
    res.pass = worst <= 4.0;
    res.detail = "max ulps " + fmt("%.2f", worst);
  });

  suite.check("model.extremum_matches_minimizer", [&](CheckResult& res) {
    std::mt19937 rng(seed + 2);
    std::uniform_real_distribution<double> jdist(0.05, 3.0);
    std::bernoulli_distribution flip(0.5);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const ModelParams params = random_params(rng);
      double J = jdist(rng) * (flip(rng) ? 1.0 : -1.0);
      if (params.lambda > 0.0 && std::abs(J) > 0.85 * params.alpha / params.lambda)
        J = 0.85 * params.alpha / params.lambda * (J > 0 ? 1.0 : -1.0);
      const auto closed = v_eff_minimum(params, J);
      if (!closed || !closed->r_min) {
        res.pass = false;
        res.detail = "missing minimum for valid J";
        return;
      }
      const auto [rm, vm] = minimize_v_eff(params, J);
      worst = std::max(worst, std::abs(rm - *closed->r_min) / std::max(1.0, *closed->r_min));
      worst = std::max(worst, std::abs(vm - closed->v_min) / std::max(1.0, closed->v_min));
    }
    res.pass = worst <= 1e-9;
    res.detail = "max rel dev " + fmt("%.2e", worst);
  });

  suite.check("model.hyperbolic_plateau", [&](CheckResult& res) {
    std::mt19937 rng(seed + 3);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      const ModelParams params = random_params(rng, +1);
      const double plateau = params.alpha * params.alpha / (2.0 * params.lambda);
      const double far = v_eff(params, 0.0, 1e3 / std::sqrt(params.lambda));
      worst = std::max(worst, std::abs(far - plateau) / plateau);
    }
    res.pass = worst <= 1e-5;
    res.detail = "max rel gap " + fmt("%.2e", worst);
  });

  suite.check("model.sphere_wall_divergence", [&](CheckResult& res) {
    std::mt19937 rng(seed + 4);
    std::uniform_real_distribution<double> jdist(-2.0, 2.0);
    for (int it = 0; it < 200; ++it) {
      const ModelParams params = random_params(rng, -1);
      const double J = jdist(rng);
      const double wall = radial_domain(params).hi;
      const double start = v_eff_minimum(params, J)->r_min.value_or(0.5 * wall);
      double prev = v_eff(params, J, start);
      for (double f : {0.9, 0.99, 0.999, 0.9999, 0.99999}) {
        const double v = v_eff(params, J, start + f * (wall - start));
        if (!(v > prev)) {
          res.pass = false;
          res.detail = "growth toward the wall not monotone";
          return;
        }
        prev = v;
      }
    }
    res.pass = true;
    res.detail = "monotone on 200 parameter draws";
  });

  suite.check("model.classification_stability", [&](CheckResult& res) {
    std::mt19937 rng(seed + 5);
    std::uniform_real_distribution<double> jfrac(0.05, 0.95), efrac(-4.0, 4.0);
    for (int it = 0; it < 2000; ++it) {
      const ModelParams params = random_params(rng, +1);
      const double J = jfrac(rng) * params.alpha / params.lambda;
      const double escape = params.alpha * params.alpha / (2.0 * params.lambda);
      const double base = escape * (1.0 + efrac(rng) * 1e-13);
      const Regime lo = motion_constants(params, J, base * (1.0 - 1e-12)).regime;
      const Regime hi = motion_constants(params, J, base * (1.0 + 1e-12)).regime;
      const bool jumps = (lo == Regime::Bounded && hi == Regime::Unbounded) ||
                         (lo == Regime::Unbounded && hi == Regime::Bounded);
      if (jumps) {
        res.pass = false;
        res.detail = "Bounded<->Unbounded flip without Limiting at E=" + fmt("%.17g", base);
        return;
      }
    }
    res.pass = true;
    res.detail = "no direct flips near the threshold";
  });

  suite.check("model.bounded_case_band", [&](CheckResult& res) {
    std::mt19937 rng(seed + 6);
    std::uniform_real_distribution<double> jfrac(0.05, 0.9), efrac(0.02, 0.98);
    for (int it = 0; it < 2000; ++it) {
      const ModelParams params = random_params(rng, +1);
      const double J = jfrac(rng) * params.alpha / params.lambda;
      const double vmin = v_eff_minimum(params, J)->v_min;
      const double escape = params.alpha * params.alpha / (2.0 * params.lambda);
      const double E = vmin + efrac(rng) * (escape - vmin);
      const MotionConstants mc = motion_constants(params, J, E);
      const double slope = params.alpha - params.lambda * std::abs(J);
      const bool band = mc.regime == Regime::Bounded && mc.qc < 0.0 && mc.delta < 0.0 &&
                        mc.C < 0.0 && mc.C > -slope * slope / params.lambda;
      if (!band) {
        res.pass = false;
        res.detail = std::string("case-(i) band violated, regime=") + to_string(mc.regime);
        return;
      }
    }
    res.pass = true;
    res.detail = "C, qc, delta within the case-(i) band";
  });
}

struct BoundedDraw {
  ModelParams params;
  double J = 0.0;
  double E = 0.0;
};

// Random parameters with J != 0 and E strictly inside the oscillatory band.
BoundedDraw random_bounded(std::mt19937& rng, double j_lo, double j_hi, double e_lo,
                           double e_hi) {
  const ModelParams params = random_params(rng);
  const double cap = (params.lambda > 0.0) ? params.alpha / params.lambda : 2.0;
  double J = std::uniform_real_distribution<double>(j_lo, j_hi)(rng) * cap;
  if (std::bernoulli_distribution(0.5)(rng)) J = -J;
  const double vmin = v_eff_minimum(params, J)->v_min;
  const double escape = (params.lambda > 0.0) ? limiting_energy(params) : vmin + 4.0;
  const double E =
      vmin + std::uniform_real_distribution<double>(e_lo, e_hi)(rng) * (escape - vmin);
  return {params, J, E};
}

void check_closed_form(Suite& suite, unsigned seed) {
  suite.check("closed_form.energy_consistency", [&](CheckResult& res) {
    std::mt19937 rng(seed + 11);
    std::uniform_real_distribution<double> tdist(0.0, 5.0), phase(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int it = 0; it < 2000; ++it) {
      const auto [params, J, E] = random_bounded(rng, 0.05, 0.9, 0.05, 0.95);
      const auto traj = make_trajectory(params, J, E, phase(rng), phase(rng));
      const double t = tdist(rng);
      const double back = energy_of_state(params, eval_state(traj, t));
      worst = std::max(worst, std::abs(back - E) / std::max(1.0, std::abs(E)));
    }
    res.pass = worst <= 1e-9;
    res.detail = "max rel energy dev " + fmt("%.2e", worst);
  });

  suite.check("closed_form.azimuth_rate", [&](CheckResult& res) {
    std::mt19937 rng(seed + 12);
    std::uniform_real_distribution<double> tdist(0.1, 4.0), phase(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int it = 0; it < 500; ++it) {
      const auto [params, J, E] = random_bounded(rng, 0.1, 0.9, 0.05, 0.95);
      const auto traj = make_trajectory(params, J, E, phase(rng), phase(rng));
      const double t = tdist(rng);
      const double h = 1e-6;
      const double rate =
          (eval_state(traj, t + h).phi - eval_state(traj, t - h).phi) / (2.0 * h);
      const double expected = J / eval_r2(traj, t);
      worst = std::max(worst, std::abs(rate - expected) / std::max(1.0, std::abs(expected)));
    }
    res.pass = worst <= 1e-5;
    res.detail = "max rel rate dev " + fmt("%.2e", worst);
  });

  suite.check("closed_form.turning_points", [&](CheckResult& res) {
    std::mt19937 rng(seed + 13);
    double worst = 0.0;
    for (int it = 0; it < 2000; ++it) {
      const auto [params, J, E] = random_bounded(rng, 0.1, 0.9, 0.05, 0.95);
      const MotionConstants mc = motion_constants(params, J, E);
      const auto traj = bounded_trajectory(params, J, E);
      const auto [u_lo, u_hi] = r2_range(traj);
      // Roots of qc u^2 + qb u + qa, stable form.
      const double disc = std::sqrt(std::max(0.0, mc.qb * mc.qb - 4.0 * mc.qa * mc.qc));
      const double q = -0.5 * (mc.qb + (mc.qb >= 0.0 ? disc : -disc));
      double u1 = q / mc.qc, u2 = mc.qa / q;
      if (u1 > u2) std::swap(u1, u2);
      worst = std::max(worst, std::abs(u1 - u_lo) / std::max(1.0, u_hi));
      worst = std::max(worst, std::abs(u2 - u_hi) / std::max(1.0, u_hi));
    }
    res.pass = worst <= 1e-9;
    res.detail = "max turning-point dev " + fmt("%.2e", worst);
  });

  suite.check("closed_form.phase_recovery", [&](CheckResult& res) {
    std::mt19937 rng(seed + 14);
    std::uniform_real_distribution<double> tdist(0.0, 4.0), phase(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const auto [params, J, E] = random_bounded(rng, 0.1, 0.9, 0.1, 0.9);
      const auto traj = make_trajectory(params, J, E, phase(rng), phase(rng));
      const double t = tdist(rng);
      const ClassicalState probe = eval_state(traj, t);
      if (std::abs(probe.r_dot) < 1e-3) continue;  // ambiguous sign at turning points
      const auto pc = phase_from_initial(params, J, E, probe.r, probe.r_dot > 0 ? 1 : -1,
                                         probe.phi);
      const auto rebuilt = make_trajectory(params, J, E, pc.phi, pc.K);
      for (double dt : {0.0, 0.3, 1.1}) {
        const ClassicalState a = eval_state(traj, t + dt);
        const ClassicalState b = eval_state(rebuilt, dt);
        worst = std::max(worst, std::abs(a.r - b.r) / std::max(1.0, a.r));
        worst = std::max(worst, std::abs(wrap_pm_pi(a.phi - b.phi)));
      }
    }
    res.pass = worst <= 1e-8;
    res.detail = "max rebuild dev " + fmt("%.2e", worst);
  });
}

void check_cartesian(Suite& suite, unsigned seed) {
  suite.check("bridge.trig_agreement", [&](CheckResult& res) {
    std::mt19937 rng(seed + 21);
    double worst_r2 = 0.0, worst_angle = 0.0, worst_gap = 0.0;
    for (int it = 0; it < 100; ++it) {
      ModelParams params;
      const CartesianAmplitudes amps = random_trig(rng, params);
      const BridgeReport rep = verify_bridge(amps, params, 400, 0.0, 10.0);
      worst_r2 = std::max(worst_r2, rep.max_r2_rel_err);
      worst_angle = std::max(worst_angle, rep.max_angle_err);
      worst_gap = std::max(worst_gap, rep.omega_gap);
    }
    res.pass = worst_r2 <= 1e-8 && worst_angle <= 1e-8 && worst_gap <= 1e-12;
    res.detail = "r2 " + fmt("%.2e", worst_r2) + ", angle " + fmt("%.2e", worst_angle) +
                 ", omega gap " + fmt("%.2e", worst_gap);
  });

  suite.check("bridge.hyper_agreement", [&](CheckResult& res) {
    std::mt19937 rng(seed + 22);
    double worst_r2 = 0.0, worst_angle = 0.0, worst_gap = 0.0;
    for (int it = 0; it < 100; ++it) {
      ModelParams params;
      const CartesianAmplitudes amps = random_hyper(rng, params);
      const BridgeReport rep = verify_bridge(amps, params, 400, 0.0, 3.0);
      worst_r2 = std::max(worst_r2, rep.max_r2_rel_err);
      worst_angle = std::max(worst_angle, rep.max_angle_err);
      worst_gap = std::max(worst_gap, rep.omega_gap);
    }
    res.pass = worst_r2 <= 1e-8 && worst_angle <= 1e-8 && worst_gap <= 1e-12;
    res.detail = "r2 " + fmt("%.2e", worst_r2) + ", angle " + fmt("%.2e", worst_angle) +
                 ", omega gap " + fmt("%.2e", worst_gap);
  });

  suite.check("bridge.linear_agreement", [&](CheckResult& res) {
    std::mt19937 rng(seed + 23);
    double worst_r2 = 0.0, worst_angle = 0.0;
    for (int it = 0; it < 100; ++it) {
      ModelParams params;
      const CartesianAmplitudes amps = random_linear(rng, params);
      const BridgeReport rep = verify_bridge(amps, params, 400, 0.0, 3.0);
      worst_r2 = std::max(worst_r2, rep.max_r2_rel_err);
      worst_angle = std::max(worst_angle, rep.max_angle_err);
    }
    res.pass = worst_r2 <= 1e-8 && worst_angle <= 1e-8;
    res.detail = "r2 " + fmt("%.2e", worst_r2) + ", angle " + fmt("%.2e", worst_angle);
  });

  suite.check("bridge.energy_match", [&](CheckResult& res) {
    std::mt19937 rng(seed + 24);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      ModelParams params;
      const CartesianAmplitudes amps = random_trig(rng, params);
      const CartesianInvariants inv = cartesian_invariants(amps, params);
      const ClosedFormTrajectory traj = bridge(amps, params);
      worst = std::max(worst, std::abs(inv.E - traj.energy) / std::max(1.0, std::abs(inv.E)));
      worst = std::max(worst,
                       std::abs(inv.J - traj.J) / std::max(1.0, std::abs(inv.J)));
    }
    res.pass = worst <= 1e-12;
    res.detail = "max (E, J) rel dev " + fmt("%.2e", worst);
  });
}

void check_ode(Suite& suite, unsigned seed) {
  (void)seed;
  suite.check("ode.energy_drift", [&](CheckResult& res) {
    // 50 radial periods of the bounded benchmark.
    const ModelParams params{1.0, 3.0};
    const auto traj = make_trajectory(params, 1.0, 3.0);
    IntegrationConfig cfg;
    cfg.t1 = 50.0 * kPi / std::sqrt(3.0);
    cfg.n_samples = 2000;
    const auto sampled = integrate(params, eval_state(traj, 0.0), cfg);
    res.pass = sampled.energy_drift <= 100.0 * cfg.rel_tol;
    res.detail = "rel drift " + fmt("%.2e", sampled.energy_drift);
  });

  suite.check("ode.time_reversal", [&](CheckResult& res) {
    double worst = 0.0;
    for (const auto& [params, J, E] :
         {std::tuple{ModelParams{1.0, 3.0}, 1.0, 3.0},
          std::tuple{ModelParams{-1.0, 2.0}, 1.0, 3.0},
          std::tuple{ModelParams{1.0, 3.0}, 1.0, 6.0}}) {
      const auto traj = make_trajectory(params, J, E);
      const ClassicalState start = eval_state(traj, 0.0);
      IntegrationConfig cfg;
      cfg.t1 = 4.0;
      cfg.n_samples = 2;
      const auto fwd = integrate(params, start, cfg);
      const ClassicalState end = fwd.state_at(fwd.t.size() - 1);
      const auto back =
          integrate(params, {end.r, -end.r_dot, end.phi, -end.J}, cfg);
      const ClassicalState again = back.state_at(back.t.size() - 1);
      worst = std::max({worst, std::abs(again.r - start.r),
                        std::abs(again.r_dot + start.r_dot),
                        std::abs(wrap_pm_pi(again.phi - start.phi))});
    }
    res.pass = worst <= 1e-8;
    res.detail = "max return dev " + fmt("%.2e", worst);
  });

  suite.check("ode.sphere_wall_respected", [&](CheckResult& res) {
    const ModelParams params{-1.0, 2.0};
    const auto traj = make_trajectory(params, 1.0, 3.0);
    IntegrationConfig cfg;
    cfg.t1 = 10.0;
    const auto sampled = integrate(params, eval_state(traj, 0.0), cfg);
    double top = 0.0;
    for (double rv : sampled.r) top = std::max(top, rv);
    res.pass = top < 1.0;
    res.detail = "max r " + fmt("%.12f", top);
  });

  suite.check("ode.tolerance_trend", [&](CheckResult& res) {
    const ModelParams params{1.0, 3.0};
    const auto traj = make_trajectory(params, 1.0, 3.0);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::string seq;
    for (double tol : {1e-4, 1e-7, 1e-10}) {
      IntegrationConfig cfg;
      cfg.t1 = 10.0;
      cfg.rel_tol = cfg.abs_tol = tol;
      const auto sampled = integrate(params, eval_state(traj, 0.0), cfg);
      const auto rep = compare_with_closed_form(sampled, traj);
      monotone = monotone && rep.max_r2_abs_err < prev;
      prev = rep.max_r2_abs_err;
      seq += fmt(" %.1e", rep.max_r2_abs_err);
    }
    res.pass = monotone;
    res.detail = "r2 err by decade:" + seq;
  });

  suite.check("ode.line_motion_through_origin", [&](CheckResult& res) {
    // J = 0 drop from rest: r(t) reaches 0 and re-emerges on the far side.
    const ModelParams params{-1.0, 2.0};
    const ClassicalState start{0.5, 0.0, 0.25, 0.0};
    IntegrationConfig cfg;
    cfg.t1 = 6.0;
    cfg.n_samples = 4000;
    const auto sampled = integrate(params, start, cfg);
    double r_low = 1e300;
    bool flipped = false;
    for (std::size_t k = 0; k < sampled.t.size(); ++k) {
      r_low = std::min(r_low, sampled.r[k]);
      if (std::abs(wrap_pm_pi(sampled.phi[k] - start.phi - kPi)) < 1e-12) flipped = true;
    }
    res.pass = sampled.energy_drift <= 1e-8 && r_low < 1e-3 && flipped;
    res.detail = "drift " + fmt("%.2e", sampled.energy_drift) + ", min r " +
                 fmt("%.2e", r_low) + (flipped ? ", azimuth flips" : ", no flip");
  });
}

void check_quantum(Suite& suite, unsigned seed) {
  (void)seed;
  suite.check("quantum.degeneracy", [&](CheckResult& res) {
    for (const QuantumParams qp : {QuantumParams{-1.0, 1.0}, QuantumParams{1.0, 5.2}}) {
      const auto levels = energy_levels(qp, 7);
      for (const auto& level : levels) {
        if (level.degeneracy != level.n + 1) {
          res.pass = false;
          res.detail = "degeneracy != n+1 at n=" + std::to_string(level.n);
          return;
        }
        for (const auto& st : level.states) {
          if (2 * st.n_r + std::abs(st.m) != level.n ||
              energy_level(qp, 2 * st.n_r + std::abs(st.m)) != level.energy) {
            res.pass = false;
            res.detail = "partition energy mismatch at n=" + std::to_string(level.n);
            return;
          }
        }
      }
    }
    res.pass = true;
    res.detail = "E depends on (n_r, m) only through n";
  });

  suite.check("quantum.residuals", [&](CheckResult& res) {
    double worst = 0.0;
    for (const QuantumParams qp : {QuantumParams{-1.0, 1.0}, QuantumParams{1.0, 5.2}}) {
      const double lo = 1e-3;
      const double hi = (qp.lambda < 0.0) ? 0.999 : 20.0;
      for (const auto& level : energy_levels(qp, 7)) {
        for (const auto& st : level.states) {
          if (st.m < 0) continue;  // residual depends on |m|
          const auto state = make_eigenstate(qp, st.n_r, st.m);
          for (int k = 0; k < 50; ++k) {
            const double r = lo * std::pow(hi / lo, k / 49.0);
            worst = std::max(worst, std::abs(ode_residual(qp, state, r)));
          }
        }
      }
    }
    res.pass = worst <= 1e-8;
    res.detail = "max scaled residual " + fmt("%.2e", worst);
  });

  suite.check("quantum.orthonormality", [&](CheckResult& res) {
    double worst = 0.0;
    for (const QuantumParams qp : {QuantumParams{-1.0, 1.0}, QuantumParams{1.0, 9.9}}) {
      std::vector<RadialEigenstate> states;
      for (int n_r = 0; n_r < 5; ++n_r) states.push_back(make_eigenstate(qp, n_r, 0));
      for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i; j < states.size(); ++j) {
          const double g = inner_product(qp, states[i], states[j]);
          worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    res.pass = worst <= 1e-8;
    res.detail = "max Gram deviation " + fmt("%.2e", worst);
  });

  suite.check("quantum.node_rule", [&](CheckResult& res) {
    for (const QuantumParams qp : {QuantumParams{-1.0, 1.0}, QuantumParams{1.0, 5.2}}) {
      const double hi = (qp.lambda < 0.0) ? 1.0 / std::sqrt(-qp.lambda) : 20.0;
      for (const auto& level : energy_levels(qp, 7)) {
        for (const auto& st : level.states) {
          if (st.m < 0) continue;
          const RadialWavefunction wf(qp, st.n_r, st.m);
          int nodes = 0;
          double prev = wf(hi * 1e-4);
          for (int k = 1; k < 10000; ++k) {
            const double v = wf(hi * (1e-4 + (0.9995 - 1e-4) * k / 9999.0));
            if (prev != 0.0 && v != 0.0 && (prev < 0.0) != (v < 0.0)) ++nodes;
            if (v != 0.0) prev = v;
          }
          if (nodes != st.n_r) {
            res.pass = false;
            res.detail = "state (n_r=" + std::to_string(st.n_r) +
                         ", m=" + std::to_string(st.m) + ") has " +
                         std::to_string(nodes) + " nodes";
            return;
          }
        }
      }
    }
    res.pass = true;
    res.detail = "sign changes = n_r for all n <= 6";
  });

  suite.check("quantum.flat_limit", [&](CheckResult& res) {
    double worst = 0.0;
    for (double lambda : {1e-6, -1e-6}) {
      const QuantumParams qp{lambda, 2.0};
      for (int n = 0; n <= 6; ++n)
        worst = std::max(worst, std::abs(energy_level(qp, n) - 2.0 * (n + 1)));
    }
    res.pass = worst <= 1e-4;
    res.detail = "max gap to flat ladder " + fmt("%.2e", worst);
  });

  suite.check("quantum.truncation", [&](CheckResult& res) {
    const int expected[] = {2, 4, 9};
    const double ratios[] = {2.6, 5.2, 9.9};
    for (int k = 0; k < 3; ++k) {
      const auto got = max_principal({1.0, ratios[k]});
      if (!got || *got != expected[k]) {
        res.pass = false;
        res.detail = "n_max wrong for beta/lambda=" + fmt("%.1f", ratios[k]);
        return;
      }
    }
    // Exact integer at the upper edge is excluded.
    const auto edge = max_principal({1.0, 4.5});
    if (!edge || *edge != 3) {
      res.pass = false;
      res.detail = "upper-edge integer not excluded";
      return;
    }
    res.pass = true;
    res.detail = "n_max = 2, 4, 9 and edge case excluded";
  });
}

}  // namespace

std::vector<CheckResult> run_selftest(unsigned seed) {
  Suite suite;
  check_model(suite, seed);
  check_closed_form(suite, seed);
  check_cartesian(suite, seed);
  check_ode(suite, seed);
  check_quantum(suite, seed);
  return suite.results;
}

}  // namespace curvosc
