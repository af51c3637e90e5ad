#include "curvosc/cartesian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvosc {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Below this the cross term counts as exactly zero angular momentum and
// the orbit degenerates to a line through the origin.
constexpr double kLineThreshold = 1e-14;
constexpr double kLinearConsistencyRel = 1e-9;

double wrap_pm_pi(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

double wrap_two_pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y;
}

// Canonical azimuth of a line through the origin, in [0, pi).
double line_azimuth(double x, double y) {
  double k = std::atan2(y, x);
  k = std::fmod(k, kPi);
  if (k < 0.0) k += kPi;
  return k;
}

// branch_sign such that the half line at azimuth az_pos carries label K.
double branch_for(double az_pos, double K) {
  return (std::abs(wrap_pm_pi(az_pos - K)) < kPi / 2.0) ? 1.0 : -1.0;
}

// Adjusts K by pi when the azimuth law evaluated at t = 0 lands on the
// opposite branch of the target.
void fix_K_branch(ClosedFormTrajectory& traj, double x0, double y0) {
  const double target = std::atan2(y0, x0);
  const double have = wrap_pm_pi(eval_state(traj, 0.0).phi - target);
  if (std::abs(have) > kPi / 2.0) traj.K = wrap_pm_pi(traj.K + kPi);
}

}  // namespace

const char* to_string(CartesianKind kind) {
  switch (kind) {
    case CartesianKind::Trig: return "Trig";
    case CartesianKind::Hyper: return "Hyper";
    case CartesianKind::Linear: return "Linear";
  }
  return "?";
}

std::pair<double, double> eval_cartesian(const CartesianAmplitudes& amps,
                                         double omega_bar, double t) {
  switch (amps.kind) {
    case CartesianKind::Trig:
      return {amps.A1 * std::sin(omega_bar * t + amps.p1),
              amps.A2 * std::sin(omega_bar * t + amps.p2)};
    case CartesianKind::Hyper:
      return {amps.A1 * std::sinh(omega_bar * t + amps.p1),
              amps.A2 * std::sinh(omega_bar * t + amps.p2)};
    case CartesianKind::Linear:
      return {amps.A1 * t + amps.p1, amps.A2 * t + amps.p2};
  }
  return {0.0, 0.0};
}

CartesianInvariants cartesian_invariants(const CartesianAmplitudes& amps,
                                         const ModelParams& params) {
  validate(params);
  const double lam = params.lambda;
  const double a2 = params.alpha * params.alpha;
  const double sq1 = amps.A1 * amps.A1;
  const double sq2 = amps.A2 * amps.A2;

  CartesianInvariants inv;
  switch (amps.kind) {
    case CartesianKind::Trig: {
      const double cross = std::sin(amps.p1 - amps.p2);
      inv.P = sq1 + sq2 + lam * sq1 * sq2 * cross * cross;
      inv.M = 1.0 + lam * inv.P;
      if (inv.M <= 0.0)
        throw std::invalid_argument("cartesian_invariants: mass factor 1 + lambda P "
                                    "not positive, no Trig orbit with these amplitudes");
      // M > 0 also admits a mirror family whose radial range lies entirely
      // beyond the sphere wall (wall tangency is exactly M = 0); reject it.
      if (lam < 0.0 && -0.5 * lam * (sq1 + sq2) >= 1.0)
        throw std::invalid_argument("cartesian_invariants: Trig amplitudes place the "
                                    "orbit beyond the sphere wall");
      inv.omega_bar = params.alpha / std::sqrt(inv.M);
      inv.J = inv.omega_bar * amps.A1 * amps.A2 * cross;
      inv.E = 0.5 * inv.omega_bar * inv.omega_bar * inv.P;
      inv.constraint_residual = a2 - inv.M * inv.omega_bar * inv.omega_bar;
      break;
    }
    case CartesianKind::Hyper: {
      if (lam < 0.0)
        throw std::invalid_argument("cartesian_invariants: Hyper orbits need lambda > 0, "
                                    "the sphere confines every motion");
      const double cross = std::sinh(amps.p1 - amps.p2);
      inv.P = sq1 + sq2 + lam * sq1 * sq2 * cross * cross;
      inv.M = lam * inv.P - 1.0;
      if (inv.M <= 0.0)
        throw std::invalid_argument("cartesian_invariants: mass factor lambda P - 1 "
                                    "not positive, no Hyper orbit with these amplitudes");
      inv.omega_bar = params.alpha / std::sqrt(inv.M);
      inv.J = inv.omega_bar * amps.A1 * amps.A2 * cross;
      inv.E = 0.5 * inv.omega_bar * inv.omega_bar * inv.P;
      inv.constraint_residual = a2 - inv.M * inv.omega_bar * inv.omega_bar;
      break;
    }
    case CartesianKind::Linear: {
      if (lam <= 0.0)
        throw std::invalid_argument("cartesian_invariants: Linear orbits need lambda > 0");
      inv.J = amps.A2 * amps.p1 - amps.A1 * amps.p2;
      inv.P = sq1 + sq2 + lam * inv.J * inv.J;
      inv.omega_bar = 0.0;
      inv.M = 0.0;
      inv.E = 0.5 * a2 / lam;
      inv.constraint_residual = a2 - lam * inv.P;
      break;
    }
  }
  return inv;
}

double linear_alpha(const CartesianAmplitudes& amps, double lambda) {
  if (amps.kind != CartesianKind::Linear)
    throw std::invalid_argument("linear_alpha: amplitude set is not Linear");
  if (lambda <= 0.0)
    throw std::invalid_argument("linear_alpha: requires lambda > 0");
  const double J = amps.A2 * amps.p1 - amps.A1 * amps.p2;
  const double P = amps.A1 * amps.A1 + amps.A2 * amps.A2 + lambda * J * J;
  return std::sqrt(lambda * P);
}

ClosedFormTrajectory bridge_bounded(const CartesianAmplitudes& amps,
                                    const ModelParams& params) {
  if (amps.kind != CartesianKind::Trig)
    throw std::invalid_argument("bridge_bounded: amplitude set is not Trig");
  const CartesianInvariants inv = cartesian_invariants(amps, params);
  const MotionConstants mc = motion_constants(params, inv.J, inv.E);
  if (mc.regime != Regime::Bounded)
    throw std::invalid_argument(std::string("bridge_bounded: invariants classify as ") +
                                to_string(mc.regime));

  const double sq1 = amps.A1 * amps.A1;
  const double sq2 = amps.A2 * amps.A2;

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Bounded;
  traj.params = params;
  traj.energy = inv.E;
  traj.omega = mc.omega;
  traj.B = 0.5 * (sq1 + sq2);
  const double a_cos = 0.5 * (sq1 * std::sin(2.0 * amps.p1) + sq2 * std::sin(2.0 * amps.p2));
  const double a_sin = -0.5 * (sq1 * std::cos(2.0 * amps.p1) + sq2 * std::cos(2.0 * amps.p2));
  traj.A = std::hypot(a_cos, a_sin);
  traj.phi = wrap_two_pi(std::atan2(a_sin, a_cos));

  if (std::abs(std::sin(amps.p1 - amps.p2)) < kLineThreshold) {
    traj.J = 0.0;
    // Line orbit y = +- (A2/A1) x; K is the canonical line azimuth and the
    // branch sign is read off where r^2 peaks (g = +1 there).
    const double sign_cos = std::cos(amps.p1 - amps.p2) < 0.0 ? -1.0 : 1.0;
    traj.K = line_azimuth(amps.A1, sign_cos * amps.A2);
    const double t_peak = (kPi / 2.0 - traj.phi) / (2.0 * traj.omega);
    const auto [xp, yp] = eval_cartesian(amps, inv.omega_bar, t_peak);
    traj.branch_sign = branch_for(std::atan2(yp, xp), traj.K);
    return traj;
  }

  traj.J = inv.J;
  // tan K condition, scaled by cos(phi/2) to stay finite at phi = pi.
  const double c2 = std::cos(traj.phi / 2.0);
  const double s2 = std::sin(traj.phi / 2.0);
  const double gain = (traj.omega / traj.J) * (traj.B * s2 + traj.A * c2);
  const double num = amps.A2 * std::sin(amps.p2) * c2 - amps.A1 * std::sin(amps.p1) * gain;
  const double den = amps.A1 * std::sin(amps.p1) * c2 + amps.A2 * std::sin(amps.p2) * gain;
  traj.K = std::atan2(num, den);
  const auto [x0, y0] = eval_cartesian(amps, inv.omega_bar, 0.0);
  fix_K_branch(traj, x0, y0);
  return traj;
}

ClosedFormTrajectory bridge_unbounded(const CartesianAmplitudes& amps,
                                      const ModelParams& params) {
  if (amps.kind != CartesianKind::Hyper)
    throw std::invalid_argument("bridge_unbounded: amplitude set is not Hyper");
  const CartesianInvariants inv = cartesian_invariants(amps, params);
  const MotionConstants mc = motion_constants(params, inv.J, inv.E);
  if (mc.regime != Regime::Unbounded)
    throw std::invalid_argument(std::string("bridge_unbounded: invariants classify as ") +
                                to_string(mc.regime));

  const double sq1 = amps.A1 * amps.A1;
  const double sq2 = amps.A2 * amps.A2;

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Unbounded;
  traj.params = params;
  traj.energy = inv.E;
  traj.omega = mc.omega;
  traj.B = -0.5 * (sq1 + sq2);
  // A cosh(phi) +- A sinh(phi) split into pure-exponential sums, which
  // avoids the cancellation of cosh - sinh at large phases.
  const double e_plus = 0.5 * (sq1 * std::exp(2.0 * amps.p1) + sq2 * std::exp(2.0 * amps.p2));
  const double e_minus = 0.5 * (sq1 * std::exp(-2.0 * amps.p1) + sq2 * std::exp(-2.0 * amps.p2));
  traj.A = std::sqrt(e_plus * e_minus);
  traj.phi = 0.5 * std::log(e_plus / e_minus);

  if (std::abs(std::sinh(amps.p1 - amps.p2)) < kLineThreshold) {
    traj.J = 0.0;
    traj.K = line_azimuth(amps.A1, amps.A2);
    traj.branch_sign = branch_for(std::atan2(amps.A2, amps.A1), traj.K);
    return traj;
  }

  traj.J = inv.J;
  const double th2 = std::tanh(traj.phi / 2.0);
  const double gain = (traj.omega / traj.J) * (traj.A - traj.B) * th2;
  const double num = amps.A2 * std::sinh(amps.p2) - amps.A1 * std::sinh(amps.p1) * gain;
  const double den = amps.A1 * std::sinh(amps.p1) + amps.A2 * std::sinh(amps.p2) * gain;
  traj.K = std::atan2(num, den);
  const auto [x0, y0] = eval_cartesian(amps, inv.omega_bar, 0.0);
  fix_K_branch(traj, x0, y0);
  return traj;
}

ClosedFormTrajectory bridge_limiting(const CartesianAmplitudes& amps,
                                     const ModelParams& params) {
  if (amps.kind != CartesianKind::Linear)
    throw std::invalid_argument("bridge_limiting: amplitude set is not Linear");
  const CartesianInvariants inv = cartesian_invariants(amps, params);
  const double a2 = params.alpha * params.alpha;
  if (std::abs(inv.constraint_residual) > kLinearConsistencyRel * std::max(1.0, a2))
    throw std::invalid_argument("bridge_limiting: alpha inconsistent with the Linear "
                                "amplitude constraint alpha^2 = lambda P");
  const double norm2 = amps.A1 * amps.A1 + amps.A2 * amps.A2;
  if (norm2 <= 0.0)
    throw std::invalid_argument("bridge_limiting: degenerate (A1, A2) = 0");

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Limiting;
  traj.params = params;
  traj.energy = inv.E;
  traj.omega = 0.0;
  traj.A = std::sqrt(norm2);
  traj.phi = (amps.A1 * amps.p1 + amps.A2 * amps.p2) / traj.A;
  const double cross = amps.A1 * amps.p2 - amps.A2 * amps.p1;
  traj.B = cross * cross / norm2;

  if (std::abs(inv.J) < kLineThreshold) {
    traj.J = 0.0;
    traj.B = 0.0;
    traj.K = line_azimuth(amps.A1, amps.A2);
    traj.branch_sign = branch_for(std::atan2(amps.A2, amps.A1), traj.K);
    return traj;
  }

  traj.J = inv.J;
  traj.K = std::atan2(-amps.A1, amps.A2);
  fix_K_branch(traj, amps.p1, amps.p2);
  return traj;
}

ClosedFormTrajectory bridge(const CartesianAmplitudes& amps, const ModelParams& params) {
  switch (amps.kind) {
    case CartesianKind::Trig: return bridge_bounded(amps, params);
    case CartesianKind::Hyper: return bridge_unbounded(amps, params);
    case CartesianKind::Linear: return bridge_limiting(amps, params);
  }
  throw std::invalid_argument("bridge: unknown amplitude variant");
}

BridgeReport verify_bridge(const CartesianAmplitudes& amps, const ModelParams& params,
                           int n_samples, double t0, double t1) {
  if (n_samples < 2) throw std::invalid_argument("verify_bridge: need n_samples >= 2");
  const CartesianInvariants inv = cartesian_invariants(amps, params);
  const ClosedFormTrajectory traj = bridge(amps, params);

  BridgeReport report;
  report.n_samples = n_samples;
  report.omega_gap = std::abs(traj.omega - inv.omega_bar);
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_samples - 1);
    const auto [x, y] = eval_cartesian(amps, inv.omega_bar, t);
    const ClassicalState st = eval_state(traj, t);
    const double u_cart = x * x + y * y;
    const double u_polar = st.r * st.r;
    const double abs_err = std::abs(u_cart - u_polar);
    report.max_r2_abs_err = std::max(report.max_r2_abs_err, abs_err);
    report.max_r2_rel_err =
        std::max(report.max_r2_rel_err, abs_err / std::max(1.0, std::abs(u_cart)));
    if (u_cart > 1e-24) {
      const double d = wrap_pm_pi(std::atan2(y, x) - st.phi);
      report.max_angle_err = std::max(report.max_angle_err, std::abs(d));
    }
  }
  return report;
}

}  // namespace curvosc
