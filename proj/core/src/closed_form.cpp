#include "curvosc/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace curvosc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRadicandTolRel = 1e-12;
constexpr double kInitialRangeTolRel = 1e-9;

double wrap_two_pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Azimuth accumulated since theta = 0 for the Bounded law
//   tan(phi_az - K) = (w/J) (B tan(theta) + A),   theta = w t + phi/2.
// The floor term keeps the inverse tangent continuous across the poles
// of tan(theta); B > 0 guarantees one pi-branch per half period.
double bounded_azimuth_offset(double A, double B, double omega, double J, double theta) {
  const double arg = (omega / J) * (B * std::tan(theta) + A);
  return std::atan(arg) + kPi * sgn(J) * std::floor(theta / kPi + 0.5);
}

double checked_sqrt(double radicand, double scale, const char* what) {
  if (radicand < 0.0) {
    if (radicand < -kRadicandTolRel * scale)
      throw std::logic_error(std::string(what) + ": radicand negative beyond tolerance");
    return 0.0;
  }
  return std::sqrt(radicand);
}

}  // namespace

ClosedFormTrajectory bounded_trajectory(const ModelParams& params, double J, double E,
                                        double phi, double K) {
  const MotionConstants mc = motion_constants(params, J, E);
  if (mc.regime != Regime::Bounded)
    throw std::invalid_argument(std::string("bounded_trajectory: regime is ") +
                                to_string(mc.regime));
  const double lam = params.lambda;
  const double alpha = params.alpha;
  const double w = mc.omega;
  const double w2 = w * w;

  const double fm = (alpha - lam * J) * (alpha - lam * J) - w2;
  const double fp = (alpha + lam * J) * (alpha + lam * J) - w2;
  const double scale = (alpha * alpha + lam * lam * J * J + w2) *
                       (alpha * alpha + lam * lam * J * J + w2);

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Bounded;
  traj.params = params;
  traj.J = J;
  traj.energy = E;
  traj.omega = w;
  traj.A = checked_sqrt(fm * fp, scale, "bounded_trajectory") /
           (2.0 * std::abs(lam) * w2);
  traj.B = (alpha * alpha - lam * lam * J * J - w2) / (2.0 * lam * w2);
  traj.phi = wrap_two_pi(phi);
  traj.K = K;
  return traj;
}

ClosedFormTrajectory unbounded_trajectory(const ModelParams& params, double J, double E,
                                          double phi, double K) {
  const MotionConstants mc = motion_constants(params, J, E);
  if (mc.regime != Regime::Unbounded)
    throw std::invalid_argument(std::string("unbounded_trajectory: regime is ") +
                                to_string(mc.regime));
  const double lam = params.lambda;
  const double alpha = params.alpha;
  const double w = mc.omega;
  const double w2 = w * w;

  const double fm = (alpha - lam * J) * (alpha - lam * J) + w2;
  const double fp = (alpha + lam * J) * (alpha + lam * J) + w2;

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Unbounded;
  traj.params = params;
  traj.J = J;
  traj.energy = E;
  traj.omega = w;
  traj.A = std::sqrt(fm * fp) / (2.0 * lam * w2);
  traj.B = -(alpha * alpha - lam * lam * J * J + w2) / (2.0 * lam * w2);
  traj.phi = phi;
  traj.K = K;
  return traj;
}

ClosedFormTrajectory limiting_trajectory(const ModelParams& params, double J,
                                         double phi, double K) {
  validate(params);
  if (params.lambda <= 0.0)
    throw std::invalid_argument("limiting_trajectory: requires lambda > 0");
  const double lam = params.lambda;
  const double alpha = params.alpha;
  const double p = alpha * alpha - lam * lam * J * J;
  if (p <= 0.0)
    throw std::invalid_argument("limiting_trajectory: requires |J| < alpha/lambda");

  ClosedFormTrajectory traj;
  traj.kind = TrajectoryKind::Limiting;
  traj.params = params;
  traj.J = J;
  traj.energy = limiting_energy(params);
  traj.omega = 0.0;
  traj.A = std::sqrt(p / lam);
  traj.B = (J == 0.0) ? 0.0 : lam * J * J / p;
  traj.phi = phi;
  traj.K = K;
  return traj;
}

ClosedFormTrajectory make_trajectory(const ModelParams& params, double J, double E,
                                     double phi, double K) {
  switch (motion_constants(params, J, E).regime) {
    case Regime::Bounded: return bounded_trajectory(params, J, E, phi, K);
    case Regime::Unbounded: return unbounded_trajectory(params, J, E, phi, K);
    case Regime::Limiting: return limiting_trajectory(params, J, phi, K);
    case Regime::Forbidden: break;
  }
  throw std::invalid_argument("make_trajectory: (J, E) lies in the Forbidden region");
}

double eval_r2(const ClosedFormTrajectory& traj, double t) {
  switch (traj.kind) {
    case TrajectoryKind::Bounded:
      return traj.A * std::sin(2.0 * traj.omega * t + traj.phi) + traj.B;
    case TrajectoryKind::Unbounded:
      return traj.A * std::cosh(2.0 * traj.omega * t + traj.phi) + traj.B;
    case TrajectoryKind::Limiting: {
      const double g = traj.A * t + traj.phi;
      return g * g + traj.B;
    }
  }
  return 0.0;
}

ClassicalState eval_state(const ClosedFormTrajectory& traj, double t) {
  ClassicalState st;
  st.J = traj.J;

  if (traj.J == 0.0) {
    // Line through the origin: r = sqrt(2A) |g|, azimuth K on the
    // branch_sign * g > 0 half line and K + pi on the other.
    double g = 0.0, g_dot = 0.0, amp = 1.0;
    switch (traj.kind) {
      case TrajectoryKind::Bounded: {
        const double psi = traj.phi / 2.0 + kPi / 4.0;
        g = std::sin(traj.omega * t + psi);
        g_dot = traj.omega * std::cos(traj.omega * t + psi);
        amp = std::sqrt(2.0 * traj.A);
        break;
      }
      case TrajectoryKind::Unbounded: {
        const double theta = traj.omega * t + traj.phi / 2.0;
        g = std::sinh(theta);
        g_dot = traj.omega * std::cosh(theta);
        amp = std::sqrt(2.0 * traj.A);
        break;
      }
      case TrajectoryKind::Limiting: {
        g = traj.A * t + traj.phi;
        g_dot = traj.A;
        amp = 1.0;
        break;
      }
    }
    st.r = amp * std::abs(g);
    st.r_dot = amp * g_dot * sgn(g);
    st.phi = (traj.branch_sign * g >= 0.0) ? traj.K : traj.K + kPi;
    return st;
  }

  const double u = eval_r2(traj, t);
  st.r = std::sqrt(u);
  switch (traj.kind) {
    case TrajectoryKind::Bounded: {
      const double theta = traj.omega * t + traj.phi / 2.0;
      st.r_dot = traj.omega * traj.A * std::cos(2.0 * traj.omega * t + traj.phi) / st.r;
      st.phi = traj.K + bounded_azimuth_offset(traj.A, traj.B, traj.omega, traj.J, theta);
      break;
    }
    case TrajectoryKind::Unbounded: {
      const double theta = traj.omega * t + traj.phi / 2.0;
      st.r_dot = traj.omega * traj.A * std::sinh(2.0 * traj.omega * t + traj.phi) / st.r;
      st.phi = traj.K +
               std::atan((traj.omega / traj.J) * (traj.A - traj.B) * std::tanh(theta));
      break;
    }
    case TrajectoryKind::Limiting: {
      const double g = traj.A * t + traj.phi;
      st.r_dot = traj.A * g / st.r;
      st.phi = traj.K + std::atan((traj.A / traj.J) * g);
      break;
    }
  }
  return st;
}

std::pair<double, double> r2_range(const ClosedFormTrajectory& traj) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (traj.kind) {
    case TrajectoryKind::Bounded: return {traj.B - traj.A, traj.B + traj.A};
    case TrajectoryKind::Unbounded: return {traj.A + traj.B, inf};
    case TrajectoryKind::Limiting: return {traj.B, inf};
  }
  return {0.0, 0.0};
}

PhaseConstants phase_from_initial(const ModelParams& params, double J, double E,
                                  double r0, int r_dot_sign, double phi0) {
  if (!radial_domain(params).contains(r0))
    throw std::invalid_argument("phase_from_initial: r0 outside the radial domain");
  const double u0 = r0 * r0;

  ClosedFormTrajectory probe = make_trajectory(params, J, E, 0.0, 0.0);
  const double tol = kInitialRangeTolRel * std::max(1.0, std::abs(probe.B) + probe.A);

  double phi = 0.0;
  switch (probe.kind) {
    case TrajectoryKind::Bounded: {
      if (probe.A == 0.0) {
        // Circular orbit: every admissible r0 equals sqrt(B).
        if (std::abs(u0 - probe.B) > tol)
          throw std::invalid_argument("phase_from_initial: r0 off the circular radius");
        phi = 0.0;
        break;
      }
      double s = (u0 - probe.B) / probe.A;
      if (std::abs(s) > 1.0 + kInitialRangeTolRel)
        throw std::invalid_argument("phase_from_initial: r0 outside the radial range");
      s = std::clamp(s, -1.0, 1.0);
      phi = (r_dot_sign >= 0) ? std::asin(s) : kPi - std::asin(s);
      phi = wrap_two_pi(phi);
      break;
    }
    case TrajectoryKind::Unbounded: {
      double c = (u0 - probe.B) / probe.A;
      if (c < 1.0 - kInitialRangeTolRel)
        throw std::invalid_argument("phase_from_initial: r0 below the pericenter");
      c = std::max(c, 1.0);
      phi = (r_dot_sign >= 0 ? 1.0 : -1.0) * std::acosh(c);
      break;
    }
    case TrajectoryKind::Limiting: {
      const double d = u0 - probe.B;
      if (d < -tol)
        throw std::invalid_argument("phase_from_initial: r0 below the minimal radius");
      phi = (r_dot_sign >= 0 ? 1.0 : -1.0) * std::sqrt(std::max(d, 0.0));
      break;
    }
  }

  probe.phi = (probe.kind == TrajectoryKind::Bounded) ? wrap_two_pi(phi) : phi;
  double K = 0.0;
  if (J == 0.0) {
    // phi0 labels the half line the motion starts on; eval_state uses K
    // for the branch_sign * g > 0 branch, so absorb a possible flip here.
    const ClassicalState at0 = eval_state(probe, 0.0);
    K = (at0.phi == 0.0) ? phi0 : phi0 - kPi;
  } else {
    K = phi0 - eval_state(probe, 0.0).phi;
  }
  return {probe.phi, K};
}

}  // namespace curvosc
