#pragma once

// Exact time laws for the radial and azimuthal motion.  Each regime has
// its own r^2(t) profile and a matching arctangent law for the azimuth:
//
//   Bounded:    r^2 = A sin(2 w t + phi) + B
//   Unbounded:  r^2 = A cosh(2 w t + phi) + B
//   Limiting:   r^2 = (A t + phi)^2 + B        (w = 0; A carries 1/time)

#include <utility>

#include "curvosc/model.hpp"

namespace curvosc {

enum class TrajectoryKind { Bounded, Unbounded, Limiting };

struct ClosedFormTrajectory {
  TrajectoryKind kind = TrajectoryKind::Bounded;
  ModelParams params;
  double J = 0.0;
  double energy = 0.0;
  double A = 0.0;
  double B = 0.0;
  double omega = 0.0;  // copied from MotionConstants; zero for Limiting
  double phi = 0.0;    // radial phase; in [0, 2 pi) for Bounded
  double K = 0.0;      // azimuth integration constant
  // For J = 0 the orbit runs along a line through the origin and phi_az
  // flips by pi at every passage; branch_sign (+-1) selects which half
  // line carries the label K.  Unused for J != 0.
  double branch_sign = 1.0;
};

struct PhaseConstants {
  double phi = 0.0;
  double K = 0.0;
};

// Constructors validate the regime through motion_constants and throw
// std::invalid_argument on a mismatch.  phi fixes r^2(0), K the azimuth.
ClosedFormTrajectory bounded_trajectory(const ModelParams& params, double J, double E,
                                        double phi = 0.0, double K = 0.0);
ClosedFormTrajectory unbounded_trajectory(const ModelParams& params, double J, double E,
                                          double phi = 0.0, double K = 0.0);
// The Limiting trajectory exists only at E = alpha^2/(2 lambda), so no
// energy argument; requires lambda > 0 and |J| < alpha/lambda.
ClosedFormTrajectory limiting_trajectory(const ModelParams& params, double J,
                                         double phi = 0.0, double K = 0.0);

// Dispatches on the regime of (J, E); throws for Forbidden.
ClosedFormTrajectory make_trajectory(const ModelParams& params, double J, double E,
                                     double phi = 0.0, double K = 0.0);

double eval_r2(const ClosedFormTrajectory& traj, double t);

// Full state at time t.  The azimuth is continuous in t (branch counting
// across the arctangent is handled internally) except for J = 0, where it
// flips by pi at each passage through the origin.
ClassicalState eval_state(const ClosedFormTrajectory& traj, double t);

// Attained range of r^2; .second is +infinity for Unbounded/Limiting.
std::pair<double, double> r2_range(const ClosedFormTrajectory& traj);

// Recovers (phi, K) from an initial condition: radius r0, the sign of
// r_dot at t = 0 and the initial azimuth phi0.  Throws std::invalid_argument
// when r0 lies outside the attainable radial range (beyond tolerance).
PhaseConstants phase_from_initial(const ModelParams& params, double J, double E,
                                  double r0, int r_dot_sign, double phi0);

}  // namespace curvosc
