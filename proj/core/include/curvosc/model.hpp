#pragma once

// Classical isotropic oscillator on a surface of constant curvature,
// written in polar coordinates (r, phi) with a position dependent mass
// 1/(1 + lambda r^2).  lambda > 0 selects the hyperbolic plane (r
// unbounded), lambda < 0 the sphere (r confined below 1/sqrt(-lambda)).
// All quantities are plain numbers; no unit system is assumed.

#include <optional>

namespace curvosc {

struct ModelParams {
  double lambda = 0.0;  // curvature parameter, nonzero
  double alpha = 0.0;   // oscillator strength, positive
};

// Open interval of admissible radii.
struct RadialDomain {
  double lo = 0.0;
  double hi = 0.0;  // +infinity when lambda > 0

  bool contains(double r) const { return r > lo && r < hi; }
};

struct ClassicalState {
  double r = 0.0;
  double r_dot = 0.0;
  double phi = 0.0;
  double J = 0.0;  // conserved angular momentum r^2 phi_dot, signed
};

enum class Regime { Forbidden, Bounded, Unbounded, Limiting };

// Constants of the radial motion.  u = r^2 obeys
//   (du/dt)^2 = 4 (qa + qb u + qc u^2),
// and the sign of qc separates oscillatory from runaway solutions.
struct MotionConstants {
  Regime regime = Regime::Forbidden;
  double C = 0.0;      // 2E - alpha^2/lambda
  double qa = 0.0;     // -J^2
  double qb = 0.0;     // C + alpha^2/lambda - lambda J^2
  double qc = 0.0;     // C lambda
  double delta = 0.0;  // 4 qa qc - qb^2
  double omega = 0.0;  // sqrt(|qc|); zero in the Limiting regime
};

struct PotentialMinimum {
  // Absent for J = 0: the potential has no stationary point and its
  // infimum 0 is approached only as r -> 0+.
  std::optional<double> r_min;
  double v_min = 0.0;
};

const char* to_string(Regime regime);

// Throws std::invalid_argument unless lambda is nonzero, alpha positive
// and both finite.
void validate(const ModelParams& params);

RadialDomain radial_domain(const ModelParams& params);

// Effective radial potential alpha^2 r^2 / (2 (1 + lambda r^2)) + J^2/(2 r^2).
// Throws std::domain_error for r outside the open radial domain.
double v_eff(const ModelParams& params, double J, double r);

// Location and value of the interior minimum of v_eff.  Returns nullopt
// for lambda > 0 with |J| >= alpha/lambda, where no minimum exists and
// every orbit with enough energy escapes.
std::optional<PotentialMinimum> v_eff_minimum(const ModelParams& params, double J);

// Conserved energy of a state,
//   E = (r_dot^2 + alpha^2 r^2 + (J^2/r^2)(1 + lambda r^2)) / (2 (1 + lambda r^2)).
double energy_of_state(const ModelParams& params, const ClassicalState& state);

// Escape threshold alpha^2/(2 lambda) separating Bounded from Unbounded
// motion; only meaningful for lambda > 0.
double limiting_energy(const ModelParams& params);

// Classifies the motion at angular momentum J and energy E and returns
// the associated constants.  E within 1e-12*max(1,|E|) of the escape
// threshold counts as Limiting (lambda > 0 only).
MotionConstants motion_constants(const ModelParams& params, double J, double E);

}  // namespace curvosc
