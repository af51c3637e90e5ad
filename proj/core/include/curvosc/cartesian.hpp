#pragma once

// Two-coordinate solution families and their reduction to the polar
// closed forms.  The same orbit can be written as
//
//   Trig:    x = A1 sin(wb t + p1),   y = A2 sin(wb t + p2)
//   Hyper:   x = A1 sinh(wb t + p1),  y = A2 sinh(wb t + p2)
//   Linear:  x = A1 t + p1,           y = A2 t + p2
//
// subject to one algebraic constraint tying the frequency wb to the
// oscillator strength.  The bridge_* maps convert amplitudes and phases
// into the (A, B, phi, K) of the matching ClosedFormTrajectory.

#include "curvosc/closed_form.hpp"
#include "curvosc/model.hpp"

namespace curvosc {

enum class CartesianKind { Trig, Hyper, Linear };

struct CartesianAmplitudes {
  CartesianKind kind = CartesianKind::Trig;
  double A1 = 0.0;
  double A2 = 0.0;
  double p1 = 0.0;  // phase phi1 (Trig/Hyper) or offset B1 (Linear)
  double p2 = 0.0;  // phase phi2 (Trig/Hyper) or offset B2 (Linear)
};

struct CartesianInvariants {
  double omega_bar = 0.0;  // frequency of the two-coordinate form; 0 for Linear
  double M = 0.0;          // mass factor: 1 + lambda P (Trig), lambda P - 1 (Hyper); 0 for Linear
  double P = 0.0;          // amplitude invariant P_e / P_h / P_L
  double J = 0.0;
  double E = 0.0;
  double constraint_residual = 0.0;  // alpha^2 - M wb^2, or alpha^2 - lambda P (Linear)
};

struct BridgeReport {
  double max_r2_abs_err = 0.0;
  double max_r2_rel_err = 0.0;
  double max_angle_err = 0.0;   // radians, wrapped to (-pi, pi]
  double omega_gap = 0.0;       // |omega_polar - omega_bar|
  int n_samples = 0;
};

const char* to_string(CartesianKind kind);

// Position of the two-coordinate form at time t (omega_bar ignored for
// Linear).
std::pair<double, double> eval_cartesian(const CartesianAmplitudes& amps,
                                         double omega_bar, double t);

// Applies the variant's constraint.  For Trig/Hyper the frequency follows
// from alpha and the amplitudes; throws std::invalid_argument when the
// mass factor M is not positive.  For Linear the constraint instead fixes
// alpha itself and the residual reports the mismatch with params.alpha.
CartesianInvariants cartesian_invariants(const CartesianAmplitudes& amps,
                                         const ModelParams& params);

// Oscillator strength consistent with a Linear amplitude set.
double linear_alpha(const CartesianAmplitudes& amps, double lambda);

// Reductions to the polar closed form.  Each checks the variant tag and
// the regime implied by the invariants.
ClosedFormTrajectory bridge_bounded(const CartesianAmplitudes& amps,
                                    const ModelParams& params);
ClosedFormTrajectory bridge_unbounded(const CartesianAmplitudes& amps,
                                      const ModelParams& params);
ClosedFormTrajectory bridge_limiting(const CartesianAmplitudes& amps,
                                     const ModelParams& params);

// Dispatches on amps.kind.
ClosedFormTrajectory bridge(const CartesianAmplitudes& amps, const ModelParams& params);

// Samples both representations on n_samples uniform times in [t0, t1]
// and reports the worst deviations.
BridgeReport verify_bridge(const CartesianAmplitudes& amps, const ModelParams& params,
                           int n_samples, double t0, double t1);

}  // namespace curvosc
