#pragma once

// Direct numerical integration of the equations of motion, used to
// cross-check the closed forms.  The stepper is an embedded adaptive
// Runge-Kutta 5(4) pair with a continuous extension for dense sampling.
// Steps are guarded: the right hand side is never evaluated outside the
// open radial domain, and trial steps crossing the sphere wall are
// rejected and retried with a smaller step.

#include <array>
#include <limits>
#include <vector>

#include "curvosc/closed_form.hpp"
#include "curvosc/model.hpp"

namespace curvosc {

struct IntegrationConfig {
  double t0 = 0.0;
  double t1 = 1.0;       // must exceed t0
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  int n_samples = 1000;  // uniform sample times, endpoints included
  long max_steps = 2000000;
};

struct SampledTrajectory {
  ModelParams params;
  double J = 0.0;
  double energy0 = 0.0;       // energy of the initial state
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> r_dot;
  std::vector<double> phi;
  double energy_drift = 0.0;  // max_k |E(t_k) - energy0| / |energy0|
  long n_steps = 0;
  long n_rejected = 0;

  ClassicalState state_at(std::size_t k) const { return {r[k], r_dot[k], phi[k], J}; }
};

struct ComparisonReport {
  double max_r2_abs_err = 0.0;
  double max_r2_rel_err = 0.0;  // denominator max(1, r^2_closed)
  double max_phi_abs_err = 0.0;
};

// (r_dot, r_ddot, phi_dot) of the polar equations of motion.  Throws
// std::domain_error when state.r lies outside the open radial domain.
std::array<double, 3> polar_rhs(const ModelParams& params, const ClassicalState& state);

// Integrates from state0 at t0 to t1.  J = 0 motion passes through the
// origin, where the polar form is singular; it is integrated as the
// equivalent one dimensional line motion and mapped back, with the
// azimuth flipping by pi at each passage.
SampledTrajectory integrate(const ModelParams& params, const ClassicalState& state0,
                            const IntegrationConfig& config);

// Pointwise deviation between the samples and the closed form, which must
// describe the same (params, J, E) motion (std::invalid_argument otherwise).
ComparisonReport compare_with_closed_form(const SampledTrajectory& sampled,
                                          const ClosedFormTrajectory& traj);

// Radial period extracted from the upward crossings of r^2(t) through its
// midrange.  Needs at least two full periods of samples; throws
// std::runtime_error when no oscillation is detected (circular orbits).
double measure_period(const SampledTrajectory& sampled);

}  // namespace curvosc
