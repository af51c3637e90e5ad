#include "curvosc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace curvosc {

namespace {

constexpr double kLimitingBandRel = 1e-12;

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Forbidden: return "Forbidden";
    case Regime::Bounded: return "Bounded";
    case Regime::Unbounded: return "Unbounded";
    case Regime::Limiting: return "Limiting";
  }
  return "?";
}

void validate(const ModelParams& params) {
  if (!std::isfinite(params.lambda) || params.lambda == 0.0)
    throw std::invalid_argument("curvature parameter lambda must be finite and nonzero");
  if (!std::isfinite(params.alpha) || params.alpha <= 0.0)
    throw std::invalid_argument("oscillator strength alpha must be finite and positive");
}

RadialDomain radial_domain(const ModelParams& params) {
  validate(params);
  if (params.lambda > 0.0)
    return {0.0, std::numeric_limits<double>::infinity()};
  return {0.0, 1.0 / std::sqrt(-params.lambda)};
}

double v_eff(const ModelParams& params, double J, double r) {
  if (!radial_domain(params).contains(r))
    throw std::domain_error("radius " + std::to_string(r) + " outside the radial domain");
  const double r2 = r * r;
  double v = 0.5 * params.alpha * params.alpha * r2 / (1.0 + params.lambda * r2);
  if (J != 0.0) v += 0.5 * J * J / r2;
  return v;
}

std::optional<PotentialMinimum> v_eff_minimum(const ModelParams& params, double J) {
  validate(params);
  const double aJ = std::abs(J);
  if (aJ == 0.0) return PotentialMinimum{std::nullopt, 0.0};
  const double slope = params.alpha - params.lambda * aJ;
  // lambda > 0 with |J| >= alpha/lambda: v_eff decreases monotonically
  // towards the escape threshold, no stationary point.
  if (slope <= 0.0) return std::nullopt;
  PotentialMinimum out;
  out.r_min = std::sqrt(aJ / slope);
  out.v_min = 0.5 * aJ * (2.0 * params.alpha - params.lambda * aJ);
  return out;
}

double energy_of_state(const ModelParams& params, const ClassicalState& state) {
  // Sharing v_eff keeps the kinetic-plus-potential split of this energy an
  // identity down to round-off even where the metric nearly vanishes; the
  // J^2 term carries no metric factor because the two cancel exactly.
  const double r2 = state.r * state.r;
  return 0.5 * state.r_dot * state.r_dot / (1.0 + params.lambda * r2) +
         v_eff(params, state.J, state.r);
}

double limiting_energy(const ModelParams& params) {
  validate(params);
  return 0.5 * params.alpha * params.alpha / params.lambda;
}

MotionConstants motion_constants(const ModelParams& params, double J, double E) {
  validate(params);
  if (!std::isfinite(J) || !std::isfinite(E))
    throw std::invalid_argument("J and E must be finite");

  MotionConstants mc;
  mc.C = 2.0 * E - params.alpha * params.alpha / params.lambda;
  mc.qa = -J * J;
  mc.qb = mc.C + params.alpha * params.alpha / params.lambda - params.lambda * J * J;
  mc.qc = mc.C * params.lambda;
  mc.delta = 4.0 * mc.qa * mc.qc - mc.qb * mc.qb;
  mc.omega = std::sqrt(std::abs(mc.qc));

  const auto minimum = v_eff_minimum(params, J);

  // Energies at or below the floor of the effective potential carry no
  // motion.  The J = 0 floor sits at E = 0 and is itself excluded.  The
  // J != 0 floor gets the same tolerance band as the escape threshold:
  // circular-orbit energies round-trip with a few ulps of error and must
  // not land in Forbidden.
  if (minimum) {
    const bool below =
        (J == 0.0) ? (E <= 0.0)
                   : (E < minimum->v_min -
                          kLimitingBandRel * std::max(1.0, std::abs(minimum->v_min)));
    if (below) {
      mc.regime = Regime::Forbidden;
      return mc;
    }
  }

  if (params.lambda < 0.0) {
    // The sphere confines every orbit above the floor.
    mc.regime = minimum ? Regime::Bounded : Regime::Forbidden;
    return mc;
  }

  const double escape = limiting_energy(params);
  if (!minimum) {
    // No turning points at this angular momentum: either the energy tops
    // the escape threshold or the configuration is unreachable.
    mc.regime = (E > escape) ? Regime::Unbounded : Regime::Forbidden;
    return mc;
  }

  if (std::abs(E - escape) <= kLimitingBandRel * std::max(1.0, std::abs(E))) {
    mc.regime = Regime::Limiting;
    mc.omega = 0.0;
    return mc;
  }
  mc.regime = (E < escape) ? Regime::Bounded : Regime::Unbounded;
  return mc;
}

}  // namespace curvosc
