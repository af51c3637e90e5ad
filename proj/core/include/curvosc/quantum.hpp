#pragma once

// Bound states of the quantum oscillator on the curved surface: exact
// energies E_n = (n+1)(-lambda*n/2 + beta) with n = 2*n_r + |m|, radial
// wavefunctions built from Jacobi polynomials, normalization under the
// curved measure (1+lambda*r^2)^(-1/2) r dr, and a residual check against
// the radial Schrodinger equation.  Works in units with hbar = 1 and the
// potential coupling alpha^2 = beta*(beta+lambda).

#include <complex>
#include <optional>
#include <vector>

#include "curvosc/model.hpp"

namespace curvosc {

struct QuantumParams {
  double lambda = 0.0;  // curvature parameter, nonzero
  double beta = 0.0;    // potential strength, > 0
};

// Throws std::invalid_argument on nonzero-lambda / positive-beta violations.
void validate(const QuantumParams& qp);

// Largest admissible principal number for lambda > 0: the unique integer in
// [beta/lambda - 3/2, beta/lambda - 1/2), i.e. an exact integer at the upper
// edge is excluded.  May be negative (no bound states at all).  For
// lambda < 0 the ladder is infinite and nullopt is returned.
std::optional<int> max_principal(const QuantumParams& qp);

// Whether (n_r, m) labels a normalizable state.
bool admissible(const QuantumParams& qp, int n_r, int m);

// E_n for principal number n >= 0 (does not check admissibility).
double energy_level(const QuantumParams& qp, int n);

struct QuantumLevelState {
  int n_r = 0;
  int m = 0;
};

struct EnergyLevel {
  int n = 0;
  double energy = 0.0;
  int degeneracy = 0;                     // always n + 1
  std::vector<QuantumLevelState> states;  // all (n_r, m) with 2 n_r + |m| = n
};

// First levels of the spectrum, n = 0, 1, ...  For lambda < 0 exactly
// max_levels entries; for lambda > 0 the list stops at max_principal and
// may be shorter or empty.
std::vector<EnergyLevel> energy_levels(const QuantumParams& qp, int max_levels);

struct RadialEigenstate {
  int n_r = 0;
  int m = 0;
  int n = 0;          // 2 n_r + |m|
  double a = 0.0;     // Jacobi parameter |m|
  double b = 0.0;     // Jacobi parameter -beta/lambda - 1/2
  double energy = 0.0;
  double norm = 1.0;  // multiplier making the radial factor unit-norm
};

// Unnormalized radial factor R(r) = (1+lambda r^2)^(-beta/(2 lambda)) r^|m|
// P_{n_r}^(a,b)(1 + 2 lambda r^2) and its first two derivatives in r,
// differentiated analytically.  Positive as r -> 0+.  Construction throws
// std::invalid_argument for inadmissible (n_r, m).
class RadialWavefunction {
 public:
  RadialWavefunction(const QuantumParams& qp, int n_r, int m);

  double operator()(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  QuantumParams qp_;
  int n_r_;
  double a_, b_, exponent_;  // exponent_ = -beta/(2 lambda)
};

// Eigenstate with the normalization constant computed by quadrature.
RadialEigenstate make_eigenstate(const QuantumParams& qp, int n_r, int m);

// <state1 | state2> over the radial measure, using the normalized radial
// factors.  The angular parts are orthogonal unless m matches, so equal m
// is required (std::invalid_argument).  Throws AccuracyError when the
// quadrature cannot certify the 1e-10 target.
double inner_product(const QuantumParams& qp, const RadialEigenstate& state1,
                     const RadialEigenstate& state2);

// Residual of r^2(1+lambda r^2) R'' + r(1+2 lambda r^2) R'
// + (-beta(beta+lambda) r^4/(1+lambda r^2) + 2 E r^2 - m^2) R = 0
// for the normalized R, scaled by max(1, |R| r^2).
double ode_residual(const QuantumParams& qp, const RadialEigenstate& state, double r);

// Psi(r, phi) = norm * R(r) * e^{i m phi} / sqrt(2 pi).
struct FullWavefunction {
  QuantumParams qp;
  RadialEigenstate state;

  std::complex<double> operator()(double r, double phi) const;
};

FullWavefunction full_wavefunction(const QuantumParams& qp, const RadialEigenstate& state);

}  // namespace curvosc
