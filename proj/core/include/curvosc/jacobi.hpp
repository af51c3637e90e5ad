#pragma once

// Jacobi polynomials P_n^(a,b) for real parameters, including the negative
// non-integer b needed by the bound-state radial factors.  The three-term
// recurrence breaks down when a + b is a negative integer <= -2 (vanishing
// leading recurrence coefficient); those cases fall back to the explicit
// finite sum, which stays well conditioned at the small degrees used here.

namespace curvosc {

double jacobi_eval(int n, double a, double b, double t);

// d/dt P_n^(a,b)(t) and d^2/dt^2, via the parameter-shift identity.
double jacobi_derivative(int n, double a, double b, double t);
double jacobi_second_derivative(int n, double a, double b, double t);

}  // namespace curvosc
