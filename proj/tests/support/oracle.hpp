#pragma once

// Test-side oracles, kept independent of the library's propagation path:
// a dense-output adaptive Dormand-Prince integrator for the first-order
// system behind -u'' + q u = lambda u, a sign-scan + bisection eigenvalue
// finder built on it, and adaptive Simpson quadrature.

#include <complex>
#include <functional>
#include <vector>

#include "asymspec/potential.hpp"

namespace oracle {

using Complex = std::complex<double>;

struct Fundamental {
  Complex c1, dc1, s1, ds1;
};

/// Integrates c and s from 0 to x_end (default 1) with adaptive RK5(4),
/// evaluating q pointwise; tolerances ~1e-12.
Fundamental fundamental(const asymspec::Potential& q, Complex lambda, double x_end = 1.0);

/// s(1, lambda) only, real lambda.
double s_at_one(const asymspec::Potential& q, double lambda);

/// First n_max Dirichlet eigenvalues by fine sign-change scanning of
/// s(1, .) plus bisection to ~1e-12 relative.
std::vector<double> eigenvalues_by_scan(const asymspec::Potential& q, std::size_t n_max);

/// Adaptive Simpson quadrature of f over [a,b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace oracle
