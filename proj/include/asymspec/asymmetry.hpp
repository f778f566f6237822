#pragma once

#include <cstddef>
#include <vector>

#include "asymspec/potential.hpp"
#include "asymspec/propagator.hpp"

namespace asymspec {

/// The spectral asymmetry function a(lambda; q) = (c(1,lambda) - s'(1,lambda))/2.
/// Entire in lambda, real on the real line for real q, and identically zero
/// exactly when q is symmetric about x = 1/2.
Complex asym_eval(const Potential& q, Complex lambda, std::size_t steps = 0);

/// Leading Fourier term of the asymmetry samples:
///   -(1/(4 n pi)) * integral_{-1}^{1} sin(n pi y) q_o((y+1)/2) dy,
/// where q_o is the odd part of q.  a(mu_n) equals this up to O(n^-2).
/// Exact in the fourier basis, exact piecewise integrals otherwise.
double asym_leading(const Potential& q, int n);

/// Dirichlet-to-Neumann matrix N(lambda) = (1/s(1,lambda)) [[-c(1,lambda), 1],
/// [1, -s'(1,lambda)]], mapping [u(0), u(1)] to [u'(0), -u'(1)].
struct DtNMatrix {
  Complex lambda{};
  Complex n00{}, n01{}, n10{}, n11{};
};

/// Throws PoleError (carrying the nearest eigenvalue) when
/// |s(1,lambda)| <= 1e-8 (1+|lambda|)^(-1/2).
DtNMatrix dtn(const Potential& q, Complex lambda, std::size_t steps = 0);

/// Max Frobenius norm of N(lambda;q1) N(lambda;q2) - N(lambda;q2) N(lambda;q1)
/// over the grid; pole-proximal points are skipped and reported.  The maps
/// commute exactly when the two asymmetry functions coincide.
struct CommutatorScan {
  double max_norm = 0.0;
  std::vector<double> skipped;  // grid points too close to either pole set
};

CommutatorScan dtn_commutator_norm(const Potential& q1, const Potential& q2,
                                   const std::vector<double>& lambda_grid);

/// Midpoints between consecutive integer multiples of pi^2, which stay far
/// from generic Dirichlet spectra; the default grid for commutator scans.
std::vector<double> commutator_default_grid(double lo, double hi, std::size_t count);

/// Residual of the odd-projection identity
///   c'(1,lambda;q) a(lambda;q) + integral_0^1 q_o(x) c(x,lambda;q) c(x,lambda;q~) dx = 0.
/// Trajectories come from the propagator grid and the quadrature is the
/// trapezoid rule on that same grid, so the residual is O(h^2).
double property4_residual(const Potential& q, Complex lambda, std::size_t steps = 0);

struct SymmetryReport {
  bool symmetric = false;  // max |a| < 1e-8 over the probe grid
  double max_abs_a = 0.0;
};

/// Samples a on lambda in {0, pi^2, ..., grid_size pi^2} plus 8 negative
/// values.  Requires grid_size >= 16.
SymmetryReport symmetry_test(const Potential& q, std::size_t grid_size);

}  // namespace asymspec
