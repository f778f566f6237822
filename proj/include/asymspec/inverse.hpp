#pragma once

#include <cstddef>
#include <vector>

#include "asymspec/potential.hpp"
#include "asymspec/spectrum.hpp"

namespace asymspec {

/// Data the reconstruction fits: target Dirichlet eigenvalues and asymmetry
/// samples alpha_n = a(mu_n), using the first n_fit of each.
struct ReconstructionTarget {
  std::vector<double> mu;
  std::vector<double> alpha;
  std::size_t n_fit = 0;
};

ReconstructionTarget target_from_triple(const SpectralTriple& t, std::size_t n_fit = 0);

struct ReconstructionReport {
  Potential recovered;
  std::size_t iterations = 0;                // accepted damped steps
  std::vector<double> residual_history;      // weighted l2 norm per accepted iterate
  double final_mu_residual = 0.0;            // max_n |mu_n - mu*_n| / n
  double final_alpha_residual = 0.0;         // max_n n |alpha_n - alpha*_n|
  bool converged = false;
};

/// First-order Fourier inversion of the target: mean from the eigenvalue tail
/// average, cosine coefficients from sigma_n, sine coefficients from alpha_n.
/// The two linear gains are calibrated once against the forward map on basis
/// potentials rather than hardcoded.  n_modes = 0 picks (n_fit - 1) / 2.
Potential initial_guess(const ReconstructionTarget& target, std::size_t n_modes = 0);

/// Recover a truncated-Fourier potential whose first n_fit eigenvalues and
/// asymmetry samples match the target, by a damped (Levenberg-Marquardt)
/// least-squares iteration on (mean, cos_1..cos_m, sin_1..sin_m).  Residuals
/// are weighted (mu by 1/n, alpha by n) to mirror the natural l^2 / l^2_1
/// norms of the data.  Requires n_fit >= 2 n_modes + 1.  Runs to
/// ||r||_inf < tol or max_iter accepted steps; never reports success it did
/// not reach (converged = false on exhaustion).
ReconstructionReport reconstruct(const ReconstructionTarget& target, std::size_t n_modes,
                                 double tol, std::size_t max_iter);

/// Walk inside the isospectral set of p: reconstruct against (mu(p), new_alpha),
/// changing the asymmetry data while keeping p's spectrum.
ReconstructionReport isospectral_partner(const Potential& p, const std::vector<double>& new_alpha,
                                         std::size_t n_modes, double tol = 1e-8,
                                         std::size_t max_iter = 200);

struct RoundtripReport {
  double l2_error = 0.0;
  bool passed = false;  // l2_error < 1e-4
  ReconstructionReport reconstruction;
};

/// Forward map, then reconstruction, then the L^2 distance back to q.
/// Requires q in the fourier basis with at most n_modes modes.
RoundtripReport verify_roundtrip(const Potential& q, std::size_t n_fit, std::size_t n_modes);

}  // namespace asymspec
