#pragma once

#include <cstddef>
#include <vector>

#include "asymspec/potential.hpp"
#include "asymspec/propagator.hpp"

namespace asymspec {

/// Dirichlet spectral data of -d^2/dx^2 + q on [0,1]:
///   mu_n   = pi^2 n^2 + c + sigma_n   (strictly increasing),
///   kappa_n = log((-1)^n s'(1, mu_n)),
///   alpha_n = (-1)^(n+1) sinh kappa_n  (the asymmetry sample a(mu_n)),
///   norming l_j^2 = integral of s(x, mu_j)^2 = s'(1, mu_j) * sdot(1, mu_j).
struct SpectralTriple {
  double c = 0.0;
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> kappa;
  std::vector<double> alpha;
  std::vector<double> norming;
  std::vector<std::size_t> steps;  // propagation grid used per eigenvalue

  std::size_t n_max() const { return mu.size(); }
};

/// One converged eigenvalue with the fundamental data at the root.
struct EigenNode {
  double mu = 0.0;
  std::size_t steps = 0;
  FundamentalData f;
};

/// First n_max Dirichlet eigenvalues.  Each root of s(1, .) is bracketed by
/// Pruefer-count certification (the count jumps from n-1 to n across it) and
/// refined by Newton using sdot(1, .) until |s(1,mu)| <= 1e-12 max(1,|sdot|).
/// `hints` short-circuits the bracketing with warm starts; certification
/// still runs on every root. Throws ConvergenceError naming the failing index.
std::vector<EigenNode> dirichlet_nodes(const Potential& q, std::size_t n_max,
                                       const std::vector<double>* hints = nullptr);

std::vector<double> dirichlet_eigenvalues(const Potential& q, std::size_t n_max);

/// Norming constants l_j^2 for given eigenvalues.  The value returned comes
/// from the identity l_j^2 = s'(1,mu_j) sdot(1,mu_j); a quadrature of
/// s(x,mu_j)^2 cross-checks it, and a relative mismatch beyond 1e-4 raises
/// InconsistencyError (the usual cause is mu not being eigenvalues of q).
std::vector<double> norming_constants(const Potential& q, const std::vector<double>& mu);

/// Assemble the full spectral data.  Requires n_max >= 4.
SpectralTriple spectral_triple(const Potential& q, std::size_t n_max);

/// Estimate c from mu_n = pi^2 n^2 + c + sigma_n by averaging mu_n - pi^2 n^2
/// over the last half of the sequence (sigma in l^2 makes tail averages
/// converge to c).  Requires at least 8 entries.
double estimate_mean(const std::vector<double>& mu);

/// Smallest convenient delta >= 0 such that q + delta has mu_1 > 0,
/// s(1,0) != 0 and s'(1,0) != 0 (the standing assumptions of the sampling
/// identities).  Returns 0 when q already satisfies them.
double admissible_shift(const Potential& q);

}  // namespace asymspec
