#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "asymspec/potential.hpp"
#include "asymspec/propagator.hpp"

namespace asymspec {

/// e(omega) = s'(1, omega^2) - i omega s(1, omega^2).  A de Branges structure
/// function: |e| -> 1 on the real axis and |e(omega)| > |e(conj omega)| in the
/// upper half plane once mu_1 > 0.
Complex e_function(const Potential& q, Complex omega, std::size_t steps = 0);

/// Reproducing kernel of the sampling space,
///   1_alpha(beta) = (conj(alpha) s(1,conj(alpha)^2) s'(1,beta^2)
///                    - beta s'(1,conj(alpha)^2) s(1,beta^2)) / (conj(alpha) - beta),
/// an entire function of beta; the apparent singularity at beta = conj(alpha)
/// is removable and handled by a first-order expansion in the lambda
/// derivatives.  For q = 0 this reduces to sinc(conj(alpha) - beta).
Complex kernel_one(const Potential& q, Complex alpha, Complex beta, std::size_t steps = 0);

/// Eigenvalues, norming constants and the lambda = 0 boundary data of q,
/// precomputed once so the sampling quadratures can be evaluated repeatedly.
/// Requires mu_1 > 0, s(1,0) != 0 and s'(1,0) != 0; throws PreconditionError
/// telling the caller to pre-shift the potential otherwise.
struct DirichletData {
  std::vector<double> mu;       // j = 1..J
  std::vector<double> norming;  // l_j^2
  std::vector<double> sp;       // s'(1, mu_j)
  double s10 = 0.0;             // s(1, 0)
  double ds10 = 0.0;            // s'(1, 0)

  static DirichletData compute(const Potential& q, std::size_t J);
};

/// Samples of a function on {0} and {±sqrt(mu_j)}.
struct SymmetricSamples {
  Complex at_zero{};
  std::vector<Complex> plus, minus;  // f(+sqrt(mu_j)), f(-sqrt(mu_j))
};

struct AFormResult {
  Complex value{};
  double tail_bound = 0.0;  // estimated magnitude of the truncated j > J part
};

/// Truncated discrete inner product
///   A[f,g] = f(0) conj(g(0)) / (s'(1,0) s(1,0))
///          + sum_j (f(-r_j) conj(g(-r_j)) + f(r_j) conj(g(r_j))) / (2 mu_j l_j^2),
/// r_j = sqrt(mu_j).  Terms decay like 1/j^2, so the reported tail bound is
/// O(1/J).  On kernel pairs it reproduces kernel_one.
AFormResult a_form(const DirichletData& dd, const SymmetricSamples& f, const SymmetricSamples& g);
AFormResult a_form(const Potential& q, const SymmetricSamples& f, const SymmetricSamples& g);

/// Samples of the reproducing kernel 1_alpha on {0} u {±sqrt(mu_j)}.
SymmetricSamples kernel_samples(const Potential& q, Complex alpha, const DirichletData& dd,
                                std::size_t steps = 0);

/// Residual of the two-point resolvent-trace identity
///   sum_j s'(1,mu_j)^2 / l_j^2 [1/(mu_j - w1^2) - 1/(mu_j - w2^2)]
///     + s'(1,w1^2)/s(1,w1^2) - s'(1,w2^2)/s(1,w2^2),
/// truncated at j <= J.  Terms decay like 1/j^2; the residual is O(1/J).
/// Only this difference form converges absolutely, so only it is exposed.
double resolvent_identity_residual(const Potential& q, double omega1, double omega2,
                                   std::size_t J);
double resolvent_identity_residual(const DirichletData& dd, const Potential& q, double omega1,
                                   double omega2);

/// An entire function known through its values on a Dirichlet spectrum.
struct SampledEntireFunction {
  std::vector<double> nodes;    // mu_j, strictly increasing
  std::vector<double> weights;  // sdot(1, mu_j) of the node-generating potential
  std::vector<double> samples;  // phi(mu_j)
};

/// nodes/weights from the spectrum of `node_potential`, samples from the
/// asymmetry function of `sample_potential`.
SampledEntireFunction sample_asymmetry(const Potential& node_potential,
                                       const Potential& sample_potential, std::size_t count);

struct InterpolationResult {
  double value = 0.0;
  double tail_bound = 0.0;  // Cauchy-Schwarz estimate of the dropped j > J part
};

/// Nodal interpolation
///   phi(lambda) = -sum_j phi(mu_j) s(1,lambda) / (sdot(1,mu_j) (mu_j - lambda)),
/// truncated at j <= J (0 = all provided samples).  `s1_of` supplies
/// s(1,lambda) of the node-generating potential.  At a node (within 1e-8) the
/// stored sample is returned.  Recovers phi exactly for (j phi(mu_j)) in l^2.
InterpolationResult interpolate(const SampledEntireFunction& sf,
                                const std::function<double(double)>& s1_of, double lambda,
                                std::size_t J = 0);
InterpolationResult interpolate(const SampledEntireFunction& sf, const Potential& node_potential,
                                double lambda, std::size_t J = 0);

/// Change-of-nodes kernel K(n,j) for resampling values at pi^2 n^2 onto a
/// perturbed spectral sequence pi^2 n^2 + c_n.  Closed form:
///   K(n,j) = (-1)^(j+1) (2 n j / (j^2 - n^2 - c_n/pi^2)) sinc(pi sqrt(n^2 + c_n/pi^2)),
/// with K = n/j at j^2 = n^2 + c_n/pi^2 and K = (-1)^(j+1) 2n/j when
/// n^2 + c_n/pi^2 = 0; the square root argument lies in (-pi, pi].
double k_kernel(int n, int j, double c_n);

/// The same kernel from its defining infinite product, truncated after
/// `factors` terms with a multiplicative tail estimate.  Slow and mildly
/// less accurate; kept as the independent cross-check of k_kernel.
double k_kernel_product_oracle(int n, int j, double c_n, std::size_t factors);

struct ResampleResult {
  std::vector<double> alpha;  // a(pi^2 n^2 + c + sigma_n)
  std::vector<double> tail;   // truncation estimate per entry
};

/// Resampling map: alpha_n = (1/n) sum_j j a_j K(n,j) with c_n = c + sigma_n.
/// `a_samples` are values at the unperturbed nodes pi^2 j^2.
ResampleResult resample(const std::vector<double>& a_samples, double c,
                        const std::vector<double>& sigma);

struct KBoundReport {
  double diag_max = 0.0;        // max_n |K(n,n)|
  double offdiag_sq_sum = 0.0;  // sum over n != j <= N of K(n,j)^2
};

/// Boundedness data for the resampling kernel on a finite window.
KBoundReport k_bound_check(const std::vector<double>& c_seq, std::size_t N);

}  // namespace asymspec
