#include "asymspec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "asymspec/asymmetry.hpp"
#include "asymspec/errors.hpp"
#include "asymspec/spectrum.hpp"

namespace asymspec {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

// sin(pi r) evaluated through the nearest integer so that integer r gives an
// exact zero and near-integer r keeps full precision
double sin_pi(double r) {
  const double m = std::nearbyint(r);
  const double s = std::sin(pi * (r - m));
  return (std::fmod(std::abs(m), 2.0) == 0.0) ? s : -s;
}
}  // namespace

Complex e_function(const Potential& q, Complex omega, std::size_t steps) {
  const FundamentalData f = fundamental(q, omega * omega, steps);
  return f.ds1 - Complex(0.0, 1.0) * omega * f.s1;
}

Complex kernel_one(const Potential& q, Complex alpha, Complex beta, std::size_t steps) {
  const Complex ac = std::conj(alpha);
  const FundamentalData fa = fundamental(q, ac * ac, steps);
  if (std::abs(ac - beta) >= 1e-6 * (1.0 + std::abs(alpha))) {
    const FundamentalData fb = fundamental(q, beta * beta, steps);
    return (ac * fa.s1 * fb.ds1 - beta * fa.ds1 * fb.s1) / (ac - beta);
  }
  // removable singularity at beta = conj(alpha): difference quotients of
  // s and s' in lambda, taken at the midpoint, to first order
  const Complex m = 0.5 * (ac * ac + beta * beta);
  const FundamentalData fm = fundamental(q, m, steps);
  return fa.s1 * fa.ds1 + (ac + beta) * (beta * fa.ds1 * fm.s1_dl - ac * fa.s1 * fm.ds1_dl);
}

DirichletData DirichletData::compute(const Potential& q, std::size_t J) {
  if (J < 1) throw ArgumentError("DirichletData: J must be >= 1");
  const std::vector<EigenNode> nodes = dirichlet_nodes(q, J);
  if (!(nodes[0].mu > 0.0))
    throw PreconditionError(
        "sampling identities need mu_1 > 0; pre-shift the potential by admissible_shift(q)");
  const FundamentalData f0 = fundamental(q, 0.0);
  if (std::abs(f0.s1.real()) <= 1e-8 || std::abs(f0.ds1.real()) <= 1e-8)
    throw PreconditionError(
        "sampling identities need s(1,0) != 0 and s'(1,0) != 0; pre-shift the potential by "
        "admissible_shift(q)");
  DirichletData dd;
  dd.s10 = f0.s1.real();
  dd.ds10 = f0.ds1.real();
  for (const EigenNode& e : nodes) {
    dd.mu.push_back(e.mu);
    dd.sp.push_back(e.f.ds1.real());
    const double lj = e.f.ds1.real() * e.f.s1_dl.real();
    if (!(lj > 0.0)) throw InconsistencyError("DirichletData: nonpositive norming constant");
    dd.norming.push_back(lj);
  }
  return dd;
}

AFormResult a_form(const DirichletData& dd, const SymmetricSamples& f,
                   const SymmetricSamples& g) {
  const std::size_t J = std::min(
      {dd.mu.size(), f.plus.size(), f.minus.size(), g.plus.size(), g.minus.size()});
  AFormResult r;
  r.value = f.at_zero * std::conj(g.at_zero) / (dd.ds10 * dd.s10);
  std::vector<double> term_abs(J);
  for (std::size_t j = 0; j < J; ++j) {
    const Complex t = (f.minus[j] * std::conj(g.minus[j]) + f.plus[j] * std::conj(g.plus[j])) /
                      (2.0 * dd.mu[j] * dd.norming[j]);
    r.value += t;
    term_abs[j] = std::abs(t);
  }
  // terms decay like 1/j^2; estimate the constant from the last quarter
  double chat = 0.0;
  for (std::size_t j = (3 * J) / 4; j < J; ++j)
    chat = std::max(chat, double(j + 1) * double(j + 1) * term_abs[j]);
  r.tail_bound = 2.0 * chat / double(std::max<std::size_t>(J, 1));
  return r;
}

AFormResult a_form(const Potential& q, const SymmetricSamples& f, const SymmetricSamples& g) {
  const std::size_t J = std::min(f.plus.size(), g.plus.size());
  return a_form(DirichletData::compute(q, J), f, g);
}

SymmetricSamples kernel_samples(const Potential& q, Complex alpha, const DirichletData& dd,
                                std::size_t steps) {
  SymmetricSamples out;
  out.at_zero = kernel_one(q, alpha, 0.0, steps);
  const Complex ac = std::conj(alpha);
  const FundamentalData fa = fundamental(q, ac * ac, steps);
  out.plus.resize(dd.mu.size());
  out.minus.resize(dd.mu.size());
  for (std::size_t j = 0; j < dd.mu.size(); ++j) {
    const double rj = std::sqrt(dd.mu[j]);
    for (int sign : {+1, -1}) {
      const Complex beta = double(sign) * rj;
      Complex v;
      if (std::abs(ac - beta) >= 1e-6 * (1.0 + std::abs(alpha))) {
        // at a node s(1, mu_j) vanishes and the kernel collapses to one term
        v = ac * fa.s1 * dd.sp[j] / (ac - beta);
      } else {
        v = kernel_one(q, alpha, beta, steps);
      }
      (sign > 0 ? out.plus[j] : out.minus[j]) = v;
    }
  }
  return out;
}

double resolvent_identity_residual(const DirichletData& dd, const Potential& q, double omega1,
                                   double omega2) {
  const double l1 = omega1 * omega1, l2 = omega2 * omega2;
  const FundamentalData f1 = fundamental(q, l1);
  const FundamentalData f2 = fundamental(q, l2);
  for (const FundamentalData* f : {&f1, &f2}) {
    const double guard = 1e-8 / std::sqrt(1.0 + std::abs(f->lambda));
    if (std::abs(f->s1) <= guard)
      throw PoleError("resolvent_identity_residual: omega^2 at a Dirichlet eigenvalue",
                      f->lambda.real());
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < dd.mu.size(); ++j) {
    const double w = dd.sp[j] * dd.sp[j] / dd.norming[j];
    sum += w * (1.0 / (dd.mu[j] - l1) - 1.0 / (dd.mu[j] - l2));
  }
  const double boundary =
      f1.ds1.real() / f1.s1.real() - f2.ds1.real() / f2.s1.real();
  return std::abs(sum + boundary);
}

double resolvent_identity_residual(const Potential& q, double omega1, double omega2,
                                   std::size_t J) {
  return resolvent_identity_residual(DirichletData::compute(q, J), q, omega1, omega2);
}

SampledEntireFunction sample_asymmetry(const Potential& node_potential,
                                       const Potential& sample_potential, std::size_t count) {
  SampledEntireFunction sf;
  for (const EigenNode& e : dirichlet_nodes(node_potential, count)) {
    sf.nodes.push_back(e.mu);
    sf.weights.push_back(e.f.s1_dl.real());
    sf.samples.push_back(asym_eval(sample_potential, e.mu).real());
  }
  return sf;
}

InterpolationResult interpolate(const SampledEntireFunction& sf,
                                const std::function<double(double)>& s1_of, double lambda,
                                std::size_t J) {
  const std::size_t len = sf.nodes.size();
  if (len == 0 || sf.weights.size() != len || sf.samples.size() != len)
    throw ArgumentError("interpolate: inconsistent sampled function");
  if (J == 0 || J > len) J = len;
  for (std::size_t j = 0; j < len; ++j)
    if (std::abs(lambda - sf.nodes[j]) <= 1e-8) return {sf.samples[j], 0.0};

  const double s1 = s1_of(lambda);
  double acc = 0.0;
  for (std::size_t j = 0; j < J; ++j)
    acc += sf.samples[j] / (sf.weights[j] * (sf.nodes[j] - lambda));
  InterpolationResult r;
  r.value = -s1 * acc;

  // Cauchy-Schwarz bound on the dropped part: |sum phi_j theta_j| with
  // theta_j = s(1,lambda)/(sdot_j (mu_j - lambda)); known coefficients for
  // stored nodes, the l^2_1 model beyond them
  double a_known = 0.0, b_known = 0.0;
  for (std::size_t j = J; j < len; ++j) {
    const double n = double(j + 1);
    a_known += n * n * sf.samples[j] * sf.samples[j];
    const double theta = s1 / (sf.weights[j] * (sf.nodes[j] - lambda));
    b_known += theta * theta / (n * n);
  }
  double dmax = 0.0;
  for (std::size_t j = (3 * len) / 4; j < len; ++j) {
    const double n = double(j + 1);
    dmax = std::max(dmax, n * n * n * n * sf.samples[j] * sf.samples[j]);
  }
  const double a_model = dmax / double(len);
  const double b_model = 4.0 * s1 * s1 / double(len);
  r.tail_bound = 2.0 * std::sqrt((a_known + a_model) * (b_known + b_model));
  return r;
}

InterpolationResult interpolate(const SampledEntireFunction& sf, const Potential& node_potential,
                                double lambda, std::size_t J) {
  return interpolate(
      sf, [&](double lam) { return fundamental(node_potential, lam).s1.real(); }, lambda, J);
}

double k_kernel(int n, int j, double c_n) {
  if (n < 1 || j < 1) throw ArgumentError("k_kernel: indices must be >= 1");
  const double z = double(n) * double(n) + c_n / pi2;
  const double denom = double(j) * double(j) - z;
  if (std::abs(denom) < 1e-8) {
    // removable: sinc vanishes to first order where the denominator does
    const double r = std::sqrt(z);
    return 2.0 * double(n) * double(j) / ((double(j) + r) * r);
  }
  const double sgn = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^(j+1)
  if (z == 0.0) return sgn * 2.0 * double(n) / double(j);
  double sincval;
  if (z < 0.0) {
    const double y = pi * std::sqrt(-z);  // principal root: sinc(i y) = sinh(y)/y
    sincval = std::sinh(y) / y;
  } else {
    const double r = std::sqrt(z);
    sincval = sin_pi(r) / (pi * r);
  }
  return sgn * 2.0 * double(n) * double(j) / denom * sincval;
}

double k_kernel_product_oracle(int n, int j, double c_n, std::size_t factors) {
  if (n < 1 || j < 1) throw ArgumentError("k_kernel_product_oracle: indices must be >= 1");
  if (factors < 1000) throw ArgumentError("k_kernel_product_oracle: needs >= 1000 factors");
  const double z = double(n) * double(n) + c_n / pi2;
  double prod = double(n) / double(j);
  for (std::size_t k = 1; k <= factors; ++k) {
    if (k == std::size_t(j)) continue;
    const double kk = double(k) * double(k);
    prod *= (kk - z) / (kk - double(j) * double(j));
  }
  // remaining factors are 1 + (j^2 - z)/(k^2 - j^2); sum the exponents with
  // the exact telescoping of 1/(k^2 - j^2)
  double tail_sum = 0.0;
  for (long m = long(factors) + 1 - j; m <= long(factors) + j; ++m)
    tail_sum += 1.0 / double(m);
  tail_sum /= 2.0 * double(j);
  return prod * std::exp((double(j) * double(j) - z) * tail_sum);
}

ResampleResult resample(const std::vector<double>& a_samples, double c,
                        const std::vector<double>& sigma) {
  const std::size_t ja = a_samples.size();
  ResampleResult out;
  out.alpha.resize(sigma.size());
  out.tail.resize(sigma.size());

  double dmax = 0.0;  // l^2_1 tail model for the samples, as in interpolate
  for (std::size_t j = (3 * ja) / 4; j < ja; ++j) {
    const double nn = double(j + 1);
    dmax = std::max(dmax, nn * nn * nn * nn * a_samples[j] * a_samples[j]);
  }

  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const int n = int(i) + 1;
    const double cn = c + sigma[i];
    double acc = 0.0;
    for (std::size_t j = 1; j <= ja; ++j)
      acc += double(j) * a_samples[j - 1] * k_kernel(n, int(j), cn);
    out.alpha[i] = acc / double(n);

    double ksq = 0.0;
    for (std::size_t j = ja + 1; j <= 2 * ja + std::size_t(n); ++j) {
      const double k = k_kernel(n, int(j), cn);
      ksq += k * k;
    }
    out.tail[i] = std::sqrt(std::max(dmax, 0.0) / double(std::max<std::size_t>(ja, 1))) *
                  std::sqrt(2.0 * ksq) / double(n);
  }
  return out;
}

KBoundReport k_bound_check(const std::vector<double>& c_seq, std::size_t N) {
  if (c_seq.size() < N) throw ArgumentError("k_bound_check: c_seq shorter than N");
  KBoundReport rep;
  for (std::size_t n = 1; n <= N; ++n) {
    rep.diag_max = std::max(rep.diag_max, std::abs(k_kernel(int(n), int(n), c_seq[n - 1])));
    for (std::size_t j = 1; j <= N; ++j) {
      if (j == n) continue;
      const double k = k_kernel(int(n), int(j), c_seq[n - 1]);
      rep.offdiag_sq_sum += k * k;
    }
  }
  return rep;
}

}  // namespace asymspec
