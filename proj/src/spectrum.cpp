#include "asymspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "asymspec/errors.hpp"

namespace asymspec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

// Shared frozen-grid cache so one spectral sweep reuses cell averages.
class FrozenCache {
public:
  explicit FrozenCache(const Potential& q) : q_(q) {}
  const FrozenPotential& at(std::size_t steps) {
    auto it = cache_.find(steps);
    if (it == cache_.end()) it = cache_.emplace(steps, FrozenPotential(q_, steps)).first;
    return it->second;
  }

private:
  const Potential& q_;
  std::map<std::size_t, FrozenPotential> cache_;
};

struct NewtonResult {
  bool ok = false;
  double mu = 0.0;
  FundamentalData f;
};

double s_value(const FundamentalData& f) { return f.s1.real(); }
double s_deriv(const FundamentalData& f) { return f.s1_dl.real(); }

bool converged_root(const FundamentalData& f) {
  return std::abs(s_value(f)) <= 1e-12 * std::max(1.0, std::abs(s_deriv(f)));
}

NewtonResult newton_root(const FrozenPotential& fp, double start, int max_iter = 24) {
  NewtonResult r;
  double x = start;
  for (int it = 0; it < max_iter; ++it) {
    const FundamentalData f = fundamental(fp, x);
    if (converged_root(f)) {
      r.ok = true;
      r.mu = x;
      r.f = f;
      return r;
    }
    const double d = s_deriv(f);
    if (d == 0.0 || !std::isfinite(d)) return r;
    const double step = s_value(f) / d;
    if (!std::isfinite(step)) return r;
    x -= step;
  }
  return r;
}

bool certified(const FrozenPotential& fp, double mu, std::size_t n) {
  const double eps = 1e-6 * std::max(1.0, std::abs(mu));
  return prufer_count(fp, mu - eps) == int(n) - 1 && prufer_count(fp, mu + eps) == int(n);
}

// Certified bracket + safeguarded Newton fallback for index n.
NewtonResult bracketed_root(const FrozenPotential& fp, double guess, std::size_t n) {
  NewtonResult r;
  double lo = guess - pi2, hi = guess + pi2;
  int expand = 0;
  while (prufer_count(fp, lo) > int(n) - 1) {
    lo -= pi2;
    if (++expand > 400) return r;
  }
  while (prufer_count(fp, hi) < int(n)) {
    hi += pi2;
    if (++expand > 400) return r;
  }
  // bisect on the eigenvalue count until the bracket pins index n tightly
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (prufer_count(fp, mid) >= int(n))
      hi = mid;
    else
      lo = mid;
    if (hi - lo < 0.5) break;
  }
  // safeguarded Newton inside [lo, hi]
  double x = 0.5 * (lo + hi);
  double flo = s_value(fundamental(fp, lo));
  for (int it = 0; it < 80; ++it) {
    const FundamentalData f = fundamental(fp, x);
    if (converged_root(f)) {
      r.ok = true;
      r.mu = x;
      r.f = f;
      return r;
    }
    const double fx = s_value(f), dx = s_deriv(f);
    double next = (dx != 0.0) ? x - fx / dx : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection step
    if ((flo < 0.0) == (fx < 0.0))
      lo = x, flo = fx;
    else
      hi = x;
    x = next;
  }
  return r;
}

double estimate_mean_any(const std::vector<double>& mu) {
  const std::size_t n = mu.size();
  const std::size_t from = n / 2;  // last half
  double s = 0.0;
  for (std::size_t i = from; i < n; ++i) s += mu[i] - pi2 * double(i + 1) * double(i + 1);
  return s / double(n - from);
}

}  // namespace

std::vector<EigenNode> dirichlet_nodes(const Potential& q, std::size_t n_max,
                                       const std::vector<double>* hints) {
  if (n_max < 1) throw ArgumentError("dirichlet_nodes: n_max must be >= 1");
  FrozenCache cache(q);
  const double qint = q.integral();
  std::vector<EigenNode> nodes;
  nodes.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double guess = (hints && hints->size() >= n) ? (*hints)[n - 1]
                                                       : pi2 * double(n) * double(n) + qint;
    std::size_t steps = default_steps(std::abs(guess));
    const FrozenPotential* fp = &cache.at(steps);

    NewtonResult r = newton_root(*fp, guess);
    if (!r.ok || !certified(*fp, r.mu, n)) r = bracketed_root(*fp, guess, n);
    if (!r.ok || !certified(*fp, r.mu, n))
      throw ConvergenceError("dirichlet_eigenvalues: no certified root for index " +
                             std::to_string(n));

    // re-polish on the grid the converged eigenvalue itself selects, so that
    // later evaluations at mu_n see the identical discretization
    const std::size_t steps2 = default_steps(std::abs(r.mu));
    if (steps2 != steps) {
      const FrozenPotential* fp2 = &cache.at(steps2);
      NewtonResult r2 = newton_root(*fp2, r.mu);
      if (!r2.ok || !certified(*fp2, r2.mu, n)) r2 = bracketed_root(*fp2, r.mu, n);
      if (!r2.ok)
        throw ConvergenceError("dirichlet_eigenvalues: re-polish failed for index " +
                               std::to_string(n));
      r = r2;
      steps = steps2;
    }
    nodes.push_back({r.mu, steps, r.f});
  }
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i].mu > nodes[i - 1].mu))
      throw InconsistencyError("dirichlet_eigenvalues: sequence not strictly increasing");
  return nodes;
}

std::vector<double> dirichlet_eigenvalues(const Potential& q, std::size_t n_max) {
  std::vector<double> mu;
  for (const EigenNode& e : dirichlet_nodes(q, n_max)) mu.push_back(e.mu);
  return mu;
}

std::vector<double> norming_constants(const Potential& q, const std::vector<double>& mu) {
  FrozenCache cache(q);
  std::vector<double> out;
  out.reserve(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const FrozenPotential& fp = cache.at(default_steps(std::abs(mu[j])));
    const FundamentalData f = fundamental(fp, mu[j]);
    const double identity = f.ds1.real() * f.s1_dl.real();
    const double quad = s_squared_integral(fp, mu[j]);
    if (!(identity > 0.0))
      throw InconsistencyError("norming_constants: nonpositive value at index " +
                               std::to_string(j + 1));
    if (std::abs(identity - quad) > 1e-4 * std::abs(identity))
      throw InconsistencyError(
          "norming_constants: identity and quadrature routes disagree at index " +
          std::to_string(j + 1) + " (is mu a Dirichlet eigenvalue of q?)");
    out.push_back(identity);
  }
  return out;
}

SpectralTriple spectral_triple(const Potential& q, std::size_t n_max) {
  if (n_max < 4) throw ArgumentError("spectral_triple: n_max must be >= 4");
  const std::vector<EigenNode> nodes = dirichlet_nodes(q, n_max);

  SpectralTriple t;
  for (const EigenNode& e : nodes) t.mu.push_back(e.mu);
  t.c = estimate_mean_any(t.mu);
  for (std::size_t i = 0; i < n_max; ++i) {
    const std::size_t n = i + 1;
    t.sigma.push_back(t.mu[i] - pi2 * double(n) * double(n) - t.c);
    const FundamentalData& f = nodes[i].f;
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    const double sp = sgn * f.ds1.real();  // (-1)^n s'(1, mu_n)
    if (!(sp > 0.0))
      throw InconsistencyError("spectral_triple: (-1)^n s'(1,mu_n) <= 0 at index " +
                               std::to_string(n));
    const double kappa = std::log(sp);
    const double alpha = -sgn * std::sinh(kappa);  // (-1)^(n+1) sinh kappa_n
    // alpha must agree with the direct asymmetry sample
    const double a = 0.5 * (f.c1.real() - f.ds1.real());
    if (std::abs(a - alpha) > 1e-8)
      throw InconsistencyError("spectral_triple: alpha_n != a(mu_n) at index " +
                               std::to_string(n));
    t.kappa.push_back(kappa);
    t.alpha.push_back(alpha);
    const double lj = f.ds1.real() * f.s1_dl.real();
    if (!(lj > 0.0))
      throw InconsistencyError("spectral_triple: nonpositive norming constant at index " +
                               std::to_string(n));
    t.norming.push_back(lj);
    t.steps.push_back(nodes[i].steps);
  }
  return t;
}

double estimate_mean(const std::vector<double>& mu) {
  if (mu.size() < 8) throw ArgumentError("estimate_mean: need at least 8 eigenvalues");
  return estimate_mean_any(mu);
}

double admissible_shift(const Potential& q) {
  const double mu1 = dirichlet_nodes(q, 1)[0].mu;
  double delta = (mu1 > 1e-8) ? 0.0 : -mu1 + 0.5 * pi2;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const FundamentalData f = fundamental(q.shift(delta), 0.0);
    if (mu1 + delta > 1e-8 && std::abs(f.s1.real()) > 1e-8 && std::abs(f.ds1.real()) > 1e-8)
      return delta;
    delta += 0.37;
  }
  throw ConvergenceError("admissible_shift: no admissible shift found");
}

}  // namespace asymspec
