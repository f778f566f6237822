#include "asymspec/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "asymspec/errors.hpp"

namespace asymspec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

double tail_mean(const std::vector<double>& mu) {
  const std::size_t n = mu.size();
  const std::size_t from = n / 2;
  double s = 0.0;
  for (std::size_t i = from; i < n; ++i) s += mu[i] - pi2 * double(i + 1) * double(i + 1);
  return s / double(n - from);
}

// Linear gains sigma_n / cos_n and alpha_1 / sin_1 of the forward map at the
// origin, measured once on single-mode potentials.
struct Calibration {
  double even_gain;  // sigma_n = even_gain * cos_n + O(eps^2)   (~ -1/2)
  double odd_gain;   // alpha_n = odd_gain * (-1)^(n+1) sin_n / n (~ 1/(4 pi))
};

const Calibration& calibration() {
  static const Calibration cal = [] {
    const double eps = 1e-3;
    const SpectralTriple te = spectral_triple(Potential::fourier(0.0, {eps}, {}), 8);
    const SpectralTriple to = spectral_triple(Potential::fourier(0.0, {}, {eps}), 8);
    return Calibration{te.sigma[0] / eps, to.alpha[0] / eps};
  }();
  return cal;
}

struct Params {
  double mean = 0.0;
  std::vector<double> cosc, sinc;

  Potential potential() const { return Potential::fourier(mean, cosc, sinc); }
  std::size_t size() const { return 1 + cosc.size() + sinc.size(); }
  double get(std::size_t i) const {
    if (i == 0) return mean;
    if (i <= cosc.size()) return cosc[i - 1];
    return sinc[i - 1 - cosc.size()];
  }
  void add(std::size_t i, double d) {
    if (i == 0)
      mean += d;
    else if (i <= cosc.size())
      cosc[i - 1] += d;
    else
      sinc[i - 1 - cosc.size()] += d;
  }
};

// weighted residual ((mu_n - mu*_n)/n , n (alpha_n - alpha*_n))
std::vector<double> residual(const Params& p, const ReconstructionTarget& t,
                             const std::vector<double>& hints) {
  const Potential q = p.potential();
  const std::vector<EigenNode> nodes =
      dirichlet_nodes(q, t.n_fit, hints.empty() ? nullptr : &hints);
  std::vector<double> r(2 * t.n_fit);
  for (std::size_t i = 0; i < t.n_fit; ++i) {
    const double n = double(i + 1);
    r[i] = (nodes[i].mu - t.mu[i]) / n;
    const double sgn = ((i + 1) % 2 == 0) ? 1.0 : -1.0;
    const double sp = sgn * nodes[i].f.ds1.real();
    if (!(sp > 0.0))
      throw InconsistencyError("reconstruct: spectral data breakdown at index " +
                               std::to_string(i + 1));
    const double alpha = -sgn * std::sinh(std::log(sp));
    r[t.n_fit + i] = n * (alpha - t.alpha[i]);
  }
  return r;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

// Cholesky solve of (A + lam diag(A)) d = -g for small dense symmetric A.
bool damped_solve(std::vector<double> a, std::size_t n, double lam, const std::vector<double>& g,
                  std::vector<double>& d) {
  for (std::size_t i = 0; i < n; ++i) {
    const double di = a[i * n + i];
    a[i * n + i] = di + lam * std::max(di, 1e-12);
  }
  // in-place Cholesky
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        a[i * n + i] = std::sqrt(s);
      } else {
        a[i * n + j] = s / a[j * n + j];
      }
    }
  }
  d.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {  // L y = -g
    double s = -g[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * d[k];
    d[i] = s / a[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {  // L^T d = y
    double s = d[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * d[k];
    d[ii] = s / a[ii * n + ii];
  }
  return true;
}

}  // namespace

ReconstructionTarget target_from_triple(const SpectralTriple& t, std::size_t n_fit) {
  ReconstructionTarget tg;
  tg.mu = t.mu;
  tg.alpha = t.alpha;
  tg.n_fit = (n_fit == 0) ? t.mu.size() : n_fit;
  if (tg.n_fit > t.mu.size())
    throw ArgumentError("target_from_triple: n_fit exceeds available data");
  return tg;
}

Potential initial_guess(const ReconstructionTarget& target, std::size_t n_modes) {
  if (target.n_fit < 2 || target.mu.size() < target.n_fit ||
      target.alpha.size() < target.n_fit)
    throw ArgumentError("initial_guess: need n_fit >= 2 with matching sequences");
  if (n_modes == 0) n_modes = (target.n_fit - 1) / 2;
  const Calibration& cal = calibration();
  std::vector<double> mu(target.mu.begin(), target.mu.begin() + long(target.n_fit));
  const double mean = tail_mean(mu);
  std::vector<double> cosc(n_modes, 0.0), sinc(n_modes, 0.0);
  for (std::size_t n = 1; n <= n_modes && n <= target.n_fit; ++n) {
    const double sigma = target.mu[n - 1] - pi2 * double(n) * double(n) - mean;
    cosc[n - 1] = sigma / cal.even_gain;
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
    sinc[n - 1] = sgn * double(n) * target.alpha[n - 1] / cal.odd_gain;
  }
  return Potential::fourier(mean, cosc, sinc);
}

ReconstructionReport reconstruct(const ReconstructionTarget& target, std::size_t n_modes,
                                 double tol, std::size_t max_iter) {
  if (target.n_fit < 2 * n_modes + 1)
    throw ArgumentError("reconstruct: need n_fit >= 2 n_modes + 1 constraints");
  if (target.mu.size() < target.n_fit || target.alpha.size() < target.n_fit)
    throw ArgumentError("reconstruct: target sequences shorter than n_fit");
  for (std::size_t i = 1; i < target.n_fit; ++i)
    if (!(target.mu[i] > target.mu[i - 1]))
      throw ArgumentError("reconstruct: target mu not strictly increasing");
  if (!(tol > 0.0)) throw ArgumentError("reconstruct: tol must be positive");

  const Potential q0 = initial_guess(target, n_modes);
  Params p{q0.mean(),
           std::vector<double>(q0.cos_coeffs().begin(), q0.cos_coeffs().end()),
           std::vector<double>(q0.sin_coeffs().begin(), q0.sin_coeffs().end())};
  p.cosc.resize(n_modes, 0.0);
  p.sinc.resize(n_modes, 0.0);

  std::vector<double> hints;  // eigenvalues at the accepted base point
  std::vector<double> r = residual(p, target, hints);
  hints = target.mu;

  ReconstructionReport rep;
  rep.residual_history.push_back(norm2(r));

  const std::size_t npar = p.size(), m = r.size();
  double lam = 1e-3;
  std::size_t accepted = 0;
  while (accepted < max_iter && norm_inf(r) >= tol) {
    // forward-difference Jacobian about the current base point
    std::vector<double> jac(m * npar);
    for (std::size_t c = 0; c < npar; ++c) {
      const double step = 1e-6 * (1.0 + std::abs(p.get(c)));
      Params pp = p;
      pp.add(c, step);
      const std::vector<double> rc = residual(pp, target, hints);
      for (std::size_t i = 0; i < m; ++i) jac[i * npar + c] = (rc[i] - r[i]) / step;
    }
    std::vector<double> h(npar * npar, 0.0), g(npar, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t a = 0; a < npar; ++a) {
        g[a] += jac[i * npar + a] * r[i];
        for (std::size_t b = 0; b <= a; ++b) h[a * npar + b] += jac[i * npar + a] * jac[i * npar + b];
      }
    }
    for (std::size_t a = 0; a < npar; ++a)
      for (std::size_t b = a + 1; b < npar; ++b) h[a * npar + b] = h[b * npar + a];

    bool stepped = false;
    for (int tries = 0; tries < 24; ++tries) {
      std::vector<double> d;
      if (damped_solve(h, npar, lam, g, d)) {
        Params trial = p;
        for (std::size_t c = 0; c < npar; ++c) trial.add(c, d[c]);
        const std::vector<double> rt = residual(trial, target, hints);
        if (norm2(rt) < norm2(r)) {
          p = trial;
          r = rt;
          lam = std::max(lam / 3.0, 1e-14);
          ++accepted;
          rep.residual_history.push_back(norm2(r));
          // refresh warm starts from the accepted point
          hints.clear();
          for (const EigenNode& e : dirichlet_nodes(p.potential(), target.n_fit, nullptr))
            hints.push_back(e.mu);
          stepped = true;
          break;
        }
      }
      lam *= 3.0;
      if (lam > 1e12) break;
    }
    if (!stepped) break;  // damping exhausted; residual can no longer decrease
  }

  rep.recovered = p.potential();
  rep.iterations = accepted;
  double mu_res = 0.0, al_res = 0.0;
  for (std::size_t i = 0; i < target.n_fit; ++i) {
    mu_res = std::max(mu_res, std::abs(r[i]));
    al_res = std::max(al_res, std::abs(r[target.n_fit + i]));
  }
  rep.final_mu_residual = mu_res;
  rep.final_alpha_residual = al_res;
  rep.converged = norm_inf(r) < tol;
  return rep;
}

ReconstructionReport isospectral_partner(const Potential& p, const std::vector<double>& new_alpha,
                                         std::size_t n_modes, double tol, std::size_t max_iter) {
  if (new_alpha.empty()) throw ArgumentError("isospectral_partner: empty alpha sequence");
  ReconstructionTarget t;
  t.mu = dirichlet_eigenvalues(p, new_alpha.size());
  t.alpha = new_alpha;
  t.n_fit = new_alpha.size();
  return reconstruct(t, n_modes, tol, max_iter);
}

RoundtripReport verify_roundtrip(const Potential& q, std::size_t n_fit, std::size_t n_modes) {
  if (q.basis() != Basis::fourier)
    throw ArgumentError("verify_roundtrip: q must be in the fourier basis");
  if (q.cos_coeffs().size() > n_modes || q.sin_coeffs().size() > n_modes)
    throw ArgumentError("verify_roundtrip: q has more than n_modes modes");
  const SpectralTriple t = spectral_triple(q, n_fit);
  RoundtripReport rr;
  rr.reconstruction = reconstruct(target_from_triple(t), n_modes, 1e-9, 200);
  rr.l2_error = l2_distance(rr.reconstruction.recovered, q);
  rr.passed = rr.l2_error < 1e-4;
  return rr;
}

}  // namespace asymspec
