#include "asymspec/asymmetry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "asymspec/errors.hpp"

namespace asymspec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

double nearest_eigenvalue(const Potential& q, double from) {
  // local Newton on s(1, .) starting at the pole-suspect point
  double x = from;
  for (int it = 0; it < 16; ++it) {
    const FundamentalData f = fundamental(q, x);
    const double d = f.s1_dl.real();
    if (d == 0.0) break;
    const double step = f.s1.real() / d;
    x -= step;
    if (std::abs(step) < 1e-10 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// c-type trajectories for q and for its reflection, on a shared grid
template <typename T>
void c_trajectories(const FrozenPotential& fq, const FrozenPotential& fr, T lambda,
                    std::vector<T>& cq, std::vector<T>& cr) {
  const std::size_t n = fq.cells();
  const double h = fq.h();
  cq.assign(n + 1, T(0));
  cr.assign(n + 1, T(0));
  T uq(1), upq(0), ur(1), upr(0);
  cq[0] = uq;
  cr[0] = ur;
  for (std::size_t i = 0; i < n; ++i) {
    const T zq = lambda - T(fq.values()[i]);
    const T zr = lambda - T(fr.values()[i]);
    const auto eq = detail::cell_entries(zq, h);
    const auto er = detail::cell_entries(zr, h);
    const T nuq = eq.C * uq + eq.S * upq;
    upq = -zq * eq.S * uq + eq.C * upq;
    uq = nuq;
    const T nur = er.C * ur + er.S * upr;
    upr = -zr * er.S * ur + er.C * upr;
    ur = nur;
    cq[i + 1] = uq;
    cr[i + 1] = ur;
  }
}

template <typename T>
double property4_impl(const Potential& q, T lambda, std::size_t steps) {
  const FrozenPotential fq(q, steps);
  const FrozenPotential fr(q.reflect(), steps);
  std::vector<T> cq, cr;
  c_trajectories(fq, fr, lambda, cq, cr);

  // q_o enters through its exact cell means (the frozen potential's own odd
  // part), so jumps of a piecewise q never straddle a quadrature node; the
  // trapezoid rule then only sees the smooth trajectory product
  const std::vector<double> qo = q.odd_part().cell_averages(steps);
  const double h = fq.h();
  T integral(0);
  for (std::size_t i = 0; i < steps; ++i)
    integral += T(qo[i]) * 0.5 * (cq[i] * cr[i] + cq[i + 1] * cr[i + 1]);
  integral *= h;

  const FundamentalData f = fundamental(fq, Complex(lambda));
  const Complex resid = f.dc1 * f.asym() + Complex(integral);
  return std::abs(resid);
}

}  // namespace

Complex asym_eval(const Potential& q, Complex lambda, std::size_t steps) {
  return fundamental(q, lambda, steps).asym();
}

double asym_leading(const Potential& q, int n) {
  if (n < 1) throw ArgumentError("asym_leading: n must be >= 1");
  // substituting x = (y+1)/2 turns the [-1,1] integral into
  // 2 (-1)^n integral_0^1 sin(2 pi n x) q_o(x) dx
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  return -sgn * q.odd_part().sine_moment(n) / (2.0 * pi * double(n));
}

DtNMatrix dtn(const Potential& q, Complex lambda, std::size_t steps) {
  const FundamentalData f = fundamental(q, lambda, steps);
  const double threshold = 1e-8 / std::sqrt(1.0 + std::abs(lambda));
  if (std::abs(f.s1) <= threshold) {
    const double mu = nearest_eigenvalue(q, lambda.real());
    throw PoleError("dtn: lambda within pole guard of the Dirichlet eigenvalue near " +
                        std::to_string(mu),
                    mu);
  }
  DtNMatrix m;
  m.lambda = lambda;
  m.n00 = -f.c1 / f.s1;
  m.n01 = Complex(1.0) / f.s1;
  m.n10 = m.n01;
  m.n11 = -f.ds1 / f.s1;
  // the matrix must map the Dirichlet data of the propagated c-solution to
  // its Neumann data
  const Complex r0 = m.n00 * 1.0 + m.n01 * f.c1 - 0.0;
  const Complex r1 = m.n10 * 1.0 + m.n11 * f.c1 - (-f.dc1);
  const double scale = std::max({1.0, std::abs(f.c1), std::abs(f.dc1)});
  if (std::abs(r0) > 1e-8 * scale || std::abs(r1) > 1e-8 * scale)
    throw InconsistencyError("dtn: boundary-map verification failed");
  return m;
}

CommutatorScan dtn_commutator_norm(const Potential& q1, const Potential& q2,
                                   const std::vector<double>& lambda_grid) {
  CommutatorScan scan;
  for (double lam : lambda_grid) {
    DtNMatrix a, b;
    try {
      a = dtn(q1, lam);
      b = dtn(q2, lam);
    } catch (const PoleError&) {
      scan.skipped.push_back(lam);
      continue;
    }
    const Complex c00 = a.n00 * b.n00 + a.n01 * b.n10 - (b.n00 * a.n00 + b.n01 * a.n10);
    const Complex c01 = a.n00 * b.n01 + a.n01 * b.n11 - (b.n00 * a.n01 + b.n01 * a.n11);
    const Complex c10 = a.n10 * b.n00 + a.n11 * b.n10 - (b.n10 * a.n00 + b.n11 * a.n10);
    const Complex c11 = a.n10 * b.n01 + a.n11 * b.n11 - (b.n10 * a.n01 + b.n11 * a.n11);
    const double fro = std::sqrt(std::norm(c00) + std::norm(c01) + std::norm(c10) + std::norm(c11));
    scan.max_norm = std::max(scan.max_norm, fro);
  }
  return scan;
}

std::vector<double> commutator_default_grid(double lo, double hi, std::size_t count) {
  if (!(lo < hi) || count == 0) throw ArgumentError("commutator_default_grid: bad range");
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = lo + (hi - lo) * (double(i) + 0.5) / double(count);
    // snap to the nearest midpoint between consecutive multiples of pi^2
    const double k = std::floor(t / pi2);
    const double mid = (k + 0.5) * pi2;
    grid.push_back((mid >= lo && mid <= hi) ? mid : t);
  }
  return grid;
}

double property4_residual(const Potential& q, Complex lambda, std::size_t steps) {
  if (steps == 0) steps = std::max<std::size_t>(16384, default_steps(std::abs(lambda)));
  if (lambda.imag() == 0.0) return property4_impl(q, lambda.real(), steps);
  return property4_impl(q, lambda, steps);
}

SymmetryReport symmetry_test(const Potential& q, std::size_t grid_size) {
  if (grid_size < 16) throw ArgumentError("symmetry_test: grid_size must be >= 16");
  SymmetryReport rep;
  for (std::size_t k = 0; k <= grid_size; ++k) {
    const double a = std::abs(asym_eval(q, pi2 * double(k)));
    rep.max_abs_a = std::max(rep.max_abs_a, a);
  }
  for (int k = 1; k <= 8; ++k) {
    const double a = std::abs(asym_eval(q, -pi2 * double(k)));
    rep.max_abs_a = std::max(rep.max_abs_a, a);
  }
  rep.symmetric = rep.max_abs_a < 1e-8;
  return rep;
}

}  // namespace asymspec
