#include "asymspec/propagator.hpp"

#include <cmath>
#include <numbers>

#include "asymspec/errors.hpp"

namespace asymspec {

namespace {
constexpr double pi = std::numbers::pi;

// 1/(2k)! and 1/(2k+1)! for the 8-term even/odd series
constexpr double inv_fact_even[8] = {
    1.0, 1.0 / 2, 1.0 / 24, 1.0 / 720, 1.0 / 40320, 1.0 / 3628800,
    1.0 / 479001600, 1.0 / 87178291200.0};
constexpr double inv_fact_odd[8] = {
    1.0, 1.0 / 6, 1.0 / 120, 1.0 / 5040, 1.0 / 362880, 1.0 / 39916800,
    1.0 / 6227020800.0, 1.0 / 1307674368000.0};
}  // namespace

namespace detail {

// Below |z h^2| = 1e-4 the closed forms lose nothing but the series is
// branch-free by construction; 8 terms leave truncation far under roundoff.
template <typename T>
static CellEntries<T> cell_entries_series(T z, double h) {
  const T u = z * (h * h);
  T c(1), s(1), dc(0), ds(0);
  T upow(u);   // u^k for the value terms
  T upow1(1);  // u^(k-1) for the derivative terms
  for (int k = 1; k < 8; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    c += sgn * inv_fact_even[k] * upow;
    s += sgn * inv_fact_odd[k] * upow;
    dc += sgn * double(k) * inv_fact_even[k] * upow1;
    ds += sgn * double(k) * inv_fact_odd[k] * upow1;
    upow *= u;
    upow1 *= u;
  }
  return {c, h * s, (h * h) * dc, (h * h * h) * ds};
}

CellEntries<double> cell_entries(double z, double h) {
  const double u = z * h * h;
  if (std::abs(u) < 1e-4) return cell_entries_series(z, h);
  double C, S;
  if (z > 0.0) {
    const double w = std::sqrt(z) * h;
    C = std::cos(w);
    S = h * std::sin(w) / w;
  } else {
    const double w = std::sqrt(-z) * h;
    C = std::cosh(w);
    S = h * std::sinh(w) / w;
  }
  return {C, S, -0.5 * h * S, (h * C - S) / (2.0 * z)};
}

CellEntries<Complex> cell_entries(Complex z, double h) {
  const Complex u = z * (h * h);
  if (std::abs(u) < 1e-4) return cell_entries_series(z, h);
  // cos and sinc are even, so the branch of the square root is immaterial
  const Complex w = std::sqrt(z) * h;
  const Complex C = std::cos(w);
  const Complex S = h * std::sin(w) / w;
  return {C, S, -0.5 * h * S, (h * C - S) / (2.0 * z)};
}

}  // namespace detail

FrozenPotential::FrozenPotential(const Potential& q, std::size_t cells)
    : qbar_(q.cell_averages(cells)), h_(1.0 / double(cells)) {
  if (cells < 16) throw ArgumentError("propagation needs at least 16 cells");
}

std::size_t default_steps(double lambda_abs) {
  const double base = 8.0 * std::sqrt(std::max(1.0, lambda_abs)) / pi;
  std::size_t s = 256;
  while (double(s) < base) s <<= 1;
  return s;
}

namespace {

template <typename T>
FundamentalData propagate_impl(const std::vector<double>& qbar, double h, T lambda) {
  T m00(1), m01(0), m10(0), m11(1);  // transfer matrix
  T d00(0), d01(0), d10(0), d11(0);  // its lambda-derivative
  for (double qb : qbar) {
    const T z = lambda - T(qb);
    const auto e = detail::cell_entries(z, h);
    const T p00 = e.C, p01 = e.S, p10 = -z * e.S, p11 = e.C;
    const T q00 = e.dC, q01 = e.dS, q10 = -e.S - z * e.dS, q11 = e.dC;
    const T nd00 = q00 * m00 + q01 * m10 + p00 * d00 + p01 * d10;
    const T nd01 = q00 * m01 + q01 * m11 + p00 * d01 + p01 * d11;
    const T nd10 = q10 * m00 + q11 * m10 + p10 * d00 + p11 * d10;
    const T nd11 = q10 * m01 + q11 * m11 + p10 * d01 + p11 * d11;
    const T nm00 = p00 * m00 + p01 * m10;
    const T nm01 = p00 * m01 + p01 * m11;
    const T nm10 = p10 * m00 + p11 * m10;
    const T nm11 = p10 * m01 + p11 * m11;
    m00 = nm00; m01 = nm01; m10 = nm10; m11 = nm11;
    d00 = nd00; d01 = nd01; d10 = nd10; d11 = nd11;
  }
  FundamentalData f;
  f.lambda = Complex(lambda);
  f.c1 = Complex(m00);
  f.s1 = Complex(m01);
  f.dc1 = Complex(m10);
  f.ds1 = Complex(m11);
  f.c1_dl = Complex(d00);
  f.s1_dl = Complex(d01);
  f.dc1_dl = Complex(d10);
  f.ds1_dl = Complex(d11);
  f.steps = qbar.size();
  return f;
}

void check_finite(const FundamentalData& f) {
  for (Complex v : {f.c1, f.s1, f.dc1, f.ds1, f.c1_dl, f.s1_dl, f.dc1_dl, f.ds1_dl})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InconsistencyError("propagation overflowed (|lambda| too large on the negative axis?)");
}

}  // namespace

FundamentalData fundamental(const FrozenPotential& fp, Complex lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ArgumentError("fundamental: non-finite lambda");
  FundamentalData f = (lambda.imag() == 0.0)
                          ? propagate_impl(fp.values(), fp.h(), lambda.real())
                          : propagate_impl(fp.values(), fp.h(), lambda);
  check_finite(f);
  return f;
}

FundamentalData fundamental(const Potential& q, Complex lambda, std::size_t steps) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ArgumentError("fundamental: non-finite lambda");
  if (steps == 0) steps = default_steps(std::abs(lambda));
  return fundamental(FrozenPotential(q, steps), lambda);
}

TransferMatrix transfer(const Potential& q, Complex lambda, std::size_t steps) {
  const FundamentalData f = fundamental(q, lambda, steps);
  return {f.c1, f.s1, f.dc1, f.ds1};
}

int prufer_count(const FrozenPotential& fp, double lambda) {
  if (!std::isfinite(lambda)) throw ArgumentError("prufer_count: non-finite lambda");
  const double h = fp.h();
  double u = 0.0, up = 1.0;  // s-type Cauchy data
  long count = 0;
  for (double qb : fp.values()) {
    const double z = lambda - qb;
    const auto e = detail::cell_entries(z, h);
    const double un = e.C * u + e.S * up;
    const double upn = -z * e.S * u + e.C * up;
    if (z > 0.0) {
      // in an oscillatory cell the phase atan2(w u, u') advances linearly at
      // rate w, so zeros of u in (x_i, x_{i+1}] are the multiples of pi
      // crossed by it
      const double w = std::sqrt(z);
      const double phi0 = std::atan2(w * u, up);
      count += long(std::floor((phi0 + w * h) / pi)) - long(std::floor(phi0 / pi));
    } else {
      // non-oscillatory: at most one zero, present iff the sign changes
      if ((u < 0.0 && un > 0.0) || (u > 0.0 && un < 0.0) || (un == 0.0 && u != 0.0)) ++count;
    }
    u = un;
    up = upn;
    const double m = std::max(std::abs(u), std::abs(up));
    if (m > 1e100) {
      u /= m;
      up /= m;
    }
  }
  if (u == 0.0) --count;  // a zero exactly at x = 1 is not strictly below lambda
  return int(count);
}

int prufer_count(const Potential& q, double lambda, std::size_t steps) {
  if (!std::isfinite(lambda)) throw ArgumentError("prufer_count: non-finite lambda");
  if (steps == 0) steps = default_steps(std::abs(lambda));
  return prufer_count(FrozenPotential(q, steps), lambda);
}

RealTrajectory real_trajectory(const FrozenPotential& fp, double lambda) {
  if (!std::isfinite(lambda)) throw ArgumentError("real_trajectory: non-finite lambda");
  const std::size_t n = fp.cells();
  RealTrajectory t;
  t.lambda = lambda;
  t.h = fp.h();
  t.c.resize(n + 1);
  t.dc.resize(n + 1);
  t.s.resize(n + 1);
  t.ds.resize(n + 1);
  t.c[0] = 1.0;
  t.dc[0] = 0.0;
  t.s[0] = 0.0;
  t.ds[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = lambda - fp.values()[i];
    const auto e = detail::cell_entries(z, t.h);
    t.c[i + 1] = e.C * t.c[i] + e.S * t.dc[i];
    t.dc[i + 1] = -z * e.S * t.c[i] + e.C * t.dc[i];
    t.s[i + 1] = e.C * t.s[i] + e.S * t.ds[i];
    t.ds[i + 1] = -z * e.S * t.s[i] + e.C * t.ds[i];
  }
  return t;
}

double s_squared_integral(const FrozenPotential& fp, double lambda) {
  const std::size_t n = fp.cells();
  const double h = fp.h();
  double u = 0.0, up = 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = lambda - fp.values()[i];
    const auto e = detail::cell_entries(z, h);
    // closed-form cell integrals of cos(w t)^2, cos(w t) sin(w t)/w,
    // (sin(w t)/w)^2, all even in w
    const double icc = 0.5 * (h + e.S * e.C);
    const double ics = 0.5 * e.S * e.S;
    double iss;
    const double u_arg = z * h * h;
    if (std::abs(u_arg) < 1e-4) {
      // (h - S C)/(2z) by its series
      double acc = 0.0, upow = 1.0;
      for (int k = 1; k < 8; ++k) {
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        const double pow4 = std::pow(4.0, k);
        acc += sgn * pow4 * inv_fact_odd[k] * upow;
        upow *= u_arg;
      }
      iss = 0.5 * h * h * h * acc;
    } else {
      iss = (h - e.S * e.C) / (2.0 * z);
    }
    total += u * u * icc + 2.0 * u * up * ics + up * up * iss;
    const double un = e.C * u + e.S * up;
    const double upn = -z * e.S * u + e.C * up;
    u = un;
    up = upn;
  }
  return total;
}

}  // namespace asymspec
