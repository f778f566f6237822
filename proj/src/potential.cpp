#include "asymspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asymspec/errors.hpp"

namespace asymspec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw ArgumentError(std::string("non-finite value in ") + what);
}

// Integral of the linear segment through (x0,v0),(x1,v1) times sin(w x) over [a,b].
double linear_times_sin(double x0, double v0, double x1, double v1, double a, double b, double w) {
  const double m = (v1 - v0) / (x1 - x0);
  const double c = v0 - m * x0;  // segment is m*x + c
  // antiderivative of (m x + c) sin(w x):
  //   -(m x + c) cos(w x)/w + m sin(w x)/w^2
  auto F = [&](double x) { return -(m * x + c) * std::cos(w * x) / w + m * std::sin(w * x) / (w * w); };
  return F(b) - F(a);
}

}  // namespace

Potential Potential::fourier(double mean, std::vector<double> cos_coeffs,
                             std::vector<double> sin_coeffs) {
  if (!std::isfinite(mean)) throw ArgumentError("non-finite mean");
  require_finite(cos_coeffs, "cos coefficients");
  require_finite(sin_coeffs, "sin coefficients");
  Potential q;
  q.basis_ = Basis::fourier;
  q.mean_ = mean;
  q.cos_ = std::move(cos_coeffs);
  q.sin_ = std::move(sin_coeffs);
  return q;
}

Potential Potential::grid(std::vector<double> values) {
  if (values.size() < 2) throw ArgumentError("grid basis needs at least 2 samples");
  require_finite(values, "grid samples");
  Potential q;
  q.basis_ = Basis::grid;
  q.values_ = std::move(values);
  return q;
}

Potential Potential::piecewise(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("piecewise basis needs at least 1 cell");
  require_finite(values, "cell values");
  Potential q;
  q.basis_ = Basis::piecewise;
  q.values_ = std::move(values);
  return q;
}

double Potential::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("evaluate: x outside [0,1]");
  switch (basis_) {
    case Basis::fourier: {
      double v = mean_;
      for (std::size_t k = 0; k < cos_.size(); ++k) v += cos_[k] * std::cos(two_pi * double(k + 1) * x);
      for (std::size_t k = 0; k < sin_.size(); ++k) v += sin_[k] * std::sin(two_pi * double(k + 1) * x);
      return v;
    }
    case Basis::grid: {
      const std::size_t m = values_.size() - 1;
      const double t = x * double(m);
      std::size_t i = std::min<std::size_t>(std::size_t(t), m - 1);
      const double f = t - double(i);
      return values_[i] * (1.0 - f) + values_[i + 1] * f;
    }
    case Basis::piecewise: {
      const std::size_t m = values_.size();
      std::size_t i = std::min<std::size_t>(std::size_t(x * double(m)), m - 1);
      return values_[i];
    }
  }
  throw ArgumentError("invalid basis");
}

Potential Potential::reflect() const {
  Potential q(*this);
  if (basis_ == Basis::fourier) {
    for (double& s : q.sin_) s = -s;
  } else {
    std::reverse(q.values_.begin(), q.values_.end());
  }
  return q;
}

Potential Potential::odd_part() const {
  if (basis_ == Basis::fourier) {
    Potential q;
    q.basis_ = Basis::fourier;
    q.sin_ = sin_;
    return q;
  }
  Potential q(*this);
  const std::size_t n = values_.size();
  for (std::size_t i = 0; i < n; ++i) q.values_[i] = 0.5 * (values_[i] - values_[n - 1 - i]);
  return q;
}

Potential Potential::even_part() const {
  if (basis_ == Basis::fourier) {
    Potential q;
    q.basis_ = Basis::fourier;
    q.mean_ = mean_;
    q.cos_ = cos_;
    return q;
  }
  Potential q(*this);
  const std::size_t n = values_.size();
  for (std::size_t i = 0; i < n; ++i) q.values_[i] = 0.5 * (values_[i] + values_[n - 1 - i]);
  return q;
}

Potential Potential::shift(double delta) const {
  if (!std::isfinite(delta)) throw ArgumentError("non-finite shift");
  Potential q(*this);
  if (basis_ == Basis::fourier)
    q.mean_ += delta;
  else
    for (double& v : q.values_) v += delta;
  return q;
}

double Potential::l2_norm() const {
  switch (basis_) {
    case Basis::fourier: {
      double s = mean_ * mean_;
      for (double a : cos_) s += 0.5 * a * a;
      for (double b : sin_) s += 0.5 * b * b;
      return std::sqrt(s);
    }
    case Basis::grid: {
      // exact integral of the squared linear interpolant
      const std::size_t m = values_.size() - 1;
      const double h = 1.0 / double(m);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double a = values_[i], b = values_[i + 1];
        s += h * (a * a + a * b + b * b) / 3.0;
      }
      return std::sqrt(s);
    }
    case Basis::piecewise: {
      double s = 0.0;
      for (double v : values_) s += v * v;
      return std::sqrt(s / double(values_.size()));
    }
  }
  throw ArgumentError("invalid basis");
}

double Potential::integral() const { return cell_average(0.0, 1.0); }

double Potential::cell_average(double a, double b) const {
  if (!(a >= 0.0 && b <= 1.0 && a < b)) throw DomainError("cell_average: need 0 <= a < b <= 1");
  const double len = b - a;
  switch (basis_) {
    case Basis::fourier: {
      double s = mean_ * len;
      for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double w = two_pi * double(k + 1);
        s += cos_[k] * (std::sin(w * b) - std::sin(w * a)) / w;
      }
      for (std::size_t k = 0; k < sin_.size(); ++k) {
        const double w = two_pi * double(k + 1);
        s += sin_[k] * (std::cos(w * a) - std::cos(w * b)) / w;
      }
      return s / len;
    }
    case Basis::grid: {
      const std::size_t m = values_.size() - 1;
      const double hs = 1.0 / double(m);
      double s = 0.0;
      const std::size_t i0 = std::min<std::size_t>(std::size_t(a * double(m)), m - 1);
      for (std::size_t i = i0; i < m; ++i) {
        const double x0 = double(i) * hs, x1 = double(i + 1) * hs;
        if (x0 >= b) break;
        const double lo = std::max(a, x0), hi = std::min(b, x1);
        if (hi <= lo) continue;
        // exact integral of the linear piece over [lo, hi] (trapezoid is exact)
        const double vlo = values_[i] + (values_[i + 1] - values_[i]) * (lo - x0) / hs;
        const double vhi = values_[i] + (values_[i + 1] - values_[i]) * (hi - x0) / hs;
        s += 0.5 * (vlo + vhi) * (hi - lo);
      }
      return s / len;
    }
    case Basis::piecewise: {
      const std::size_t m = values_.size();
      const double hs = 1.0 / double(m);
      double s = 0.0;
      const std::size_t i0 = std::min<std::size_t>(std::size_t(a * double(m)), m - 1);
      for (std::size_t i = i0; i < m; ++i) {
        const double x0 = double(i) * hs, x1 = double(i + 1) * hs;
        if (x0 >= b) break;
        const double lo = std::max(a, x0), hi = std::min(b, x1);
        if (hi > lo) s += values_[i] * (hi - lo);
      }
      return s / len;
    }
  }
  throw ArgumentError("invalid basis");
}

std::vector<double> Potential::cell_averages(std::size_t cells) const {
  if (cells == 0) throw ArgumentError("cell_averages: cells must be positive");
  std::vector<double> out(cells);
  const double h = 1.0 / double(cells);
  if (basis_ == Basis::fourier) {
    // difference of the exact antiderivative at consecutive grid points
    std::vector<double> prim(cells + 1, 0.0);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double x = double(i) * h;
      double s = mean_ * x;
      for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double w = two_pi * double(k + 1);
        s += cos_[k] * std::sin(w * x) / w;
      }
      for (std::size_t k = 0; k < sin_.size(); ++k) {
        const double w = two_pi * double(k + 1);
        s -= sin_[k] * std::cos(w * x) / w;
      }
      prim[i] = s;
    }
    for (std::size_t i = 0; i < cells; ++i) out[i] = (prim[i + 1] - prim[i]) / h;
    return out;
  }
  for (std::size_t i = 0; i < cells; ++i)
    out[i] = cell_average(double(i) * h, double(i + 1) * h);
  return out;
}

double Potential::sine_moment(int n) const {
  if (n < 1) throw ArgumentError("sine_moment: n must be >= 1");
  const double w = two_pi * double(n);
  switch (basis_) {
    case Basis::fourier:
      // modes are orthogonal on [0,1]; only sin(2 pi n x) survives
      return std::size_t(n) <= sin_.size() ? 0.5 * sin_[n - 1] : 0.0;
    case Basis::grid: {
      const std::size_t m = values_.size() - 1;
      const double hs = 1.0 / double(m);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double x0 = double(i) * hs, x1 = double(i + 1) * hs;
        s += linear_times_sin(x0, values_[i], x1, values_[i + 1], x0, x1, w);
      }
      return s;
    }
    case Basis::piecewise: {
      const std::size_t m = values_.size();
      const double hs = 1.0 / double(m);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double x0 = double(i) * hs, x1 = double(i + 1) * hs;
        s += values_[i] * (std::cos(w * x0) - std::cos(w * x1)) / w;
      }
      return s;
    }
  }
  throw ArgumentError("invalid basis");
}

double l2_distance(const Potential& a, const Potential& b) {
  if (a.basis() == Basis::fourier && b.basis() == Basis::fourier) {
    const std::size_t nc = std::max(a.cos_coeffs().size(), b.cos_coeffs().size());
    const std::size_t ns = std::max(a.sin_coeffs().size(), b.sin_coeffs().size());
    auto at = [](const std::vector<double>& v, std::size_t i) {
      return i < v.size() ? v[i] : 0.0;
    };
    double s = (a.mean() - b.mean()) * (a.mean() - b.mean());
    for (std::size_t k = 0; k < nc; ++k) {
      const double d = at(a.cos_coeffs(), k) - at(b.cos_coeffs(), k);
      s += 0.5 * d * d;
    }
    for (std::size_t k = 0; k < ns; ++k) {
      const double d = at(a.sin_coeffs(), k) - at(b.sin_coeffs(), k);
      s += 0.5 * d * d;
    }
    return std::sqrt(s);
  }
  // composite Simpson on a fine grid
  const std::size_t n = 1 << 14;
  const double h = 1.0 / double(n);
  double s = 0.0;
  auto d2 = [&](double x) {
    const double d = a.evaluate(x) - b.evaluate(x);
    return d * d;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double x0 = double(i) * h, x1 = x0 + h;
    s += (d2(x0) + 4.0 * d2(0.5 * (x0 + x1)) + d2(x1)) * h / 6.0;
  }
  return std::sqrt(s);
}

}  // namespace asymspec
