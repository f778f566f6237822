#pragma once

#include <cstddef>
#include <vector>

namespace asymspec {

enum class Basis { fourier, grid, piecewise };

/// A real potential q in L^2[0,1].
///
/// Three representations are supported:
///  - fourier:   q(x) = mean + sum_k cos_k * cos(2 pi k x) + sum_k sin_k * sin(2 pi k x).
///    With period-1 modes the reflection x -> 1-x is a sign flip on the sine
///    coefficients, so odd/even splitting is exact at the coefficient level.
///  - grid:      M+1 uniform samples on [0,1], linear interpolation between them.
///  - piecewise: M equal cells, constant on each, left-closed intervals.
///
/// Values are immutable; all operations return new objects and are safe for
/// concurrent use.
class Potential {
public:
  /// The zero potential.
  Potential() = default;

  static Potential fourier(double mean, std::vector<double> cos_coeffs = {},
                           std::vector<double> sin_coeffs = {});
  /// M+1 samples at x = i/M; requires at least two values.
  static Potential grid(std::vector<double> values);
  /// M cell values, cell i covering [i/M, (i+1)/M); requires at least one.
  static Potential piecewise(std::vector<double> values);

  Basis basis() const { return basis_; }
  double mean() const { return mean_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  const std::vector<double>& grid_values() const { return values_; }

  /// q(x) for x in [0,1]; throws DomainError outside.
  double evaluate(double x) const;

  /// The reflected potential q~(x) = q(1-x).
  Potential reflect() const;

  /// Odd part about x = 1/2: (q(x) - q(1-x))/2.
  Potential odd_part() const;

  /// Even part about x = 1/2: (q(x) + q(1-x))/2.
  Potential even_part() const;

  /// q + delta.
  Potential shift(double delta) const;

  /// L^2[0,1] norm; exact from coefficients in the fourier basis (Parseval),
  /// exact piecewise integrals otherwise.
  double l2_norm() const;

  /// Integral of q over [0,1], exact per basis.
  double integral() const;

  /// Mean value of q over [a,b] inside [0,1], exact per basis.
  double cell_average(double a, double b) const;

  /// Cell means over `cells` equal subintervals of [0,1].
  std::vector<double> cell_averages(std::size_t cells) const;

  /// Integral of q(x) sin(2 pi n x) over [0,1], exact per basis.
  double sine_moment(int n) const;

private:
  Basis basis_ = Basis::fourier;
  double mean_ = 0.0;            // fourier only
  std::vector<double> cos_, sin_;  // fourier only
  std::vector<double> values_;     // grid / piecewise
};

/// L^2 distance; exact for two fourier potentials, composite quadrature otherwise.
double l2_distance(const Potential& a, const Potential& b);

}  // namespace asymspec
