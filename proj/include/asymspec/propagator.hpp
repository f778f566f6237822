#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "asymspec/potential.hpp"

namespace asymspec {

using Complex = std::complex<double>;

/// Values of the fundamental solutions c(x,lambda), s(x,lambda) of
/// -u'' + q u = lambda u at x = 1, with Cauchy data c(0)=1, c'(0)=0,
/// s(0)=0, s'(0)=1, together with their derivatives in lambda.
struct FundamentalData {
  Complex lambda{};
  Complex c1{}, dc1{}, s1{}, ds1{};          // c(1), c'(1), s(1), s'(1)
  Complex c1_dl{}, dc1_dl{}, s1_dl{}, ds1_dl{};  // d/dlambda of the above
  std::size_t steps = 0;

  Complex asym() const { return 0.5 * (c1 - ds1); }
  Complex wronskian() const { return c1 * ds1 - dc1 * s1; }
};

/// 2x2 matrix [[c1, s1],[c'(1), s'(1)]] taking Cauchy data at 0 to Cauchy
/// data at 1; determinant 1.
struct TransferMatrix {
  Complex a, b, c, d;  // rows: (a b) / (c d)
  Complex det() const { return a * d - b * c; }
};

/// Potential frozen to its exact cell means on a uniform grid.  The cell
/// propagator is exact for the frozen potential, so every identity that holds
/// for an L^2 potential (Wronskian, reflection, norming relations) holds for
/// the computed data up to roundoff.
class FrozenPotential {
public:
  FrozenPotential(const Potential& q, std::size_t cells);

  std::size_t cells() const { return qbar_.size(); }
  double h() const { return h_; }
  const std::vector<double>& values() const { return qbar_; }

private:
  std::vector<double> qbar_;
  double h_;
};

/// Step count used when the caller passes steps = 0: at least 8 cells per
/// oscillation wavelength, rounded up to a power of two so that nearby
/// spectral parameters share one grid.
std::size_t default_steps(double lambda_abs);

/// Fundamental solutions at x = 1 for spectral parameter lambda, using
/// `steps` equal cells (0 = automatic).  Works for complex lambda; for real
/// lambda the computation stays in real arithmetic and the imaginary parts
/// are exactly zero.  Requires steps = 0 or steps >= 16.
FundamentalData fundamental(const Potential& q, Complex lambda, std::size_t steps = 0);
FundamentalData fundamental(const FrozenPotential& fp, Complex lambda);

TransferMatrix transfer(const Potential& q, Complex lambda, std::size_t steps = 0);

/// Number of Dirichlet eigenvalues strictly below real lambda, by exact
/// phase counting of the s-solution across the frozen cells.
int prufer_count(const Potential& q, double lambda, std::size_t steps = 0);
int prufer_count(const FrozenPotential& fp, double lambda);

/// Cauchy data of both fundamental solutions at every grid point, for real
/// lambda.  Used for quadratures against solution trajectories.
struct RealTrajectory {
  double lambda = 0.0;
  double h = 0.0;
  std::vector<double> c, dc, s, ds;  // size cells+1 each
};

RealTrajectory real_trajectory(const FrozenPotential& fp, double lambda);

/// Integral of s(x,lambda)^2 over [0,1], exact for the frozen potential
/// (closed-form integrals of the trig/hyperbolic cell solutions).
double s_squared_integral(const FrozenPotential& fp, double lambda);

namespace detail {

/// Entries of the constant-potential cell propagator and their derivatives
/// with respect to z = lambda - qbar:
///   C  = cos(w h),  S = sin(w h)/w  with w = sqrt(z),
///   dC = dC/dz,     dS = dS/dz.
/// All four are entire functions of z (even power series in w), so no branch
/// of the square root is ever selected.
template <typename T>
struct CellEntries {
  T C, S, dC, dS;
};

CellEntries<double> cell_entries(double z, double h);
CellEntries<Complex> cell_entries(Complex z, double h);

}  // namespace detail

}  // namespace asymspec
