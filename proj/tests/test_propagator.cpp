#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "asymspec/errors.hpp"
#include "asymspec/propagator.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using asymspec::Complex;
using asymspec::FundamentalData;
using asymspec::Potential;
using asymspec::fundamental;
using asymspec::prufer_count;
using asymspec::transfer;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

// oracle values for q(x) = x, frozen from the adaptive integrator
// (tests/support/oracle.cpp at tolerance 1e-12)
constexpr double kRampC1_10 = -1.0253427632751508;
constexpr double kRampDc1_10 = -0.18636532000926059;
constexpr double kRampS1_10 = 0.019199048719634092;
constexpr double kRampDs1_10 = -0.971794017404358;
}  // namespace

TEST_CASE("zero potential reproduces trig closed forms") {
  const Potential q0;
  const FundamentalData f = fundamental(q0, pi2);
  CHECK(f.c1.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.s1.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(f.s1) < 1e-12);
  CHECK(f.ds1.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(f.dc1) < 1e-11);
  CHECK(f.c1.imag() == 0.0);  // real lambda stays in real arithmetic

  const FundamentalData fh = fundamental(q0, -1.0);
  CHECK(fh.c1.real() == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
  CHECK(fh.s1.real() == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
  CHECK(fh.ds1.real() == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
}

TEST_CASE("constant potential is an exact spectral shift") {
  const Potential qg = Potential::fourier(2.5);
  const double lam = 30.0;
  const double w = std::sqrt(lam - 2.5);
  const FundamentalData f = fundamental(qg, lam);
  CHECK(f.c1.real() == doctest::Approx(std::cos(w)).epsilon(1e-13));
  CHECK(f.s1.real() == doctest::Approx(std::sin(w) / w).epsilon(1e-13));
}

TEST_CASE("ramp potential matches the adaptive oracle") {
  const Potential ramp = testgen::ramp();

  // the oracle itself must still reproduce its frozen values
  const auto of = oracle::fundamental(ramp, 10.0);
  CHECK(of.c1.real() == doctest::Approx(kRampC1_10).epsilon(1e-11));
  CHECK(of.s1.real() == doctest::Approx(kRampS1_10).epsilon(1e-9));

  const FundamentalData f = fundamental(ramp, 10.0);
  CHECK(f.c1.real() == doctest::Approx(kRampC1_10).epsilon(2e-8));
  CHECK(f.dc1.real() == doctest::Approx(kRampDc1_10).epsilon(2e-7));
  CHECK(f.s1.real() == doctest::Approx(kRampS1_10).epsilon(2e-6));
  CHECK(f.ds1.real() == doctest::Approx(kRampDs1_10).epsilon(2e-8));
}

TEST_CASE("complex lambda matches the adaptive oracle") {
  const Potential ramp = testgen::ramp();
  const Complex lam(5.0, 3.0);
  const auto of = oracle::fundamental(ramp, lam);
  const FundamentalData f = fundamental(ramp, lam);
  CHECK(std::abs(f.c1 - of.c1) < 2e-6);
  CHECK(std::abs(f.s1 - of.s1) < 2e-6);
  CHECK(std::abs(f.ds1 - of.ds1) < 2e-6);
  const FundamentalData ffine = fundamental(ramp, lam, 2048);
  CHECK(std::abs(ffine.c1 - of.c1) < 1e-8);
  CHECK(std::abs(ffine.s1 - of.s1) < 1e-8);
  CHECK(std::abs(ffine.ds1 - of.ds1) < 1e-8);
}

TEST_CASE("doubling steps gives second-order improvement on the ramp") {
  const Potential ramp = testgen::ramp();
  const auto of = oracle::fundamental(ramp, 10.0);
  auto err = [&](std::size_t steps) {
    const FundamentalData f = fundamental(ramp, 10.0, steps);
    return std::max({std::abs(f.c1 - of.c1), std::abs(f.s1 - of.s1), std::abs(f.ds1 - of.ds1),
                     std::abs(f.dc1 - of.dc1)});
  };
  const double e1 = err(64), e2 = err(128), e3 = err(256);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e2 / e3 >= 3.5);
}

TEST_CASE("Wronskian stays at 1 for real and complex lambda") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 8; ++rep) {
    const Potential q = (rep % 2 == 0) ? testgen::random_fourier(rng, 4, 2.0)
                                       : testgen::random_grid(rng, 13, 2.0);
    for (const Complex lam : {Complex(3.7, 0.0), Complex(-15.0, 0.0), Complex(9500.0, 0.0),
                              Complex(40.0, 25.0), Complex(-5.0, -80.0)}) {
      const FundamentalData f = fundamental(q, lam);
      CHECK(std::abs(f.wronskian() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("lambda derivatives agree with central differences") {
  std::mt19937 rng(23);
  const Potential q = testgen::random_fourier(rng, 4, 1.5);
  for (const double lam : {2.0, 57.0, 911.0, -8.0}) {
    const double d = 1e-4 * std::max(1.0, std::abs(lam));
    const std::size_t steps = asymspec::default_steps(std::abs(lam) + d);
    const FundamentalData f = fundamental(q, lam, steps);
    const FundamentalData fp = fundamental(q, lam + d, steps);
    const FundamentalData fm = fundamental(q, lam - d, steps);
    const double fd = (fp.s1.real() - fm.s1.real()) / (2.0 * d);
    CHECK(f.s1_dl.real() ==
          doctest::Approx(fd).epsilon(1e-6 * std::max(1.0, std::abs(fd) > 0 ? 1.0 : 1.0)));
    const double fdc = (fp.c1.real() - fm.c1.real()) / (2.0 * d);
    CHECK(f.c1_dl.real() == doctest::Approx(fdc).epsilon(1e-5));
  }
}

TEST_CASE("transfer matrix basics and reflection identity") {
  const asymspec::TransferMatrix t0 = transfer(Potential(), 0.0);
  CHECK(t0.a.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(t0.b.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(t0.c) < 1e-13);
  CHECK(t0.d.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(t0.det() - 1.0) < 1e-12);

  std::mt19937 rng(5);
  const Potential q = testgen::random_fourier(rng, 5, 1.0);
  const Potential qr = q.reflect();
  for (const double lam : {1.0, 12.3, 140.0, 2040.0}) {
    const FundamentalData f = fundamental(q, lam);
    const FundamentalData fr = fundamental(qr, lam);
    CHECK(std::abs(fr.c1 - f.ds1) < 1e-9);   // c(1,lambda;q~) = s'(1,lambda;q)
    CHECK(std::abs(fr.s1 - f.s1) < 1e-9);    // s(1,lambda) is reflection invariant
    CHECK(std::abs(fr.ds1 - f.c1) < 1e-9);
  }
}

TEST_CASE("transfer matrices compose across subintervals") {
  // On [0,1/2] the solution of -u'' + x u = lam u is, after rescaling to
  // [0,1], driven by the potential x/8 at lam/4, with u' picking up a factor
  // 1/2.  Composing the two half-interval matrices must reproduce the full
  // transfer matrix.
  const Potential ramp = testgen::ramp();
  const double lam = 17.0;
  const Potential left_half = Potential::grid({0.0, 1.0 / 16.0, 1.0 / 8.0});    // x/8 on [0,1]
  const Potential right_half = Potential::grid({1.0 / 8.0, 3.0 / 16.0, 0.25});  // (x+1)/8

  // 256-cell half grids line up exactly with the 512-cell full grid
  const auto tl = transfer(left_half, lam / 4.0, 256);
  const auto tr = transfer(right_half, lam / 4.0, 256);
  // conjugate by diag(1, 2): entries (a, b/2, 2c, d)
  auto scale = [](const asymspec::TransferMatrix& t) {
    return asymspec::TransferMatrix{t.a, t.b * 0.5, t.c * 2.0, t.d};
  };
  const auto sl = scale(tl), sr = scale(tr);
  const Complex a = sr.a * sl.a + sr.b * sl.c;
  const Complex b = sr.a * sl.b + sr.b * sl.d;
  const Complex c = sr.c * sl.a + sr.d * sl.c;
  const Complex d = sr.c * sl.b + sr.d * sl.d;

  const auto full = transfer(ramp, lam, 512);
  CHECK(std::abs(a - full.a) < 1e-9);
  CHECK(std::abs(b - full.b) < 1e-9);
  CHECK(std::abs(c - full.c) < 1e-9);
  CHECK(std::abs(d - full.d) < 1e-9);
}

TEST_CASE("prufer count matches closed forms and the scan oracle") {
  const Potential q0;
  CHECK(prufer_count(q0, 2.5 * pi2) == 1);
  CHECK(prufer_count(q0, 0.0) == 0);
  CHECK(prufer_count(q0, 4.5 * pi2) == 2);
  CHECK(prufer_count(q0, 100.0 * pi2 + 1.0) == 10);

  const Potential ramp = testgen::ramp();
  const auto mu = oracle::eigenvalues_by_scan(ramp, 5);
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(prufer_count(ramp, mu[n - 1] - 1e-6) == int(n) - 1);
    CHECK(prufer_count(ramp, mu[n - 1] + 1e-6) == int(n));
    // near the asymptotic gap midpoints the count must match the number of
    // scanned roots below
    const double lam = pi2 * double(n) * double(n) + 0.5;
    int below = 0;
    for (double m : mu)
      if (m < lam) ++below;
    CHECK(prufer_count(ramp, lam) == below);
  }
}

TEST_CASE("large-lambda asymptotics decay like 1/sqrt(lambda)") {
  std::mt19937 rng(31);
  const Potential q = testgen::random_fourier(rng, 4, 1.0);
  std::vector<double> scaled;
  for (double lam = 100.0; lam <= 1.1e6; lam *= 4.0) {
    const FundamentalData f = fundamental(q, lam);
    const double r = std::sqrt(lam);
    const double d1 = std::abs(f.ds1.real() - std::cos(r));
    const double d2 = std::abs(r * f.s1.real() - std::sin(r));
    scaled.push_back(std::max(d1, d2) * r);
  }
  const double fitted = 2.0 * std::max(scaled[0], scaled[1]);
  for (std::size_t i = 2; i < scaled.size(); ++i) CHECK(scaled[i] <= fitted);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS((void)fundamental(Potential(), Complex(std::nan(""), 0.0)),
                  asymspec::ArgumentError);
  CHECK_THROWS_AS((void)fundamental(Potential(), 1.0, 8), asymspec::ArgumentError);
}
