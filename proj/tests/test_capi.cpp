// Exercises the shared library's C surface: handles, error codes, and the
// JSON formats exposed to foreign callers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>

#include "asymspec.h"

namespace {
constexpr double pi2 = std::numbers::pi * std::numbers::pi;

struct Pot {
  asymspec_potential* p = nullptr;
  ~Pot() { asymspec_potential_free(p); }
};
}  // namespace

TEST_CASE("version and error strings") {
  CHECK(std::strlen(asymspec_version()) > 0);
  double out = 0.0;
  CHECK(asymspec_potential_l2_norm(nullptr, &out) == ASYMSPEC_ERR_ARGUMENT);
  CHECK(std::strlen(asymspec_last_error()) > 0);
}

TEST_CASE("potential lifecycle through the C API") {
  Pot q;
  const double cosc[] = {0.3};
  const double sinc[] = {0.4};
  REQUIRE(asymspec_potential_fourier(0.5, cosc, 1, sinc, 1, &q.p) == ASYMSPEC_OK);

  double v = 0.0;
  CHECK(asymspec_potential_eval(q.p, 0.0, &v) == ASYMSPEC_OK);
  CHECK(v == doctest::Approx(0.8));
  CHECK(asymspec_potential_eval(q.p, 2.0, &v) == ASYMSPEC_ERR_DOMAIN);

  char* text = nullptr;
  REQUIRE(asymspec_potential_to_json(q.p, &text) == ASYMSPEC_OK);
  Pot q2;
  REQUIRE(asymspec_potential_parse_json(text, &q2.p) == ASYMSPEC_OK);
  asymspec_string_free(text);
  double d = 1.0;
  CHECK(asymspec_potential_l2_distance(q.p, q2.p, &d) == ASYMSPEC_OK);
  CHECK(d == 0.0);

  Pot bad;
  CHECK(asymspec_potential_parse_json("{\"basis\":\"x\"}", &bad.p) == ASYMSPEC_ERR_PARSE);

  Pot refl, odd, shifted;
  CHECK(asymspec_potential_reflect(q.p, &refl.p) == ASYMSPEC_OK);
  CHECK(asymspec_potential_odd_part(q.p, &odd.p) == ASYMSPEC_OK);
  CHECK(asymspec_potential_shift(q.p, 1.0, &shifted.p) == ASYMSPEC_OK);
  CHECK(asymspec_potential_eval(shifted.p, 0.0, &v) == ASYMSPEC_OK);
  CHECK(v == doctest::Approx(1.8));
}

TEST_CASE("fundamental data and eigen counting") {
  Pot q0;
  REQUIRE(asymspec_potential_fourier(0.0, nullptr, 0, nullptr, 0, &q0.p) == ASYMSPEC_OK);
  asymspec_fundamental_data f{};
  REQUIRE(asymspec_fundamental(q0.p, pi2, 0.0, 0, &f) == ASYMSPEC_OK);
  CHECK(f.c1_re == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(f.s1_re) < 1e-12);
  CHECK(f.steps == 256);

  CHECK(asymspec_fundamental(q0.p, std::nan(""), 0.0, 0, &f) == ASYMSPEC_ERR_ARGUMENT);

  int count = -1;
  CHECK(asymspec_prufer_count(q0.p, 2.5 * pi2, 0, &count) == ASYMSPEC_OK);
  CHECK(count == 1);
}

TEST_CASE("spectral triple handles and sequences") {
  Pot q;
  REQUIRE(asymspec_potential_fourier(1.5, nullptr, 0, nullptr, 0, &q.p) == ASYMSPEC_OK);
  asymspec_triple* t = nullptr;
  REQUIRE(asymspec_spectral_triple(q.p, 8, &t) == ASYMSPEC_OK);
  CHECK(asymspec_triple_size(t) == 8);
  double c = 0.0;
  CHECK(asymspec_triple_c(t, &c) == ASYMSPEC_OK);
  CHECK(c == doctest::Approx(1.5).epsilon(1e-9));
  std::vector<double> mu(8);
  size_t len = 0;
  CHECK(asymspec_triple_sequence(t, "mu", mu.data(), 8, &len) == ASYMSPEC_OK);
  CHECK(len == 8);
  CHECK(mu[0] == doctest::Approx(pi2 + 1.5).epsilon(1e-10));
  CHECK(asymspec_triple_sequence(t, "bogus", nullptr, 0, &len) == ASYMSPEC_ERR_ARGUMENT);

  char* json = nullptr;
  REQUIRE(asymspec_triple_to_json(t, &json) == ASYMSPEC_OK);
  asymspec_triple* t2 = nullptr;
  REQUIRE(asymspec_triple_parse_json(json, &t2) == ASYMSPEC_OK);
  CHECK(asymspec_triple_size(t2) == 8);
  asymspec_string_free(json);
  asymspec_triple_free(t);
  asymspec_triple_free(t2);
}

TEST_CASE("asymmetry, pole errors and symmetry classification") {
  Pot ramp;
  const double vals[] = {0.0, 0.5, 1.0};
  REQUIRE(asymspec_potential_grid(vals, 3, &ramp.p) == ASYMSPEC_OK);

  double re = 0.0, im = 0.0;
  CHECK(asymspec_asym_eval(ramp.p, pi2, 0.0, 0, &re, &im) == ASYMSPEC_OK);
  CHECK(re == doctest::Approx(-0.027295520731437983).epsilon(1e-5));
  CHECK(im == 0.0);

  double lead = 0.0;
  CHECK(asymspec_asym_leading(ramp.p, 1, &lead) == ASYMSPEC_OK);
  CHECK(lead == doctest::Approx(-1.0 / (4.0 * pi2)).epsilon(1e-12));

  Pot q0;
  REQUIRE(asymspec_potential_fourier(0.0, nullptr, 0, nullptr, 0, &q0.p) == ASYMSPEC_OK);
  double m[8];
  CHECK(asymspec_dtn(q0.p, pi2, 0.0, 0, m) == ASYMSPEC_ERR_POLE);
  CHECK(asymspec_dtn(q0.p, -1.0, 0.0, 0, m) == ASYMSPEC_OK);
  CHECK(m[0] == doctest::Approx(-std::cosh(1.0) / std::sinh(1.0)).epsilon(1e-12));

  int sym = 0;
  double maxa = 1.0;
  CHECK(asymspec_symmetry_test(q0.p, 16, &sym, &maxa) == ASYMSPEC_OK);
  CHECK(sym == 1);
  CHECK(asymspec_symmetry_test(ramp.p, 16, &sym, &maxa) == ASYMSPEC_OK);
  CHECK(sym == 0);

  double norm = 0.0;
  size_t skipped = 7;
  const double grid[] = {4.9, 15.1, 24.9};
  CHECK(asymspec_dtn_commutator_norm(ramp.p, q0.p, grid, 3, &norm, &skipped) == ASYMSPEC_OK);
  CHECK(norm > 1e-4);

  double resid = 1.0;
  CHECK(asymspec_property4_residual(ramp.p, 10.0, 0.0, 0, &resid) == ASYMSPEC_OK);
  CHECK(resid < 1e-7);
}

TEST_CASE("sampling surface") {
  Pot q0, ramp;
  REQUIRE(asymspec_potential_fourier(0.0, nullptr, 0, nullptr, 0, &q0.p) == ASYMSPEC_OK);
  const double vals[] = {0.0, 0.5, 1.0};
  REQUIRE(asymspec_potential_grid(vals, 3, &ramp.p) == ASYMSPEC_OK);

  double re = 0.0, im = 0.0;
  CHECK(asymspec_e_function(q0.p, 2.0, 0.0, &re, &im) == ASYMSPEC_OK);
  CHECK(re == doctest::Approx(std::cos(2.0)).epsilon(1e-12));
  CHECK(im == doctest::Approx(-std::sin(2.0)).epsilon(1e-12));

  CHECK(asymspec_kernel_one(q0.p, 2.0, 0.0, 5.0, 0.0, &re, &im) == ASYMSPEC_OK);
  CHECK(re == doctest::Approx(std::sin(-3.0) / -3.0).epsilon(1e-10));

  asymspec_sampled* sf = nullptr;
  REQUIRE(asymspec_sampled_from_potentials(q0.p, ramp.p, 64, &sf) == ASYMSPEC_OK);
  double v = 0.0, tail = 0.0;
  CHECK(asymspec_interpolate(sf, q0.p, 123.4, 0, &v, &tail) == ASYMSPEC_OK);
  CHECK(asymspec_asym_eval(ramp.p, 123.4, 0.0, 0, &re, &im) == ASYMSPEC_OK);
  CHECK(std::abs(v - re) <= tail);
  asymspec_sampled_free(sf);

  double k = 0.0;
  CHECK(asymspec_k_kernel(3, 3, 0.0, &k) == ASYMSPEC_OK);
  CHECK(k == 1.0);
  double kp = 0.0;
  CHECK(asymspec_k_kernel_product(3, 4, 0.7, 2000, &kp) == ASYMSPEC_OK);
  CHECK(asymspec_k_kernel(3, 4, 0.7, &k) == ASYMSPEC_OK);
  CHECK(k == doctest::Approx(kp).epsilon(1e-5));
  CHECK(asymspec_k_kernel_product(3, 4, 0.7, 10, &kp) == ASYMSPEC_ERR_ARGUMENT);

  const double a[] = {0.5, -0.25, 0.125};
  const double sigma[] = {0.0, 0.0, 0.0};
  double alpha[3], tails[3];
  CHECK(asymspec_resample(a, 3, 0.0, sigma, 3, alpha, tails) == ASYMSPEC_OK);
  CHECK(alpha[0] == 0.5);
  CHECK(alpha[2] == 0.125);
}

TEST_CASE("reconstruction through the C API") {
  Pot q;
  const double cosc[] = {0.3};
  const double sinc[] = {0.4};
  REQUIRE(asymspec_potential_fourier(0.5, cosc, 1, sinc, 1, &q.p) == ASYMSPEC_OK);
  asymspec_triple* t = nullptr;
  REQUIRE(asymspec_spectral_triple(q.p, 16, &t) == ASYMSPEC_OK);
  std::vector<double> mu(16), alpha(16);
  size_t len = 0;
  REQUIRE(asymspec_triple_sequence(t, "mu", mu.data(), 16, &len) == ASYMSPEC_OK);
  REQUIRE(asymspec_triple_sequence(t, "alpha", alpha.data(), 16, &len) == ASYMSPEC_OK);
  asymspec_triple_free(t);

  asymspec_report* rep = nullptr;
  REQUIRE(asymspec_reconstruct(mu.data(), alpha.data(), 16, 3, 1e-9, 100, &rep) == ASYMSPEC_OK);
  int conv = 0;
  CHECK(asymspec_report_converged(rep, &conv) == ASYMSPEC_OK);
  CHECK(conv == 1);
  size_t iters = 0;
  CHECK(asymspec_report_iterations(rep, &iters) == ASYMSPEC_OK);
  CHECK(iters > 0);
  double hist[32];
  size_t hlen = 0;
  CHECK(asymspec_report_residuals(rep, hist, 32, &hlen) == ASYMSPEC_OK);
  CHECK(hlen >= 2);
  double mures = 1.0, alres = 1.0;
  CHECK(asymspec_report_final_residuals(rep, &mures, &alres) == ASYMSPEC_OK);
  CHECK(mures < 1e-9);

  asymspec_potential* rec = nullptr;
  REQUIRE(asymspec_report_recovered(rep, &rec) == ASYMSPEC_OK);
  double dist = 1.0;
  CHECK(asymspec_potential_l2_distance(rec, q.p, &dist) == ASYMSPEC_OK);
  CHECK(dist < 1e-4);
  asymspec_potential_free(rec);

  char* json = nullptr;
  CHECK(asymspec_report_to_json(rep, &json) == ASYMSPEC_OK);
  CHECK(std::string(json).find("converged") != std::string::npos);
  asymspec_string_free(json);
  asymspec_report_free(rep);

  // precondition violations surface as typed errors
  asymspec_report* bad = nullptr;
  CHECK(asymspec_reconstruct(mu.data(), alpha.data(), 3, 4, 1e-9, 10, &bad) ==
        ASYMSPEC_ERR_ARGUMENT);

  double l2 = 0.0;
  int passed = 0;
  CHECK(asymspec_verify_roundtrip(q.p, 12, 2, &l2, &passed) == ASYMSPEC_OK);
  CHECK(passed == 1);

  double delta = -1.0;
  CHECK(asymspec_admissible_shift(q.p, &delta) == ASYMSPEC_OK);
  CHECK(delta == 0.0);

  double mean = 0.0;
  CHECK(asymspec_estimate_mean(mu.data(), 16, &mean) == ASYMSPEC_OK);
  CHECK(mean == doctest::Approx(0.5).epsilon(2e-3));
}
