#include "asymspec.h"

#include <cstring>
#include <string>
#include <vector>

#include "asymspec/asymmetry.hpp"
#include "asymspec/errors.hpp"
#include "asymspec/inverse.hpp"
#include "asymspec/json_io.hpp"
#include "asymspec/potential.hpp"
#include "asymspec/propagator.hpp"
#include "asymspec/sampling.hpp"
#include "asymspec/spectrum.hpp"

struct asymspec_potential {
  asymspec::Potential v;
};
struct asymspec_triple {
  asymspec::SpectralTriple v;
};
struct asymspec_sampled {
  asymspec::SampledEntireFunction v;
};
struct asymspec_report {
  asymspec::ReconstructionReport v;
};

namespace {

thread_local std::string g_last_error;

asymspec_status classify_current_exception() {
  try {
    throw;
  } catch (const asymspec::DomainError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_DOMAIN;
  } catch (const asymspec::ArgumentError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_ARGUMENT;
  } catch (const asymspec::ConvergenceError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_CONVERGENCE;
  } catch (const asymspec::PoleError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_POLE;
  } catch (const asymspec::InconsistencyError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_INCONSISTENT;
  } catch (const asymspec::PreconditionError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_PRECONDITION;
  } catch (const asymspec::ParseError& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ASYMSPEC_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return ASYMSPEC_ERR_UNKNOWN;
  }
}

template <typename F>
asymspec_status guarded(F&& f) {
  try {
    f();
    return ASYMSPEC_OK;
  } catch (...) {
    return classify_current_exception();
  }
}

asymspec_status require(bool ok, const char* message) {
  if (ok) return ASYMSPEC_OK;
  g_last_error = message;
  return ASYMSPEC_ERR_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_fundamental(const asymspec::FundamentalData& f, asymspec_fundamental_data* out) {
  out->lambda_re = f.lambda.real();
  out->lambda_im = f.lambda.imag();
  out->c1_re = f.c1.real();
  out->c1_im = f.c1.imag();
  out->dc1_re = f.dc1.real();
  out->dc1_im = f.dc1.imag();
  out->s1_re = f.s1.real();
  out->s1_im = f.s1.imag();
  out->ds1_re = f.ds1.real();
  out->ds1_im = f.ds1.imag();
  out->c1_dl_re = f.c1_dl.real();
  out->c1_dl_im = f.c1_dl.imag();
  out->dc1_dl_re = f.dc1_dl.real();
  out->dc1_dl_im = f.dc1_dl.imag();
  out->s1_dl_re = f.s1_dl.real();
  out->s1_dl_im = f.s1_dl.imag();
  out->ds1_dl_re = f.ds1_dl.real();
  out->ds1_dl_im = f.ds1_dl.imag();
  out->steps = f.steps;
}

std::vector<double> to_vector(const double* p, size_t n) {
  return p ? std::vector<double>(p, p + n) : std::vector<double>();
}

}  // namespace

extern "C" {

ASYMSPEC_API const char* asymspec_version(void) { return "0.1.0"; }

ASYMSPEC_API const char* asymspec_last_error(void) { return g_last_error.c_str(); }

ASYMSPEC_API void asymspec_string_free(char* s) { delete[] s; }

/* ---- potentials ------------------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_potential_parse_json(const char* text, asymspec_potential** out) {
  if (asymspec_status s = require(text && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_potential{asymspec::potential_from_json(text)}; });
}

ASYMSPEC_API asymspec_status asymspec_potential_to_json(const asymspec_potential* q, char** out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(asymspec::potential_to_json(q->v)); });
}

ASYMSPEC_API asymspec_status asymspec_potential_fourier(double mean, const double* cos_coeffs, size_t n_cos,
                                           const double* sin_coeffs, size_t n_sin,
                                           asymspec_potential** out) {
  if (asymspec_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = new asymspec_potential{asymspec::Potential::fourier(
        mean, to_vector(cos_coeffs, n_cos), to_vector(sin_coeffs, n_sin))};
  });
}

ASYMSPEC_API asymspec_status asymspec_potential_grid(const double* values, size_t n, asymspec_potential** out) {
  if (asymspec_status s = require(values && out, "null argument")) return s;
  return guarded(
      [&] { *out = new asymspec_potential{asymspec::Potential::grid(to_vector(values, n))}; });
}

ASYMSPEC_API asymspec_status asymspec_potential_piecewise(const double* values, size_t n,
                                             asymspec_potential** out) {
  if (asymspec_status s = require(values && out, "null argument")) return s;
  return guarded([&] {
    *out = new asymspec_potential{asymspec::Potential::piecewise(to_vector(values, n))};
  });
}

ASYMSPEC_API void asymspec_potential_free(asymspec_potential* q) { delete q; }

ASYMSPEC_API asymspec_status asymspec_potential_eval(const asymspec_potential* q, double x, double* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = q->v.evaluate(x); });
}

ASYMSPEC_API asymspec_status asymspec_potential_reflect(const asymspec_potential* q, asymspec_potential** out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_potential{q->v.reflect()}; });
}

ASYMSPEC_API asymspec_status asymspec_potential_odd_part(const asymspec_potential* q,
                                            asymspec_potential** out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_potential{q->v.odd_part()}; });
}

ASYMSPEC_API asymspec_status asymspec_potential_shift(const asymspec_potential* q, double delta,
                                         asymspec_potential** out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_potential{q->v.shift(delta)}; });
}

ASYMSPEC_API asymspec_status asymspec_potential_l2_norm(const asymspec_potential* q, double* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = q->v.l2_norm(); });
}

ASYMSPEC_API asymspec_status asymspec_potential_l2_distance(const asymspec_potential* a,
                                               const asymspec_potential* b, double* out) {
  if (asymspec_status s = require(a && b && out, "null argument")) return s;
  return guarded([&] { *out = asymspec::l2_distance(a->v, b->v); });
}

/* ---- fundamental solutions -------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_fundamental(const asymspec_potential* q, double lambda_re,
                                     double lambda_im, size_t steps,
                                     asymspec_fundamental_data* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] {
    fill_fundamental(asymspec::fundamental(q->v, {lambda_re, lambda_im}, steps), out);
  });
}

ASYMSPEC_API asymspec_status asymspec_prufer_count(const asymspec_potential* q, double lambda, size_t steps,
                                      int* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = asymspec::prufer_count(q->v, lambda, steps); });
}

/* ---- spectral data ----------------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_spectral_triple(const asymspec_potential* q, size_t n_max,
                                         asymspec_triple** out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_triple{asymspec::spectral_triple(q->v, n_max)}; });
}

ASYMSPEC_API asymspec_status asymspec_triple_parse_json(const char* text, asymspec_triple** out) {
  if (asymspec_status s = require(text && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_triple{asymspec::spectral_triple_from_json(text)}; });
}

ASYMSPEC_API asymspec_status asymspec_triple_to_json(const asymspec_triple* t, char** out) {
  if (asymspec_status s = require(t && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(asymspec::spectral_triple_to_json(t->v)); });
}

ASYMSPEC_API void asymspec_triple_free(asymspec_triple* t) { delete t; }

ASYMSPEC_API size_t asymspec_triple_size(const asymspec_triple* t) { return t ? t->v.mu.size() : 0; }

ASYMSPEC_API asymspec_status asymspec_triple_c(const asymspec_triple* t, double* out) {
  if (asymspec_status s = require(t && out, "null argument")) return s;
  *out = t->v.c;
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_triple_sequence(const asymspec_triple* t, const char* field, double* buf,
                                         size_t cap, size_t* len) {
  if (asymspec_status s = require(t && field && len, "null argument")) return s;
  const std::vector<double>* v = nullptr;
  const std::string f = field;
  if (f == "mu")
    v = &t->v.mu;
  else if (f == "sigma")
    v = &t->v.sigma;
  else if (f == "kappa")
    v = &t->v.kappa;
  else if (f == "alpha")
    v = &t->v.alpha;
  else if (f == "norming")
    v = &t->v.norming;
  else
    return require(false, "unknown spectral sequence name");
  *len = v->size();
  if (buf)
    for (size_t i = 0; i < cap && i < v->size(); ++i) buf[i] = (*v)[i];
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_estimate_mean(const double* mu, size_t n, double* out) {
  if (asymspec_status s = require(mu && out, "null argument")) return s;
  return guarded([&] { *out = asymspec::estimate_mean(to_vector(mu, n)); });
}

ASYMSPEC_API asymspec_status asymspec_admissible_shift(const asymspec_potential* q, double* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = asymspec::admissible_shift(q->v); });
}

/* ---- asymmetry function ------------------------------------------------ */

ASYMSPEC_API asymspec_status asymspec_asym_eval(const asymspec_potential* q, double lambda_re, double lambda_im,
                                   size_t steps, double* out_re, double* out_im) {
  if (asymspec_status s = require(q && out_re && out_im, "null argument")) return s;
  return guarded([&] {
    const asymspec::Complex a = asymspec::asym_eval(q->v, {lambda_re, lambda_im}, steps);
    *out_re = a.real();
    *out_im = a.imag();
  });
}

ASYMSPEC_API asymspec_status asymspec_asym_leading(const asymspec_potential* q, int n, double* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] { *out = asymspec::asym_leading(q->v, n); });
}

ASYMSPEC_API asymspec_status asymspec_dtn(const asymspec_potential* q, double lambda_re, double lambda_im,
                             size_t steps, double out[8]) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded([&] {
    const asymspec::DtNMatrix m = asymspec::dtn(q->v, {lambda_re, lambda_im}, steps);
    out[0] = m.n00.real();
    out[1] = m.n00.imag();
    out[2] = m.n01.real();
    out[3] = m.n01.imag();
    out[4] = m.n10.real();
    out[5] = m.n10.imag();
    out[6] = m.n11.real();
    out[7] = m.n11.imag();
  });
}

ASYMSPEC_API asymspec_status asymspec_dtn_commutator_norm(const asymspec_potential* q1,
                                             const asymspec_potential* q2, const double* grid,
                                             size_t n, double* out_max, size_t* skipped) {
  if (asymspec_status s = require(q1 && q2 && grid && out_max, "null argument")) return s;
  return guarded([&] {
    const asymspec::CommutatorScan scan =
        asymspec::dtn_commutator_norm(q1->v, q2->v, to_vector(grid, n));
    *out_max = scan.max_norm;
    if (skipped) *skipped = scan.skipped.size();
  });
}

ASYMSPEC_API asymspec_status asymspec_property4_residual(const asymspec_potential* q, double lambda_re,
                                            double lambda_im, size_t steps, double* out) {
  if (asymspec_status s = require(q && out, "null argument")) return s;
  return guarded(
      [&] { *out = asymspec::property4_residual(q->v, {lambda_re, lambda_im}, steps); });
}

ASYMSPEC_API asymspec_status asymspec_symmetry_test(const asymspec_potential* q, size_t grid_size,
                                       int* is_symmetric, double* max_abs_a) {
  if (asymspec_status s = require(q && is_symmetric && max_abs_a, "null argument")) return s;
  return guarded([&] {
    const asymspec::SymmetryReport rep = asymspec::symmetry_test(q->v, grid_size);
    *is_symmetric = rep.symmetric ? 1 : 0;
    *max_abs_a = rep.max_abs_a;
  });
}

/* ---- sampling / interpolation ------------------------------------------ */

ASYMSPEC_API asymspec_status asymspec_e_function(const asymspec_potential* q, double omega_re, double omega_im,
                                    double* out_re, double* out_im) {
  if (asymspec_status s = require(q && out_re && out_im, "null argument")) return s;
  return guarded([&] {
    const asymspec::Complex e = asymspec::e_function(q->v, {omega_re, omega_im});
    *out_re = e.real();
    *out_im = e.imag();
  });
}

ASYMSPEC_API asymspec_status asymspec_kernel_one(const asymspec_potential* q, double alpha_re, double alpha_im,
                                    double beta_re, double beta_im, double* out_re,
                                    double* out_im) {
  if (asymspec_status s = require(q && out_re && out_im, "null argument")) return s;
  return guarded([&] {
    const asymspec::Complex k =
        asymspec::kernel_one(q->v, {alpha_re, alpha_im}, {beta_re, beta_im});
    *out_re = k.real();
    *out_im = k.imag();
  });
}

ASYMSPEC_API asymspec_status asymspec_sampled_create(const double* nodes, const double* weights,
                                        const double* samples, size_t n, asymspec_sampled** out) {
  if (asymspec_status s = require(nodes && weights && samples && out, "null argument")) return s;
  return guarded([&] {
    *out = new asymspec_sampled{
        {to_vector(nodes, n), to_vector(weights, n), to_vector(samples, n)}};
  });
}

ASYMSPEC_API asymspec_status asymspec_sampled_from_potentials(const asymspec_potential* node_potential,
                                                 const asymspec_potential* sample_potential,
                                                 size_t count, asymspec_sampled** out) {
  if (asymspec_status s = require(node_potential && sample_potential && out, "null argument"))
    return s;
  return guarded([&] {
    *out = new asymspec_sampled{
        asymspec::sample_asymmetry(node_potential->v, sample_potential->v, count)};
  });
}

ASYMSPEC_API void asymspec_sampled_free(asymspec_sampled* s) { delete s; }

ASYMSPEC_API asymspec_status asymspec_interpolate(const asymspec_sampled* s,
                                     const asymspec_potential* node_potential, double lambda,
                                     size_t J, double* value, double* tail) {
  if (asymspec_status st = require(s && node_potential && value, "null argument")) return st;
  return guarded([&] {
    const asymspec::InterpolationResult r =
        asymspec::interpolate(s->v, node_potential->v, lambda, J);
    *value = r.value;
    if (tail) *tail = r.tail_bound;
  });
}

ASYMSPEC_API asymspec_status asymspec_k_kernel(int n, int j, double c_n, double* out) {
  if (asymspec_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] { *out = asymspec::k_kernel(n, j, c_n); });
}

ASYMSPEC_API asymspec_status asymspec_k_kernel_product(int n, int j, double c_n, size_t factors, double* out) {
  if (asymspec_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] { *out = asymspec::k_kernel_product_oracle(n, j, c_n, factors); });
}

ASYMSPEC_API asymspec_status asymspec_resample(const double* a, size_t n_a, double c, const double* sigma,
                                  size_t n_sigma, double* alpha, double* tail) {
  if (asymspec_status s = require(a && sigma && alpha, "null argument")) return s;
  return guarded([&] {
    const asymspec::ResampleResult r =
        asymspec::resample(to_vector(a, n_a), c, to_vector(sigma, n_sigma));
    for (size_t i = 0; i < n_sigma; ++i) alpha[i] = r.alpha[i];
    if (tail)
      for (size_t i = 0; i < n_sigma; ++i) tail[i] = r.tail[i];
  });
}

/* ---- reconstruction ----------------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_reconstruct(const double* mu, const double* alpha, size_t n_fit,
                                     size_t n_modes, double tol, size_t max_iter,
                                     asymspec_report** out) {
  if (asymspec_status s = require(mu && alpha && out, "null argument")) return s;
  return guarded([&] {
    asymspec::ReconstructionTarget t;
    t.mu = to_vector(mu, n_fit);
    t.alpha = to_vector(alpha, n_fit);
    t.n_fit = n_fit;
    *out = new asymspec_report{asymspec::reconstruct(t, n_modes, tol, max_iter)};
  });
}

ASYMSPEC_API asymspec_status asymspec_isospectral_partner(const asymspec_potential* p, const double* new_alpha,
                                             size_t n, size_t n_modes, double tol,
                                             size_t max_iter, asymspec_report** out) {
  if (asymspec_status s = require(p && new_alpha && out, "null argument")) return s;
  return guarded([&] {
    *out = new asymspec_report{
        asymspec::isospectral_partner(p->v, to_vector(new_alpha, n), n_modes, tol, max_iter)};
  });
}

ASYMSPEC_API void asymspec_report_free(asymspec_report* r) { delete r; }

ASYMSPEC_API asymspec_status asymspec_report_recovered(const asymspec_report* r, asymspec_potential** out) {
  if (asymspec_status s = require(r && out, "null argument")) return s;
  return guarded([&] { *out = new asymspec_potential{r->v.recovered}; });
}

ASYMSPEC_API asymspec_status asymspec_report_converged(const asymspec_report* r, int* out) {
  if (asymspec_status s = require(r && out, "null argument")) return s;
  *out = r->v.converged ? 1 : 0;
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_report_iterations(const asymspec_report* r, size_t* out) {
  if (asymspec_status s = require(r && out, "null argument")) return s;
  *out = r->v.iterations;
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_report_residuals(const asymspec_report* r, double* buf, size_t cap,
                                          size_t* len) {
  if (asymspec_status s = require(r && len, "null argument")) return s;
  *len = r->v.residual_history.size();
  if (buf)
    for (size_t i = 0; i < cap && i < r->v.residual_history.size(); ++i)
      buf[i] = r->v.residual_history[i];
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_report_final_residuals(const asymspec_report* r, double* mu_residual,
                                                double* alpha_residual) {
  if (asymspec_status s = require(r != nullptr, "null argument")) return s;
  if (mu_residual) *mu_residual = r->v.final_mu_residual;
  if (alpha_residual) *alpha_residual = r->v.final_alpha_residual;
  return ASYMSPEC_OK;
}

ASYMSPEC_API asymspec_status asymspec_report_to_json(const asymspec_report* r, char** out) {
  if (asymspec_status s = require(r && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(asymspec::report_to_json(r->v)); });
}

ASYMSPEC_API asymspec_status asymspec_verify_roundtrip(const asymspec_potential* q, size_t n_fit,
                                          size_t n_modes, double* l2_error, int* passed) {
  if (asymspec_status s = require(q && l2_error && passed, "null argument")) return s;
  return guarded([&] {
    const asymspec::RoundtripReport rr = asymspec::verify_roundtrip(q->v, n_fit, n_modes);
    *l2_error = rr.l2_error;
    *passed = rr.passed ? 1 : 0;
  });
}

} /* extern "C" */
