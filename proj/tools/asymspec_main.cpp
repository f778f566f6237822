// asymspec command-line front end.  All numerics go through the shared
// library's C interface (asymspec.h); this file only does argument parsing,
// file IO and output formatting.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymspec.h"

namespace {

constexpr double kPi2 = 9.869604401089358;  // pi^2

struct CliError {
  int code;  // 1 = domain/convergence failure, 2 = malformed input
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(asymspec_status s, const std::string& op) {
  if (s == ASYMSPEC_OK) return;
  const int code = (s == ASYMSPEC_ERR_PARSE) ? 2 : 1;
  fail(code, op + ": " + asymspec_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(2, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// write-temp-then-rename so failed runs leave no torn files
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(1, "cannot open output file: " + path);
    out << content;
    if (!out.good()) {
      out.close();
      std::remove(tmp.c_str());
      fail(1, "write failed: " + path);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(1, "cannot move output into place: " + path);
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_file_atomic(path, content);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using PotentialPtr = std::unique_ptr<asymspec_potential, decltype(&asymspec_potential_free)>;

PotentialPtr load_potential(const std::string& path) {
  const std::string text = read_file(path);
  asymspec_potential* q = nullptr;
  check(asymspec_potential_parse_json(text.c_str(), &q), "potential '" + path + "'");
  return PotentialPtr(q, &asymspec_potential_free);
}

unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("ASYMSPEC_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return hw;
  if (v == 0) return hw;  // 0 = auto
  return static_cast<unsigned>(std::min<long>(v, hw));
}

// index-parallel sweep with deterministic, slot-addressed results
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
  const unsigned workers = std::min<std::size_t>(thread_cap(), n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(2, path + ": " + e.what());
  }
}

std::vector<double> samples_from_file(const std::string& path) {
  const nlohmann::json j = parse_json_file(path);
  const nlohmann::json& arr = j.is_array() ? j : (j.contains("samples") ? j.at("samples") : j);
  if (!arr.is_array()) fail(2, path + ": expected an array or {\"samples\":[...]}");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) fail(2, path + ": samples must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

/* ---- subcommands -------------------------------------------------------- */

int run_forward(const std::string& pot_path, double lre, double lim, std::size_t steps,
                const std::string& out_path) {
  const PotentialPtr q = load_potential(pot_path);
  asymspec_fundamental_data f{};
  check(asymspec_fundamental(q.get(), lre, lim, steps, &f), "forward");
  nlohmann::json j;
  j["lambda"] = {f.lambda_re, f.lambda_im};
  j["c1"] = {f.c1_re, f.c1_im};
  j["dc1"] = {f.dc1_re, f.dc1_im};
  j["s1"] = {f.s1_re, f.s1_im};
  j["ds1"] = {f.ds1_re, f.ds1_im};
  j["c1_dl"] = {f.c1_dl_re, f.c1_dl_im};
  j["dc1_dl"] = {f.dc1_dl_re, f.dc1_dl_im};
  j["s1_dl"] = {f.s1_dl_re, f.s1_dl_im};
  j["ds1_dl"] = {f.ds1_dl_re, f.ds1_dl_im};
  j["meta"] = {{"steps", f.steps}, {"potential", pot_path}};
  emit(out_path, j.dump() + "\n");
  return 0;
}

int run_spectrum(const std::string& pot_path, std::size_t n_max, const std::string& out_path) {
  const PotentialPtr q = load_potential(pot_path);
  asymspec_triple* t = nullptr;
  check(asymspec_spectral_triple(q.get(), n_max, &t), "spectrum");
  std::unique_ptr<asymspec_triple, decltype(&asymspec_triple_free)> tg(t, &asymspec_triple_free);
  char* text = nullptr;
  check(asymspec_triple_to_json(t, &text), "spectrum");
  std::string out(text);
  asymspec_string_free(text);
  emit(out_path, out + "\n");
  return 0;
}

int run_asym(const std::string& pot_path, double lo, double hi, std::size_t count,
             std::size_t steps, const std::string& out_path) {
  if (!(lo < hi) || count < 2) fail(2, "asym: need lambda-min < lambda-max and count >= 2");
  const PotentialPtr q = load_potential(pot_path);
  std::vector<double> re(count), im(count);
  std::vector<asymspec_status> st(count, ASYMSPEC_OK);
  parallel_for(count, [&](std::size_t i) {
    const double lam = lo + (hi - lo) * double(i) / double(count - 1);
    st[i] = asymspec_asym_eval(q.get(), lam, 0.0, steps, &re[i], &im[i]);
  });
  for (std::size_t i = 0; i < count; ++i)
    if (st[i] != ASYMSPEC_OK) fail(1, "asym: evaluation failed at grid index " + std::to_string(i));
  std::string csv = "lambda,a_re,a_im\n";
  for (std::size_t i = 0; i < count; ++i) {
    const double lam = lo + (hi - lo) * double(i) / double(count - 1);
    csv += fmt_double(lam) + "," + fmt_double(re[i]) + "," + fmt_double(im[i]) + "\n";
  }
  emit(out_path, csv);
  return 0;
}

int run_interp(const std::string& node_pot_path, const std::string& samples_path,
               const std::string& sample_pot_path, std::size_t count, std::size_t J, double lo,
               double hi, std::size_t npts, const std::string& out_path) {
  if (!(lo < hi) || npts < 2) fail(2, "interp: need lambda-min < lambda-max and count >= 2");
  const PotentialPtr p = load_potential(node_pot_path);
  asymspec_sampled* sf = nullptr;
  if (!sample_pot_path.empty()) {
    const PotentialPtr qs = load_potential(sample_pot_path);
    check(asymspec_sampled_from_potentials(p.get(), qs.get(), count, &sf), "interp");
  } else if (!samples_path.empty()) {
    const std::vector<double> vals = samples_from_file(samples_path);
    // nodes from the node potential's spectrum, weights sdot(1, mu_j) from
    // the fundamental data at each node
    asymspec_triple* t = nullptr;
    check(asymspec_spectral_triple(p.get(), vals.size(), &t), "interp");
    std::vector<double> mu(vals.size());
    size_t len = 0;
    check(asymspec_triple_sequence(t, "mu", mu.data(), mu.size(), &len), "interp");
    asymspec_triple_free(t);
    std::vector<double> weights(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
      asymspec_fundamental_data f{};
      check(asymspec_fundamental(p.get(), mu[j], 0.0, 0, &f), "interp");
      weights[j] = f.s1_dl_re;
    }
    check(asymspec_sampled_create(mu.data(), weights.data(), vals.data(), vals.size(), &sf),
          "interp");
  } else {
    fail(2, "interp: provide --samples or --sample-potential");
  }
  std::unique_ptr<asymspec_sampled, decltype(&asymspec_sampled_free)> sg(sf,
                                                                         &asymspec_sampled_free);
  std::string csv = "lambda,value,tail\n";
  for (std::size_t i = 0; i < npts; ++i) {
    const double lam = lo + (hi - lo) * double(i) / double(npts - 1);
    double v = 0.0, tail = 0.0;
    check(asymspec_interpolate(sf, p.get(), lam, J, &v, &tail), "interp");
    csv += fmt_double(lam) + "," + fmt_double(v) + "," + fmt_double(tail) + "\n";
  }
  emit(out_path, csv);
  return 0;
}

int run_resample(const std::string& samples_path, const std::string& spectral_path,
                 const std::string& out_path) {
  const std::vector<double> a = samples_from_file(samples_path);
  const std::string spec_text = read_file(spectral_path);
  asymspec_triple* t = nullptr;
  check(asymspec_triple_parse_json(spec_text.c_str(), &t), "resample");
  std::unique_ptr<asymspec_triple, decltype(&asymspec_triple_free)> tg(t, &asymspec_triple_free);
  double c = 0.0;
  check(asymspec_triple_c(t, &c), "resample");
  size_t len = 0;
  check(asymspec_triple_sequence(t, "sigma", nullptr, 0, &len), "resample");
  if (len == 0) fail(2, "resample: spectral file has no sigma sequence");
  std::vector<double> sigma(len);
  check(asymspec_triple_sequence(t, "sigma", sigma.data(), len, &len), "resample");
  std::vector<double> alpha(len), tail(len);
  check(asymspec_resample(a.data(), a.size(), c, sigma.data(), len, alpha.data(), tail.data()),
        "resample");
  nlohmann::json j;
  j["alpha"] = alpha;
  j["tail"] = tail;
  j["meta"] = {{"c", c}, {"samples", a.size()}};
  emit(out_path, j.dump() + "\n");
  return 0;
}

int run_reconstruct(const std::string& target_path, std::size_t n_modes, double tol,
                    std::size_t n_fit, std::size_t max_iter, const std::string& out_path,
                    const std::string& report_path) {
  const std::string text = read_file(target_path);
  asymspec_triple* t = nullptr;
  check(asymspec_triple_parse_json(text.c_str(), &t), "reconstruct");
  std::unique_ptr<asymspec_triple, decltype(&asymspec_triple_free)> tg(t, &asymspec_triple_free);
  size_t nmu = 0, nal = 0;
  check(asymspec_triple_sequence(t, "mu", nullptr, 0, &nmu), "reconstruct");
  check(asymspec_triple_sequence(t, "alpha", nullptr, 0, &nal), "reconstruct");
  if (nal == 0) fail(2, "reconstruct: target has no alpha sequence");
  std::size_t n = std::min(nmu, nal);
  if (n_fit > 0) {
    if (n_fit > n) fail(2, "reconstruct: n-fit exceeds the target length");
    n = n_fit;
  }
  std::vector<double> mu(n), alpha(n);
  size_t len = 0;
  check(asymspec_triple_sequence(t, "mu", mu.data(), n, &len), "reconstruct");
  check(asymspec_triple_sequence(t, "alpha", alpha.data(), n, &len), "reconstruct");

  asymspec_report* rep = nullptr;
  check(asymspec_reconstruct(mu.data(), alpha.data(), n, n_modes, tol, max_iter, &rep),
        "reconstruct");
  std::unique_ptr<asymspec_report, decltype(&asymspec_report_free)> rg(rep, &asymspec_report_free);

  asymspec_potential* qhat = nullptr;
  check(asymspec_report_recovered(rep, &qhat), "reconstruct");
  PotentialPtr qg(qhat, &asymspec_potential_free);
  char* pot_text = nullptr;
  check(asymspec_potential_to_json(qhat, &pot_text), "reconstruct");
  std::string pot_out(pot_text);
  asymspec_string_free(pot_text);

  char* rep_text = nullptr;
  check(asymspec_report_to_json(rep, &rep_text), "reconstruct");
  nlohmann::json rep_json = nlohmann::json::parse(rep_text);
  asymspec_string_free(rep_text);
  rep_json["meta"] = {{"target", target_path}, {"modes", n_modes},     {"tol", tol},
                      {"n_fit", n},            {"max_iter", max_iter}};

  emit(out_path, pot_out + "\n");
  if (!report_path.empty()) emit(report_path, rep_json.dump() + "\n");

  int converged = 0;
  check(asymspec_report_converged(rep, &converged), "reconstruct");
  if (!converged) {
    std::fprintf(stderr, "reconstruct: not converged within max-iter (see report)\n");
    return 1;
  }
  return 0;
}

int run_verify(const std::string& pot_path) {
  const PotentialPtr q = load_potential(pot_path);
  int failures = 0;
  auto row = [&](const char* name, bool ok, double value, double bound) {
    std::printf("%-28s %s   (max %.3e, bound %.3e)\n", name, ok ? "PASS" : "FAIL", value, bound);
    if (!ok) ++failures;
  };

  // Wronskian over a lambda sweep, real and complex
  {
    double worst = 0.0;
    std::vector<std::complex<double>> lams;
    for (int i = 0; i < 64; ++i) lams.emplace_back(-10.0 + 5010.0 * double(i) / 63.0, 0.0);
    lams.emplace_back(12.0, 9.0);
    lams.emplace_back(300.0, -40.0);
    for (const auto lam : lams) {
      asymspec_fundamental_data f{};
      check(asymspec_fundamental(q.get(), lam.real(), lam.imag(), 0, &f), "verify");
      const std::complex<double> c1(f.c1_re, f.c1_im), dc1(f.dc1_re, f.dc1_im),
          s1(f.s1_re, f.s1_im), ds1(f.ds1_re, f.ds1_im);
      worst = std::max(worst, std::abs(c1 * ds1 - dc1 * s1 - 1.0));
    }
    row("wronskian", worst <= 1e-10, worst, 1e-10);
  }

  // reflection identity c(1,.;q~) = s'(1,.;q)
  {
    asymspec_potential* qr = nullptr;
    check(asymspec_potential_reflect(q.get(), &qr), "verify");
    PotentialPtr qrg(qr, &asymspec_potential_free);
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double lam = -5.0 + 2000.0 * double(i) / 31.0;
      asymspec_fundamental_data f{}, fr{};
      check(asymspec_fundamental(q.get(), lam, 0.0, 0, &f), "verify");
      check(asymspec_fundamental(qr, lam, 0.0, 0, &fr), "verify");
      worst = std::max(worst, std::abs(fr.c1_re - f.ds1_re));
    }
    row("reflection identity", worst <= 1e-9, worst, 1e-9);
  }

  // odd-projection residual
  {
    double worst = 0.0;
    for (double lam : {1.0, 10.0, 50.0}) {
      double r = 0.0;
      check(asymspec_property4_residual(q.get(), lam, 0.0, 0, &r), "verify");
      worst = std::max(worst, r);
    }
    row("odd-projection residual", worst <= 1e-7, worst, 1e-7);
  }

  // alpha consistency with the asymmetry function at the eigenvalues
  {
    asymspec_triple* t = nullptr;
    check(asymspec_spectral_triple(q.get(), 16, &t), "verify");
    std::unique_ptr<asymspec_triple, decltype(&asymspec_triple_free)> tg(t,
                                                                         &asymspec_triple_free);
    std::vector<double> mu(16), alpha(16);
    size_t len = 0;
    check(asymspec_triple_sequence(t, "mu", mu.data(), 16, &len), "verify");
    check(asymspec_triple_sequence(t, "alpha", alpha.data(), 16, &len), "verify");
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      double re = 0.0, im = 0.0;
      check(asymspec_asym_eval(q.get(), mu[i], 0.0, 0, &re, &im), "verify");
      worst = std::max(worst, std::abs(re - alpha[i]));
    }
    row("alpha consistency", worst <= 1e-8, worst, 1e-8);
  }

  // interpolation round-trip on the potential's own spectrum: nodes reproduce
  // exactly, off-node values match within the reported truncation tail plus
  // the propagator's own discretization floor
  {
    asymspec_sampled* sf = nullptr;
    check(asymspec_sampled_from_potentials(q.get(), q.get(), 32, &sf), "verify");
    std::unique_ptr<asymspec_sampled, decltype(&asymspec_sampled_free)> sg(
        sf, &asymspec_sampled_free);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double lam = 7.3 + 40.0 * double(i);
      double v = 0.0, tail = 0.0, re = 0.0, im = 0.0;
      check(asymspec_interpolate(sf, q.get(), lam, 0, &v, &tail), "verify");
      check(asymspec_asym_eval(q.get(), lam, 0.0, 0, &re, &im), "verify");
      const double err = std::abs(v - re);
      worst = std::max(worst, err);
      if (err > tail + 1e-5) ok = false;
    }
    row("interpolation round-trip", ok, worst, 1e-5);
  }

  if (failures > 0) fail(1, "verify: " + std::to_string(failures) + " check(s) failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymspec: spectral asymmetry toolkit for -u'' + q u = lambda u on [0,1]"};
  app.require_subcommand(1);

  std::string pot_path, out_path, samples_path, sample_pot_path, spectral_path, target_path,
      report_path;
  double lre = 0.0, lim = 0.0, lo = 0.0, hi = 100.0, tol = 1e-8;
  std::size_t steps = 0, n_max = 16, count = 256, J = 0, n_modes = 4, n_fit = 0, max_iter = 200;

  CLI::App* forward = app.add_subcommand("forward", "fundamental solutions at one lambda");
  forward->add_option("--potential", pot_path, "potential JSON file")->required();
  forward->add_option("--lambda", lre, "spectral parameter (real part)")->required();
  forward->add_option("--lambda-im", lim, "imaginary part");
  forward->add_option("--steps", steps, "propagation cells (0 = auto)");
  forward->add_option("--output", out_path, "output JSON (default stdout)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Dirichlet spectral data");
  spectrum->add_option("--potential", pot_path)->required();
  spectrum->add_option("--n-max", n_max, "number of eigenvalues");
  spectrum->add_option("--output", out_path)->required();

  CLI::App* asym = app.add_subcommand("asym", "asymmetry function on a lambda grid (CSV)");
  asym->add_option("--potential", pot_path)->required();
  asym->add_option("--lambda-min", lo)->required();
  asym->add_option("--lambda-max", hi)->required();
  asym->add_option("--count", count, "grid points");
  asym->add_option("--steps", steps, "propagation cells (0 = auto)");
  asym->add_option("--output", out_path)->required();

  CLI::App* interp = app.add_subcommand("interp", "interpolate from spectrum samples (CSV)");
  interp->add_option("--potential", pot_path, "node-generating potential")->required();
  interp->add_option("--samples", samples_path, "JSON array of phi(mu_j)");
  interp->add_option("--sample-potential", sample_pot_path,
                     "sample this potential's asymmetry function instead");
  interp->add_option("--nodes", count, "node count when sampling a potential");
  interp->add_option("--j", J, "truncation (0 = all samples)");
  interp->add_option("--lambda-min", lo)->required();
  interp->add_option("--lambda-max", hi)->required();
  interp->add_option("--count", n_max, "evaluation grid points")->capture_default_str();
  interp->add_option("--output", out_path)->required();

  CLI::App* resample = app.add_subcommand("resample",
                                          "carry samples at pi^2 n^2 onto a spectral sequence");
  resample->add_option("--samples", samples_path, "JSON array of a(pi^2 n^2)")->required();
  resample->add_option("--spectral", spectral_path, "spectral data JSON (c, sigma)")->required();
  resample->add_option("--output", out_path)->required();

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "potential from (mu, alpha) data");
  reconstruct->add_option("--target", target_path, "spectral data JSON with mu and alpha")
      ->required();
  reconstruct->add_option("--modes", n_modes, "Fourier modes to fit");
  reconstruct->add_option("--tol", tol, "residual tolerance");
  reconstruct->add_option("--n-fit", n_fit, "constraints used (0 = all)");
  reconstruct->add_option("--max-iter", max_iter);
  reconstruct->add_option("--output", out_path, "recovered potential JSON")->required();
  reconstruct->add_option("--report", report_path, "solver report JSON");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on a potential");
  verify->add_option("--potential", pot_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "asymspec: %s\n", e.what());
    return 2;
  }

  try {
    if (forward->parsed()) return run_forward(pot_path, lre, lim, steps, out_path);
    if (spectrum->parsed()) return run_spectrum(pot_path, n_max, out_path);
    if (asym->parsed()) return run_asym(pot_path, lo, hi, count, steps, out_path);
    if (interp->parsed())
      return run_interp(pot_path, samples_path, sample_pot_path, count, J, lo, hi, n_max,
                        out_path);
    if (resample->parsed()) return run_resample(samples_path, spectral_path, out_path);
    if (reconstruct->parsed())
      return run_reconstruct(target_path, n_modes, tol, n_fit, max_iter, out_path, report_path);
    if (verify->parsed()) return run_verify(pot_path);
  } catch (const CliError& e) {
    std::fprintf(stderr, "asymspec %s\n", e.message.c_str());
    return e.code;
  }
  return 2;
}
