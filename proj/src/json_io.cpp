#include "asymspec/json_io.hpp"

#include <cmath>

#include <json.hpp>

#include "asymspec/errors.hpp"
#include "asymspec/inverse.hpp"
#include "asymspec/spectrum.hpp"

namespace asymspec {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(std::string(what) + ": top-level value must be an object");
  return j;
}

std::vector<double> number_array(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string("field '") + field + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const json& j, const char* field) {
  if (!j.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return j.get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError("unknown field '" + item.key() + "'");
  }
}

}  // namespace

Potential potential_from_json(const std::string& text) {
  const json j = parse_object(text, "potential");
  if (!j.contains("basis") || !j.at("basis").is_string())
    throw ParseError("potential: missing string field 'basis'");
  const std::string basis = j.at("basis").get<std::string>();
  try {
    if (basis == "fourier") {
      reject_unknown(j, {"basis", "mean", "cos", "sin"});
      const double mean = j.contains("mean") ? number(j.at("mean"), "mean") : 0.0;
      std::vector<double> c, s;
      if (j.contains("cos")) c = number_array(j.at("cos"), "cos");
      if (j.contains("sin")) s = number_array(j.at("sin"), "sin");
      return Potential::fourier(mean, std::move(c), std::move(s));
    }
    if (basis == "grid") {
      reject_unknown(j, {"basis", "values"});
      if (!j.contains("values")) throw ParseError("grid potential: missing 'values'");
      return Potential::grid(number_array(j.at("values"), "values"));
    }
    if (basis == "piecewise") {
      reject_unknown(j, {"basis", "values"});
      if (!j.contains("values")) throw ParseError("piecewise potential: missing 'values'");
      return Potential::piecewise(number_array(j.at("values"), "values"));
    }
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("potential: ") + e.what());
  }
  throw ParseError("potential: basis must be 'fourier', 'grid' or 'piecewise'");
}

std::string potential_to_json(const Potential& q) {
  json j;
  switch (q.basis()) {
    case Basis::fourier:
      j["basis"] = "fourier";
      j["mean"] = q.mean();
      j["cos"] = q.cos_coeffs();
      j["sin"] = q.sin_coeffs();
      break;
    case Basis::grid:
      j["basis"] = "grid";
      j["values"] = q.grid_values();
      break;
    case Basis::piecewise:
      j["basis"] = "piecewise";
      j["values"] = q.grid_values();
      break;
  }
  return j.dump();
}

SpectralTriple spectral_triple_from_json(const std::string& text) {
  const json j = parse_object(text, "spectral data");
  reject_unknown(j, {"c", "mu", "sigma", "kappa", "alpha", "norming", "meta"});
  SpectralTriple t;
  if (j.contains("c")) t.c = number(j.at("c"), "c");
  if (j.contains("mu")) t.mu = number_array(j.at("mu"), "mu");
  if (j.contains("sigma")) t.sigma = number_array(j.at("sigma"), "sigma");
  if (j.contains("kappa")) t.kappa = number_array(j.at("kappa"), "kappa");
  if (j.contains("alpha")) t.alpha = number_array(j.at("alpha"), "alpha");
  if (j.contains("norming")) t.norming = number_array(j.at("norming"), "norming");
  if (t.mu.empty()) throw ParseError("spectral data: missing 'mu'");
  for (std::size_t i = 1; i < t.mu.size(); ++i)
    if (!(t.mu[i] > t.mu[i - 1])) throw ParseError("spectral data: mu not strictly increasing");
  return t;
}

std::string spectral_triple_to_json(const SpectralTriple& t) {
  json j;
  j["c"] = t.c;
  j["mu"] = t.mu;
  j["sigma"] = t.sigma;
  j["kappa"] = t.kappa;
  j["alpha"] = t.alpha;
  j["norming"] = t.norming;
  json meta;
  meta["mean_estimator"] = "tail-average over the last half of mu_n - pi^2 n^2";
  meta["steps"] = t.steps;
  j["meta"] = meta;
  return j.dump();
}

std::string report_to_json(const ReconstructionReport& r) {
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residuals"] = r.residual_history;
  j["final_mu_residual"] = r.final_mu_residual;
  j["final_alpha_residual"] = r.final_alpha_residual;
  return j.dump();
}

}  // namespace asymspec
