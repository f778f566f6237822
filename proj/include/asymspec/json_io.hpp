#pragma once

#include <string>

#include "asymspec/potential.hpp"

namespace asymspec {

struct SpectralTriple;         // spectrum.hpp
struct ReconstructionReport;   // inverse.hpp

/// Parse a potential from its JSON text form:
///   {"basis":"fourier","mean":<num>,"cos":[...],"sin":[...]}
///   {"basis":"grid","values":[...]}
///   {"basis":"piecewise","values":[...]}
/// Unknown fields are rejected; throws ParseError on any problem.
Potential potential_from_json(const std::string& text);
std::string potential_to_json(const Potential& q);

/// Spectral data file: {"c":...,"mu":[...],"sigma":[...],"kappa":[...],
/// "alpha":[...],"norming":[...]} with sequences indexed from n = 1.  An
/// optional "meta" object (ignored on input) echoes the defaults used.
SpectralTriple spectral_triple_from_json(const std::string& text);
std::string spectral_triple_to_json(const SpectralTriple& t);

std::string report_to_json(const ReconstructionReport& r);

}  // namespace asymspec
