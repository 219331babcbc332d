#pragma once

#include <string>
#include <vector>

#include "posetk/bratteli.hpp"
#include "posetk/ktheory.hpp"
#include "posetk/spectrum.hpp"
#include "posetk/topology.hpp"

namespace posetk {

std::string emit_dot(const Poset& p, const HasseDiagram& h);
std::string emit_dot(const BratteliDiagram& d);
std::string emit_dot(const PrimSpectrum& s);

// Coordinates of the stable level: node labels for poset diagrams, a, b, c,
// ... otherwise.
std::vector<std::string> coordinate_names(const BratteliDiagram& d);
std::vector<std::string> letter_names(Eigen::Index k);

// "x1 + 2*x3 - x4"; "0" for the zero form.
std::string format_form(const IntVector& form, const std::vector<std::string>& names);

// Component of T^m v as a polynomial in m.
std::string format_polynomial(const ComponentPolynomial& poly, const std::vector<std::string>& names);

std::string cone_report(const ConeDescription& cone, const std::vector<std::string>& names);

std::string level_report(const BratteliDiagram& d);
std::string ideal_report(const BratteliDiagram& d);

// Hasse levels followed by the covering pairs.
std::string hasse_report(const Poset& p, const HasseDiagram& h);

}  // namespace posetk
