#pragma once

#include <complex>
#include <vector>

#include "knotrep/laurent.hpp"

namespace knotrep {

// all complex roots of a rational polynomial (double precision, Durand-Kerner);
// intended for locating roots, not for certification
std::vector<std::complex<double>> complex_roots(const PolyQ& p);

// the root closest to `near`, with its distance
std::complex<double> closest_root(const PolyQ& p, std::complex<double> near, double* dist = nullptr);

} // namespace knotrep
