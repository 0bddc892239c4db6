#pragma once

#include <complex>

#include "nhising/errors.hpp"

namespace nhising {

using cplx = std::complex<double>;

// Carlson symmetric integrals, principal branch, complex arguments.
cplx carlson_rf(cplx x, cplx y, cplx z);
cplx carlson_rd(cplx x, cplx y, cplx z);

// Incomplete elliptic integral of the second kind E(phi|m), parameter
// convention: E(phi|m) = int_0^phi sqrt(1 - m sin^2 t) dt.
cplx elliptic_e(cplx phi, cplx m);

// Complete integrals E(m) = E(pi/2|m) and K(m).
cplx elliptic_e(cplx m);
cplx elliptic_k(cplx m);

// Principal Lambert W branch on [-1/e, inf).
double lambert_w0(double x);

}  // namespace nhising
