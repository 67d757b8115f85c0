#pragma once

#include <complex>

// Plain power-series evaluators used as cross-check oracles. No analytic
// continuation: the Gauss series is only summed inside the unit disk.

namespace heunkit::reference {

using cplx = std::complex<double>;

/// 2F1(a, b; c; z) for |z| < 1. Throws PoleParameter for c in {0, -1, -2, ...},
/// SlowConvergence when |z| >= 1 or the series fails to settle.
cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z);

/// 1F1(a; c; z). Throws PoleParameter for c in {0, -1, -2, ...}.
cplx confluent_1f1(cplx a, cplx c, cplx z);

/// True when c is a non-positive integer to within 1e-12.
bool is_pole_parameter(cplx c);

} // namespace heunkit::reference
