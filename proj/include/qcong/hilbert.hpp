#pragma once

#include <vector>

#include <gmpxx.h>

#include "qcong/numeric.hpp"
#include "qcong/quadforms.hpp"

namespace qcong {

// Monic integer polynomial prod (X - j(tau_Q)) over the primitive reduced
// forms of `disc`. For disc = -3 (resp. -4) the true Hilbert class polynomial
// is the stored polynomial raised to 1/omega_denominator.
struct ClassPolynomial {
    long disc = 0;
    std::vector<mpz_class> coeffs; // ascending, coeffs.back() == 1
    int omega_denominator = 1;
    double rounding_residual = 0.0;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// j(tau_Q) with enough series terms that the tail is below 10^-digits.
// Throws PrecisionError when the requested accuracy would need more terms
// than the configured ceiling (points very low in the upper half plane).
Complex eval_j_at_heegner(const HeegnerPoint& pt, long digits);

// digits = 0 picks the default 20*h(disc) + 30; retries with doubled digits
// until the rounding residual is below 10^-digits/2
ClassPolynomial hilbert_class_polynomial(long disc, long digits = 0);

} // namespace qcong
