#pragma once

#include <vector>

#include "qcong/series.hpp"

namespace qcong {

// k-th Bernoulli number, exact; computed by the defining recurrence and cached
mpq_class bernoulli(unsigned k);

// theta = 1 + 2 sum q^{n^2}, coefficients known for exponents < T
ZSeries theta(long T);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n over the rationals
QSeries eisenstein(unsigned k, long T);

// E_k for the weights where the q-coefficient is integral (k = 4, 6, 8, 10, 14)
ZSeries eisenstein_integral(unsigned k, long T);

// prod_{n>=1} (1 - q^n)^24 via the pentagonal number expansion
ZSeries eta_power24(long T);

ZSeries delta(long T);

// Klein j; valuation -1, coefficients known for exponents < T
ZSeries j_invariant(long T);

// Basis element f_d of the weight-1/2 plus space: q^{-d} + sum A(D,d) q^D.
// `precision` is inclusive: A(D, d) is known for D <= precision.
struct PlusSpaceForm {
    long d = 0;
    ZSeries series;
    long precision = 0;

    mpz_class coefficient(long D) const { return series.coeff(D); }
    // exponents outside {0, 1} mod 4 vanish (principal part aside)
    bool plus_space_supported() const;
};

// f_0 = theta as a basis element
PlusSpaceForm f0(long precision);

// f_3 from the theta/E_10 Rankin-Cohen-style formula, verified integral with
// principal part exactly q^{-3}
PlusSpaceForm f3(long precision);

// All f_d for d <= d_max, d = 0, 3 mod 4, each to the given inclusive
// precision. Built by multiplying f_{d-4} with j(q^4) and eliminating lower
// basis elements; internal headroom precision + 4 d_max is handled here.
std::vector<PlusSpaceForm> kohnen_basis(long d_max, long precision);

// single basis element (builds the chain below d as needed)
PlusSpaceForm fd(long d, long precision);

// s = 1 (mod m) coefficientwise; denominators must be coprime to m, so this
// is congruence in the ring of m-integral rationals
bool congruent_one_mod(const QSeries& s, long m);

} // namespace qcong
