#pragma once

#include <map>
#include <vector>

#include "qcong/hilbert.hpp"
#include "qcong/modforms.hpp"
#include "qcong/quadforms.hpp"

namespace qcong {

// squarefree part with the sign of n: n = result * square
long squarefree_part(long n);

// Weyl vector: the rational leading exponent of an untwisted product
struct WeylVector {
    mpq_class rho;
};

// P_D(t) = exp(-sqrt(D) sum_r (D/r) t^r / r) over Q(sqrt(D)) for sign = +1;
// sign = -1 swaps the character to (-D/r) and the radical to sqrt(-D), which
// lives in the imaginary quadratic extension (negative radicand).
QuadSeries pd_series(long D, long T, int sign = +1);

struct BorcherdsProduct {
    mpq_class rho;  // stated leading exponent, kept separate from the series
    ZSeries series; // product expansion itself, valuation 0

    bool rho_integral() const { return rho.get_den() == 1; }
    // series with q^rho folded in; only for integral rho
    ZSeries folded() const;
};

// q^rho prod_{n >= 1} (1 - q^n)^{e(n)} expanded so that exponents below
// rho + T are known (factors with n >= T do not contribute there)
BorcherdsProduct untwisted_product(const std::map<long, mpz_class>& exponents,
                                   const WeylVector& rho, long T);

// Psi_D(f) = prod_m P_D(q^m)^{A(D m^2, d)} to O(q^T), Zagier's convention;
// assembled as exp of the summed factor logarithms
QuadSeries twisted_product_psi(const PlusSpaceForm& f, long D, long T);

struct TwistedClassPolyExpansion {
    QuadSeries series;               // H_{D,-d}(j) as a q-series, trunc >= T
    double recognition_residual = 0; // worst distance to the recognized value
    std::vector<QuadExtRing::Elem> numerator;   // monic polynomial, ascending
    std::vector<QuadExtRing::Elem> denominator; // monic polynomial, ascending
};

// H_{D,-d}(j(tau)) = prod (j - j(tau_Q))^{chi(Q)} over primitive reduced forms
// of discriminant -dD. Coefficients are recognized in Q(sqrt(D)) by pairing
// the chi = +1 and chi = -1 factors (sum and sqrt(D)-scaled difference are
// rational) with continued-fraction reconstruction, denominator bound 10^6.
TwistedClassPolyExpansion twisted_class_polynomial_expansion(long D, long d, long T,
                                                             long digits = 0);

// integer q-series of the normalized logarithmic derivative of Psi_D
struct LogDerivSeries {
    long d = 0;
    long D = 0;
    ZSeries series;    // coefficients known for exponents 1 .. n_terms
    long n_terms = 0;
};

// coefficient of q^k is sum_{mn = k} m A(D m^2, d) (-D/n);
// needs f.precision >= D * n_terms^2
LogDerivSeries log_deriv(const PlusSpaceForm& f, long D, long n_terms);

// the same series through (1 / -sqrt(-D)) * D(Psi)/Psi over the quadratic
// extension; throws IdentityError if the two routes disagree
LogDerivSeries log_deriv_via_product(const PlusSpaceForm& f, long D, long n_terms);

struct LhatContext {
    long h_S = 0;   // class-number budget of the discriminant set
    long index = 1; // [SL2(Z) : Gamma_0(N)]; 0 drops the class-polynomial factor
};

// L-hat_{D, p^j} = L_D * Delta^{h_S p^(j-1)} * H_{-dD}(1/Delta)^{index p^(j-1)},
// reduced mod p^(j+1) for p = 2 and mod p^j for p = 3
ModSeries lhat(const PlusSpaceForm& f, long D, long p, unsigned j, const LhatContext& ctx,
               long n_terms);

} // namespace qcong
