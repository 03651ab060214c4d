#include "qcong/hilbert.hpp"

#include <cmath>
#include <string>

#include "qcong/modforms.hpp"

namespace qcong {

mpq_class recognize_rational(const Real& v, const mpz_class& den_bound, const Real& tol) {
    Real x = v;
    mpz_class p0(1), q0(0);
    mpz_class p1 = x.floor().round_to_mpz(), q1(1);
    for (int iter = 0; iter < 400; ++iter) {
        if (q1 > den_bound) break;
        mpq_class cand(p1, q1);
        cand.canonicalize();
        Real err = (v - Real::from_mpq(cand, v.prec())).abs();
        if (err < tol) return cand;
        Real frac = x - x.floor();
        if (frac.sign() == 0) break;
        x = Real::from_long(1, v.prec()) / frac;
        mpz_class a = x.floor().round_to_mpz();
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    throw PrecisionError("no rational with denominator <= " + den_bound.get_str() +
                         " within tolerance of " + v.str(25));
}

Complex eval_j_at_heegner(const HeegnerPoint& pt, long digits) {
    if (digits < 30) throw DomainError("eval_j_at_heegner needs digits >= 30");
    const auto prec = static_cast<mpfr_prec_t>((digits + 20) * 3.33) + 64;

    // tail bound: |c_n q^n| <= exp(4 pi sqrt(n) - n pi sqrt(d)/a); pick the
    // first n where that is below 10^-(digits+10)
    const double rate = M_PI * std::sqrt(static_cast<double>(pt.d)) / static_cast<double>(pt.a);
    const double target = (static_cast<double>(digits) + 10.0) * std::log(10.0);
    const long max_terms = 200000;
    long n = 1;
    while (n < max_terms && 4.0 * M_PI * std::sqrt(static_cast<double>(n)) - n * rate > -target)
        ++n;
    if (n >= max_terms)
        throw PrecisionError("eval_j_at_heegner: point too low in the upper half plane for " +
                             std::to_string(digits) + " digits");

    ZSeries j = j_invariant(n + 1); // exponents -1 .. n

    Real pi = Real::pi(prec);
    Real sd = Real::from_long(pt.d, prec).sqrt();
    Real a = Real::from_long(pt.a, prec);
    Real modulus = (-(pi * sd) / a).exp();
    Real angle = -(pi * Real::from_long(pt.b, prec)) / a;
    Real s(prec), c(prec);
    angle.sin_cos(s, c);
    Complex q{modulus * c, modulus * s};

    Complex acc = Complex::from_real(Real::from_mpz(j.coeff(n), prec));
    for (long e = n - 1; e >= 0; --e)
        acc = acc * q + Complex::from_real(Real::from_mpz(j.coeff(e), prec));
    Complex one = Complex::from_real(Real::from_long(1, prec));
    return acc + one / q;
}

ClassPolynomial hilbert_class_polynomial(long disc, long digits) {
    FormClassData data = reduced_forms(disc);
    const long h = data.class_number();
    if (digits <= 0) digits = 20 * h + 30;

    for (int attempt = 0;; ++attempt) {
        const auto prec = static_cast<mpfr_prec_t>((digits + 20) * 3.33) + 64;
        std::vector<Complex> poly;
        poly.push_back(Complex::from_real(Real::from_long(1, prec)));
        for (const QuadForm& f : data.reduced_forms) {
            Complex root = eval_j_at_heegner(heegner_point(f), digits);
            std::vector<Complex> next(poly.size() + 1,
                                      Complex::from_real(Real::from_long(0, prec)));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i] = next[i] - poly[i] * root;
                next[i + 1] = next[i + 1] + poly[i];
            }
            poly = std::move(next);
        }
        Real residual = Real::from_long(0, prec);
        std::vector<mpz_class> coeffs;
        coeffs.reserve(poly.size());
        for (const Complex& cc : poly) {
            Real r(prec);
            coeffs.push_back(cc.re.round_to_mpz(&r));
            if (residual < r) residual = r;
            Real iabs = cc.im.abs();
            if (residual < iabs) residual = iabs;
        }
        Real threshold = Real::pow10(-(digits / 2), prec);
        if (residual < threshold) {
            if (coeffs.back() != 1)
                throw Error("class polynomial is not monic (bug)");
            int omega = disc == -3 ? 3 : disc == -4 ? 2 : 1;
            return {disc, std::move(coeffs), omega, residual.to_double()};
        }
        if (attempt >= 3)
            throw PrecisionError("hilbert_class_polynomial(" + std::to_string(disc) +
                                 "): rounding residual " + residual.str(8) + " at " +
                                 std::to_string(digits) + " digits; retry with more digits");
        digits *= 2;
    }
}

} // namespace qcong
