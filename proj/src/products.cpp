#include "qcong/products.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qcong {

namespace {

void check_twist_discriminant(long D) {
    long m4 = ((D % 4) + 4) % 4;
    if (D <= 1 || (m4 != 0 && m4 != 1) || is_square(D))
        throw DomainError("twist discriminant must be > 1, = 0 or 1 mod 4, and not a square; got " +
                          std::to_string(D));
}

// generalized binomial coefficient C(e, k) for integer e, exact
mpz_class binomial(const mpz_class& e, long k) {
    mpz_class num(1);
    for (long i = 0; i < k; ++i) num *= e - i;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
    return out;
}

// Horner evaluation of a polynomial (ascending coefficients) at a series
template <class R>
Series<R> eval_poly(const std::vector<typename R::Elem>& coeffs, const Series<R>& x) {
    const long big = x.trunc() + std::abs(x.valuation()) * (static_cast<long>(coeffs.size()) + 2) + 4;
    Series<R> acc = Series<R>::monomial(x.ring(), coeffs.back(), 0, big);
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it)
        acc = add(mul(acc, x), Series<R>::monomial(x.ring(), *it, 0, big));
    return acc;
}

} // namespace

long squarefree_part(long n) {
    if (n == 0) return 0;
    long sign = n < 0 ? -1 : 1;
    long m = std::abs(n);
    for (long f = 2; f * f <= m; ++f)
        while (m % (f * f) == 0) m /= f * f;
    return sign * m;
}

QuadSeries pd_series(long D, long T, int sign) {
    check_twist_discriminant(D);
    const long chD = sign >= 0 ? D : -D;
    const long r0 = squarefree_part(chD);
    const long ksq = D / std::abs(r0);
    const long k = static_cast<long>(std::lround(std::sqrt(static_cast<double>(ksq))));
    QuadExtRing ring(r0);
    std::vector<QuadExtRing::Elem> a(static_cast<std::size_t>(std::max<long>(T, 0)), ring.zero());
    for (long r = 1; r < T; ++r) {
        int kr = kronecker(chD, r);
        if (kr != 0) {
            mpq_class c(-k * kr, r);
            c.canonicalize();
            a[static_cast<std::size_t>(r)].y = c;
        }
    }
    return exp_series(QuadSeries::from_coeffs(ring, 0, std::move(a), T));
}

ZSeries BorcherdsProduct::folded() const {
    if (!rho_integral())
        throw DomainError("Weyl vector " + rho.get_str() + " is fractional; series kept separate");
    return series.shifted(rho.get_num().get_si());
}

BorcherdsProduct untwisted_product(const std::map<long, mpz_class>& exponents,
                                   const WeylVector& rho, long T) {
    ZSeries acc = ZSeries::one(IntegerRing{}, T);
    for (const auto& [n, e] : exponents) {
        if (n < 1) throw DomainError("product exponents are indexed by n >= 1");
        if (n >= T || e == 0) continue;
        std::vector<mpz_class> fac(static_cast<std::size_t>(T), 0);
        for (long kk = 0; kk * n < T; ++kk) {
            mpz_class c = binomial(e, kk);
            if (kk % 2 == 1) c = -c;
            fac[static_cast<std::size_t>(kk * n)] = c;
        }
        acc = mul(acc, ZSeries::from_coeffs(IntegerRing{}, 0, std::move(fac), T));
    }
    return {rho.rho, std::move(acc)};
}

QuadSeries twisted_product_psi(const PlusSpaceForm& f, long D, long T) {
    check_twist_discriminant(D);
    if (f.precision < D * T * T)
        throw PrecisionError("twisted_product_psi needs f_" + std::to_string(f.d) +
                             " to precision " + std::to_string(D * T * T) + ", have " +
                             std::to_string(f.precision));
    const long r0 = squarefree_part(D);
    const long k = static_cast<long>(std::lround(std::sqrt(static_cast<double>(D / r0))));
    QuadExtRing ring(r0);
    std::vector<QuadExtRing::Elem> a(static_cast<std::size_t>(std::max<long>(T, 0)), ring.zero());
    for (long m = 1; m < T; ++m) {
        mpz_class A = f.coefficient(D * m * m);
        if (A == 0) continue;
        for (long r = 1; m * r < T; ++r) {
            int kr = kronecker(D, r);
            if (kr == 0) continue;
            mpq_class term(mpz_class(-k * kr) * A, mpz_class(r));
            term.canonicalize();
            a[static_cast<std::size_t>(m * r)].y += term;
        }
    }
    return exp_series(QuadSeries::from_coeffs(ring, 0, std::move(a), T));
}

TwistedClassPolyExpansion twisted_class_polynomial_expansion(long D, long d, long T,
                                                             long digits) {
    check_twist_discriminant(D);
    if (d <= 0 || (d % 4 != 0 && d % 4 != 3))
        throw DomainError("plus-space index d must be positive with d = 0, 3 mod 4");
    if (std::gcd(D, d) != 1) throw DomainError("twist needs gcd(D, d) = 1");

    FormClassData data = reduced_forms(-d * D);
    std::vector<QuadForm> plus, minus;
    for (const QuadForm& q : data.reduced_forms) {
        int chi = genus_character(q, D, d);
        if (chi > 0) plus.push_back(q);
        else if (chi < 0) minus.push_back(q);
    }
    if (plus.size() != minus.size())
        throw DomainError("genus character split is unbalanced for disc " +
                          std::to_string(-d * D) + "; conjugate pairing impossible");
    const long deg = static_cast<long>(plus.size());
    if (digits <= 0) digits = 20 * data.class_number() + 30;

    const long r0 = squarefree_part(D);
    const long kk = static_cast<long>(std::lround(std::sqrt(static_cast<double>(D / r0))));
    QuadExtRing ring(r0);

    for (int attempt = 0;; ++attempt) {
        const auto prec = static_cast<mpfr_prec_t>((digits + 20) * 3.33) + 64;
        auto expand = [&](const std::vector<QuadForm>& forms) {
            std::vector<Complex> poly{Complex::from_real(Real::from_long(1, prec))};
            for (const QuadForm& q : forms) {
                Complex root = eval_j_at_heegner(heegner_point(q), digits);
                std::vector<Complex> next(poly.size() + 1,
                                          Complex::from_real(Real::from_long(0, prec)));
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i] = next[i] - poly[i] * root;
                    next[i + 1] = next[i + 1] + poly[i];
                }
                poly = std::move(next);
            }
            return poly;
        };
        std::vector<Complex> npoly = expand(plus), dpoly = expand(minus);

        const Real sqrtD = Real::from_long(D, prec).sqrt();
        const Real tol = Real::pow10(-(digits / 2), prec);
        const mpz_class den_bound = 1000000;
        Real residual = Real::from_long(0, prec);
        auto track = [&](const Real& r) {
            if (residual < r) residual = r;
        };
        std::vector<QuadExtRing::Elem> num, den;
        bool ok = true;
        try {
            for (long i = 0; i <= deg; ++i) {
                const Complex& nc = npoly[static_cast<std::size_t>(i)];
                const Complex& dc = dpoly[static_cast<std::size_t>(i)];
                track(nc.im.abs());
                track(dc.im.abs());
                Real s = nc.re + dc.re;
                Real t = (nc.re - dc.re) / sqrtD;
                mpq_class sv = recognize_rational(s, den_bound, tol);
                mpq_class tv = recognize_rational(t, den_bound, tol);
                track((s - Real::from_mpq(sv, prec)).abs());
                track((t - Real::from_mpq(tv, prec)).abs());
                // roots of the chi = -1 factor are the sqrt(D)-conjugates
                mpq_class x = sv / 2;
                mpq_class y = tv * kk / 2;
                num.push_back({x, y});
                den.push_back({x, -y});
            }
        } catch (const PrecisionError&) {
            ok = false;
        }
        if (ok && !(num.back().x == 1 && sgn(num.back().y) == 0)) ok = false;
        if (ok) {
            QuadSeries jq = to_quadext(j_invariant(T), ring);
            QuadSeries expansion = mul(eval_poly(num, jq), invert(eval_poly(den, jq)));
            return {expansion.truncated(T), residual.to_double(), std::move(num),
                    std::move(den)};
        }
        if (attempt >= 3)
            throw PrecisionError("twisted_class_polynomial_expansion(" + std::to_string(D) +
                                 ", " + std::to_string(d) +
                                 "): coefficient recognition failed at " +
                                 std::to_string(digits) + " digits");
        digits *= 2;
    }
}

LogDerivSeries log_deriv(const PlusSpaceForm& f, long D, long n_terms) {
    check_twist_discriminant(D);
    if (n_terms < 0) throw DomainError("n_terms must be >= 0");
    if (f.precision < D * n_terms * n_terms)
        throw PrecisionError("log_deriv needs f_" + std::to_string(f.d) + " to precision " +
                             std::to_string(D * n_terms * n_terms) + ", have " +
                             std::to_string(f.precision));
    std::vector<mpz_class> c(static_cast<std::size_t>(n_terms + 1), 0);
    for (long m = 1; m <= n_terms; ++m) {
        mpz_class A = f.coefficient(D * m * m);
        if (A == 0) continue;
        mpz_class mA = m * A;
        for (long n = 1; m * n <= n_terms; ++n) {
            int kr = kronecker(-D, n);
            if (kr == 1) c[static_cast<std::size_t>(m * n)] += mA;
            else if (kr == -1) c[static_cast<std::size_t>(m * n)] -= mA;
        }
    }
    c.erase(c.begin());
    ZSeries s = ZSeries::from_coeffs(IntegerRing{}, 1, std::move(c), n_terms + 1);
    return {f.d, D, std::move(s), n_terms};
}

LogDerivSeries log_deriv_via_product(const PlusSpaceForm& f, long D, long n_terms) {
    LogDerivSeries direct = log_deriv(f, D, n_terms);
    const long T = n_terms + 1;
    const long r0 = squarefree_part(-D);
    const long k = static_cast<long>(std::lround(std::sqrt(static_cast<double>(D / (-r0)))));
    QuadExtRing ring(r0);

    // log Psi with the (-D/r) character and radical sqrt(-D) = k sqrt(r0)
    std::vector<QuadExtRing::Elem> a(static_cast<std::size_t>(std::max<long>(T, 0)), ring.zero());
    for (long m = 1; m < T; ++m) {
        mpz_class A = f.coefficient(D * m * m);
        if (A == 0) continue;
        for (long r = 1; m * r < T; ++r) {
            int kr = kronecker(-D, r);
            if (kr == 0) continue;
            mpq_class term(mpz_class(-k * kr) * A, mpz_class(r));
            term.canonicalize();
            a[static_cast<std::size_t>(m * r)].y += term;
        }
    }
    QuadSeries psi = exp_series(QuadSeries::from_coeffs(ring, 0, std::move(a), T));
    QuadSeries lder = mul(d_operator(psi), invert(psi));

    // D(Psi)/Psi = -sqrt(-D) * L, so L is the y-part divided by -k
    std::vector<mpz_class> c;
    long val = lder.is_zero() ? 1 : lder.valuation();
    for (long e = val; e < lder.trunc(); ++e) {
        QuadExtRing::Elem x = lder.coeff(e);
        if (sgn(x.x) != 0)
            throw IdentityError("log-derivative has a rational component at q^" +
                                std::to_string(e));
        mpq_class v = x.y / mpq_class(-k);
        if (v.get_den() != 1)
            throw IdentityError("log-derivative normalization is not integral at q^" +
                                std::to_string(e));
        c.push_back(v.get_num());
    }
    ZSeries via = ZSeries::from_coeffs(IntegerRing{}, val, std::move(c), lder.trunc());
    if (!agree_up_to(via, direct.series, T))
        throw IdentityError("product-route log derivative disagrees with the divisor-sum "
                            "formula (d=" + std::to_string(f.d) + ", D=" + std::to_string(D) +
                            ")");
    return {f.d, D, std::move(via), n_terms};
}

ModSeries lhat(const PlusSpaceForm& f, long D, long p, unsigned j, const LhatContext& ctx,
               long n_terms) {
    if (p != 2 && p != 3) throw DomainError("lhat is the p in {2, 3} modification");
    if (j < 1) throw DomainError("lhat needs j >= 1");
    long pw = 1;
    for (unsigned i = 1; i < j; ++i) pw *= p;
    const unsigned mod_exp = (p == 2) ? j + 1 : j;

    ZSeries L = log_deriv(f, D, n_terms).series;

    long hdeg = 0;
    ZSeries hfac = ZSeries::one(IntegerRing{}, n_terms + 2);
    if (ctx.index > 0) {
        ClassPolynomial H = hilbert_class_polynomial(-f.d * D);
        if (H.omega_denominator != 1)
            throw DomainError("lhat: H_" + std::to_string(-f.d * D) +
                              " carries a stabilizer denominator " +
                              std::to_string(H.omega_denominator) +
                              "; only discriminants < -4 are supported here");
        hdeg = H.degree();
        const long W = n_terms + 2 + (hdeg + ctx.h_S) * pw * std::max<long>(ctx.index, 1) + 4;
        ZSeries dinv = invert(delta(W));
        std::vector<mpz_class> hc(H.coeffs.begin(), H.coeffs.end());
        hfac = pow_int(eval_poly(hc, dinv), ctx.index * pw);
    }
    const long W2 = n_terms + 2 + hdeg * ctx.index * pw + 4;
    ZSeries dpow = pow_int(delta(W2), ctx.h_S * pw);
    ZSeries prod = mul(mul(L, dpow), hfac);
    if (prod.valuation() < 1 && !prod.is_zero())
        throw DomainError("lhat has negative valuation " + std::to_string(prod.valuation()) +
                          "; h_S budget too small for disc " + std::to_string(-f.d * D));
    return reduce_mod(prod.truncated(n_terms + 1), static_cast<std::uint64_t>(p), mod_exp);
}

} // namespace qcong
