#include "qcong/modforms.hpp"

#include <map>
#include <mutex>
#include <string>

namespace qcong {

namespace {

std::vector<mpq_class> g_bernoulli{mpq_class(1)};
std::mutex g_bernoulli_mutex;

// sigma_{k-1}(n) for n = 1..T-1 by sieving over divisors
std::vector<mpz_class> divisor_power_sums(unsigned k, long T) {
    std::vector<mpz_class> s(static_cast<std::size_t>(std::max<long>(T, 1)), 0);
    for (long d = 1; d < T; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k - 1);
        for (long n = d; n < T; n += d) s[static_cast<std::size_t>(n)] += dk;
    }
    return s;
}

} // namespace

mpq_class bernoulli(unsigned k) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    while (g_bernoulli.size() <= k) {
        const unsigned m = static_cast<unsigned>(g_bernoulli.size());
        // sum_{i=0}^{m} C(m+1, i) B_i = 0
        mpq_class acc(0);
        mpz_class binom(1); // C(m+1, 0)
        for (unsigned i = 0; i < m; ++i) {
            acc += mpq_class(binom) * g_bernoulli[i];
            binom = binom * (m + 1 - i) / (i + 1);
        }
        g_bernoulli.push_back(-acc / mpq_class(binom)); // binom = C(m+1, m) = m+1
    }
    return g_bernoulli[k];
}

ZSeries theta(long T) {
    std::vector<mpz_class> c(static_cast<std::size_t>(std::max<long>(T, 0)), 0);
    if (T > 0) c[0] = 1;
    for (long n = 1; n * n < T; ++n) c[static_cast<std::size_t>(n * n)] = 2;
    return ZSeries::from_coeffs(IntegerRing{}, 0, std::move(c), T);
}

QSeries eisenstein(unsigned k, long T) {
    if (k < 4 || k % 2 != 0) throw DomainError("eisenstein needs even k >= 4");
    const mpq_class factor = mpq_class(-2L * k) / bernoulli(k);
    auto sums = divisor_power_sums(k, T);
    std::vector<mpq_class> c(static_cast<std::size_t>(std::max<long>(T, 0)));
    if (T > 0) c[0] = 1;
    for (long n = 1; n < T; ++n) c[static_cast<std::size_t>(n)] = factor * mpq_class(sums[static_cast<std::size_t>(n)]);
    return QSeries::from_coeffs(RationalRing{}, 0, std::move(c), T);
}

ZSeries eisenstein_integral(unsigned k, long T) { return to_integer(eisenstein(k, T)); }

ZSeries eta_power24(long T) {
    std::vector<mpz_class> e(static_cast<std::size_t>(std::max<long>(T, 1)), 0);
    e[0] = 1;
    for (long k = 1;; ++k) {
        const long p1 = k * (3 * k - 1) / 2;
        const long p2 = k * (3 * k + 1) / 2;
        if (p1 >= T && p2 >= T) break;
        const long s = (k % 2 == 0) ? 1 : -1;
        if (p1 < T) e[static_cast<std::size_t>(p1)] += s;
        if (p2 < T) e[static_cast<std::size_t>(p2)] += s;
    }
    ZSeries E = ZSeries::from_coeffs(IntegerRing{}, 0, std::move(e), T);
    ZSeries E2 = mul(E, E);
    ZSeries E4 = mul(E2, E2);
    ZSeries E8 = mul(E4, E4);
    ZSeries E16 = mul(E8, E8);
    return mul(E16, E8);
}

ZSeries delta(long T) { return eta_power24(T - 1).shifted(1); }

ZSeries j_invariant(long T) {
    ZSeries e4 = eisenstein_integral(4, T + 1);
    ZSeries e43 = mul(mul(e4, e4), e4);
    ZSeries uinv = invert(eta_power24(T + 1));
    return mul(e43, uinv).shifted(-1);
}

bool PlusSpaceForm::plus_space_supported() const {
    for (long e = series.valuation(); e < series.trunc(); ++e) {
        const long m = ((e % 4) + 4) % 4;
        if (m == 2 || m == 3) {
            if (e == -d) continue;
            if (sgn(series.coeff(e)) != 0) return false;
        }
    }
    return true;
}

PlusSpaceForm f0(long precision) {
    return {0, theta(precision + 1), precision};
}

PlusSpaceForm f3(long precision) {
    const long P = precision;
    const long Tt = (P + 4) / 4 + 4; // working truncation in t = q^4
    ZSeries e10 = eisenstein_integral(10, Tt);
    ZSeries de10 = d_operator(e10);

    // theta split by exponent mod 4: theta(q) = th0(q^4) + q*th1(q^4), and the
    // same split of D(theta)
    std::vector<mpz_class> th0(static_cast<std::size_t>(Tt), 0), th1(th0), dt0(th0), dt1(th0);
    th0[0] = 1;
    for (long k = 1; k * k < Tt; ++k) {
        th0[static_cast<std::size_t>(k * k)] = 2;
        dt0[static_cast<std::size_t>(k * k)] = 2 * (2 * k) * (2 * k);
    }
    for (long k = 0; k * k + k < Tt; ++k) {
        th1[static_cast<std::size_t>(k * k + k)] = 2;
        dt1[static_cast<std::size_t>(k * k + k)] = 2 * (2 * k + 1) * (2 * k + 1);
    }
    auto S = [&](std::vector<mpz_class> v) {
        return ZSeries::from_coeffs(IntegerRing{}, 0, std::move(v), Tt);
    };
    ZSeries five = ZSeries::monomial(IntegerRing{}, 5, 0, Tt);
    ZSeries n0 = sub(mul(S(std::move(th0)), de10), mul(mul(five, S(std::move(dt0))), e10));
    ZSeries n1 = sub(mul(S(std::move(th1)), de10), mul(mul(five, S(std::move(dt1))), e10));
    ZSeries uinv = invert(eta_power24(Tt)); // Delta(t) = t * eta24(t)
    ZSeries r0 = mul(n0, uinv);
    ZSeries r1 = mul(n1, uinv);

    // reassemble in q: r0 lands on exponents 4n-4, r1 on 4n-3, plus 304*theta
    const long qtrunc = 4 * std::min(r0.trunc(), r1.trunc()) - 4;
    std::map<long, mpz_class> acc;
    for (long n = r0.valuation(); n < r0.trunc(); ++n) {
        mpz_class c = r0.coeff(n);
        if (c != 0) acc[4 * n - 4] += c;
    }
    for (long n = r1.valuation(); n < r1.trunc(); ++n) {
        mpz_class c = r1.coeff(n);
        if (c != 0) acc[4 * n - 3] += c;
    }
    for (long n = 0; n * n < qtrunc; ++n) acc[n * n] += (n == 0 ? 304 : 608);
    const long val = acc.begin()->first;
    std::vector<mpz_class> cs(static_cast<std::size_t>(qtrunc - val), 0);
    for (auto& [e, c] : acc)
        if (e < qtrunc) cs[static_cast<std::size_t>(e - val)] = c;
    ZSeries raw = ZSeries::from_coeffs(IntegerRing{}, val, std::move(cs), qtrunc);
    ZSeries f;
    try {
        f = divexact_long(raw, -10).truncated(P + 1);
    } catch (const DomainError& e) {
        throw Error(std::string("f3 produced a non-integral series (bug): ") + e.what());
    }
    if (f.valuation() != -3 || f.coeff(-3) != 1 || f.coeff(-2) != 0 || f.coeff(-1) != 0 ||
        f.coeff(0) != 0)
        throw Error("f3 principal part is not q^-3 (bug)");
    return {3, std::move(f), P};
}

std::vector<PlusSpaceForm> kohnen_basis(long d_max, long precision) {
    if (d_max < 0) throw DomainError("kohnen_basis needs d_max >= 0");
    const long P = precision;
    const long Pint = P + 4 * d_max + 8;
    std::map<long, ZSeries> built;
    built.emplace(0, theta(Pint + 1));
    if (d_max >= 3) built.emplace(3, f3(Pint).series);

    std::vector<long> ds;
    for (long d = 4; d <= d_max; ++d)
        if (d % 4 == 0 || d % 4 == 3) ds.push_back(d);

    if (!ds.empty()) {
        const long Tj = Pint / 4 + d_max + 8;
        ZSeries j4 = dilate(j_invariant(Tj), 4);
        for (long d : ds) {
            ZSeries g = mul(built.at(d - 4), j4);
            for (long dp = d - 1; dp >= 3; --dp) {
                if (dp % 4 != 0 && dp % 4 != 3) continue;
                mpz_class c = g.coeff(-dp);
                if (c != 0) g = sub(g, scalar_mul(built.at(dp), c));
            }
            mpz_class c0 = g.coeff(0);
            if (c0 != 0) g = sub(g, scalar_mul(built.at(0), c0));
            if (g.valuation() != -d || g.coeff(-d) != 1)
                throw Error("basis elimination failed for d = " + std::to_string(d));
            for (long e = -d + 1; e <= 0; ++e)
                if (g.coeff(e) != 0)
                    throw Error("basis element f_" + std::to_string(d) +
                                " has a stray principal coefficient at q^" + std::to_string(e));
            built.emplace(d, std::move(g));
        }
    }

    std::vector<PlusSpaceForm> out;
    for (auto& [d, s] : built)
        if (d <= d_max) out.push_back({d, s.truncated(P + 1), P});
    return out;
}

bool congruent_one_mod(const QSeries& s, long m) {
    if (m < 2) throw DomainError("congruent_one_mod needs m >= 2");
    const mpz_class mz(m);
    for (long e = std::min<long>(s.valuation(), 0); e < s.trunc(); ++e) {
        mpq_class c = s.coeff(e);
        if (e == 0) c -= 1;
        if (sgn(c) == 0) continue;
        if (gcd(mpz_class(c.get_den()), mz) != 1) return false;
        if (c.get_num() % mz != 0) return false;
    }
    return true;
}

PlusSpaceForm fd(long d, long precision) {
    if (d < 0 || (d % 4 != 0 && d % 4 != 3))
        throw DomainError("f_d needs d >= 0 with d = 0 or 3 mod 4");
    if (d == 0) return f0(precision);
    if (d == 3) return f3(precision);
    auto basis = kohnen_basis(d, precision);
    for (auto& f : basis)
        if (f.d == d) return std::move(f);
    throw Error("fd: basis did not contain d (bug)");
}

} // namespace qcong
