#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qcong/errors.hpp"
#include "qcong/rings.hpp"

namespace qcong {

// Truncated Laurent series with exact coefficients over a tagged ring.
//
// A series stores dense coefficients for exponents [val, val+size) and a
// truncation bound: exponents >= trunc() are unknown, exponents < trunc()
// that are not stored are exact zeros. Reading an unknown coefficient throws
// PrecisionError instead of zero-filling. Values are immutable after
// construction; every operation returns a fresh series.
template <class R>
class Series {
public:
    using Ring = R;
    using Elem = typename R::Elem;

    // an empty window over the default ring; useful only as a placeholder
    Series() : ring_(), val_(0), trunc_(0) {}

    // zero up to trunc: all exponents < trunc are known to vanish
    Series(R ring, long trunc) : ring_(std::move(ring)), val_(trunc), trunc_(trunc) {}

    static Series zero(R ring, long trunc) { return Series(std::move(ring), trunc); }

    static Series one(R ring, long trunc) {
        return monomial(std::move(ring), ring.one(), 0, trunc);
    }

    static Series monomial(R ring, Elem c, long exp, long trunc) {
        std::vector<Elem> v;
        v.push_back(std::move(c));
        return from_coeffs(std::move(ring), exp, std::move(v), trunc);
    }

    static Series from_coeffs(R ring, long val, std::vector<Elem> coeffs, long trunc) {
        Series s(std::move(ring), trunc);
        s.val_ = val;
        s.coeffs_ = std::move(coeffs);
        if (val + static_cast<long>(s.coeffs_.size()) > trunc)
            s.coeffs_.resize(static_cast<std::size_t>(std::max<long>(0, trunc - val)));
        s.normalize();
        return s;
    }

    const R& ring() const { return ring_; }
    long trunc() const { return trunc_; }

    // Lowest stored exponent; equals trunc() for a series that is zero up to
    // its truncation.
    long valuation() const { return val_; }

    bool is_zero() const { return coeffs_.empty(); }

    long known_length() const { return trunc_ - val_; }

    Elem coeff(long n) const {
        if (n >= trunc_)
            throw PrecisionError("coefficient of q^" + std::to_string(n) +
                                 " is beyond truncation O(q^" + std::to_string(trunc_) + ")");
        if (n < val_ || n >= val_ + static_cast<long>(coeffs_.size())) return ring_.zero();
        return coeffs_[static_cast<std::size_t>(n - val_)];
    }

    const std::vector<Elem>& stored() const { return coeffs_; }

    long nonzero_count() const {
        long c = 0;
        for (const Elem& e : coeffs_)
            if (!ring_.is_zero(e)) ++c;
        return c;
    }

    Series shifted(long s) const {
        Series r = *this;
        r.val_ += s;
        r.trunc_ += s;
        return r;
    }

    Series truncated(long t) const {
        Series r = *this;
        if (t < r.trunc_) {
            r.trunc_ = t;
            long keep = t - r.val_;
            if (keep <= 0) {
                r.coeffs_.clear();
                r.val_ = t;
            } else if (keep < static_cast<long>(r.coeffs_.size())) {
                r.coeffs_.resize(static_cast<std::size_t>(keep));
            }
            r.normalize();
        }
        return r;
    }

    std::string to_string() const;

private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && ring_.is_zero(coeffs_[lead])) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            val_ = trunc_;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<long>(lead);
        }
        while (!coeffs_.empty() && ring_.is_zero(coeffs_.back())) coeffs_.pop_back();
        if (val_ >= trunc_ && !coeffs_.empty())
            throw Error("series invariant violated: valuation >= trunc with coefficients");
    }

    R ring_;
    long val_;
    long trunc_;
    std::vector<Elem> coeffs_;
};

namespace detail {

template <class R>
void check_same_ring(const Series<R>& a, const Series<R>& b) {
    if (!(a.ring() == b.ring()))
        throw RingMismatchError("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
}

// dense truncated schoolbook: out[0..lim) += A * B
template <class R>
void vec_mul_school(const R& ring, const std::vector<typename R::Elem>& a,
                    const std::vector<typename R::Elem>& b,
                    std::vector<typename R::Elem>& out, long lim) {
    const long la = static_cast<long>(a.size());
    const long lb = static_cast<long>(b.size());
    for (long i = 0; i < la && i < lim; ++i) {
        if (ring.is_zero(a[i])) continue;
        const long jmax = std::min(lb, lim - i);
        for (long j = 0; j < jmax; ++j) {
            if (ring.is_zero(b[j])) continue;
            ring.addmul(out[static_cast<std::size_t>(i + j)], a[i], b[j]);
        }
    }
}

inline constexpr long kKaratsubaMin = 48;

// full product (length la+lb-1) by Karatsuba splitting; recursion bottoms out
// in schoolbook
template <class R>
std::vector<typename R::Elem> vec_mul_kara(const R& ring,
                                           const std::vector<typename R::Elem>& a,
                                           const std::vector<typename R::Elem>& b) {
    using Elem = typename R::Elem;
    const long la = static_cast<long>(a.size());
    const long lb = static_cast<long>(b.size());
    std::vector<Elem> out(static_cast<std::size_t>(la + lb - 1), ring.zero());
    if (std::min(la, lb) < kKaratsubaMin) {
        vec_mul_school(ring, a, b, out, la + lb - 1);
        return out;
    }
    const long m = (std::max(la, lb) + 1) / 2;
    if (la <= m || lb <= m) {
        // unbalanced: split the longer operand in two
        const std::vector<Elem>& lo = la >= lb ? a : b;
        const std::vector<Elem>& sh = la >= lb ? b : a;
        std::vector<Elem> low(lo.begin(), lo.begin() + m);
        std::vector<Elem> high(lo.begin() + m, lo.end());
        std::vector<Elem> z0 = vec_mul_kara(ring, low, sh);
        std::vector<Elem> z1 = vec_mul_kara(ring, high, sh);
        for (std::size_t i = 0; i < z0.size(); ++i) out[i] = ring.add(out[i], z0[i]);
        for (std::size_t i = 0; i < z1.size(); ++i)
            out[i + static_cast<std::size_t>(m)] =
                ring.add(out[i + static_cast<std::size_t>(m)], z1[i]);
        return out;
    }
    std::vector<Elem> a0(a.begin(), a.begin() + m), a1(a.begin() + m, a.end());
    std::vector<Elem> b0(b.begin(), b.begin() + m), b1(b.begin() + m, b.end());
    std::vector<Elem> z0 = vec_mul_kara(ring, a0, b0);
    std::vector<Elem> z2 = vec_mul_kara(ring, a1, b1);
    auto padd = [&](std::vector<Elem> x, const std::vector<Elem>& y) {
        if (x.size() < y.size()) x.resize(y.size(), ring.zero());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = ring.add(x[i], y[i]);
        return x;
    };
    std::vector<Elem> z1 = vec_mul_kara(ring, padd(a0, a1), padd(b0, b1));
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = ring.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = ring.sub(z1[i], z2[i]);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = ring.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[i + static_cast<std::size_t>(m)] = ring.add(out[i + static_cast<std::size_t>(m)], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[i + static_cast<std::size_t>(2 * m)] =
            ring.add(out[i + static_cast<std::size_t>(2 * m)], z2[i]);
    return out;
}

template <class R>
long count_nonzero(const R& ring, const std::vector<typename R::Elem>& v) {
    long c = 0;
    for (const auto& e : v)
        if (!ring.is_zero(e)) ++c;
    return c;
}

} // namespace detail

template <class R>
Series<R> add(const Series<R>& a, const Series<R>& b) {
    detail::check_same_ring(a, b);
    const long t = std::min(a.trunc(), b.trunc());
    const long v = std::min(a.valuation(), b.valuation());
    if (v >= t) return Series<R>::zero(a.ring(), t);
    std::vector<typename R::Elem> out(static_cast<std::size_t>(t - v), a.ring().zero());
    auto put = [&](const Series<R>& s, bool negate) {
        const long lo = s.valuation();
        const long hi = std::min(t, lo + static_cast<long>(s.stored().size()));
        for (long n = lo; n < hi; ++n) {
            const auto& c = s.stored()[static_cast<std::size_t>(n - lo)];
            auto& slot = out[static_cast<std::size_t>(n - v)];
            slot = negate ? a.ring().sub(slot, c) : a.ring().add(slot, c);
        }
    };
    put(a, false);
    put(b, false);
    return Series<R>::from_coeffs(a.ring(), v, std::move(out), t);
}

template <class R>
Series<R> neg(const Series<R>& a) {
    std::vector<typename R::Elem> out;
    out.reserve(a.stored().size());
    for (const auto& c : a.stored()) out.push_back(a.ring().neg(c));
    return Series<R>::from_coeffs(a.ring(), a.valuation(), std::move(out), a.trunc());
}

template <class R>
Series<R> sub(const Series<R>& a, const Series<R>& b) {
    return add(a, neg(b));
}

template <class R>
Series<R> scalar_mul(const Series<R>& a, const typename R::Elem& c) {
    std::vector<typename R::Elem> out;
    out.reserve(a.stored().size());
    for (const auto& x : a.stored()) out.push_back(a.ring().mul(x, c));
    return Series<R>::from_coeffs(a.ring(), a.valuation(), std::move(out), a.trunc());
}

// Cauchy product. Truncation follows the valuation-shift rule
// trunc = min(a.trunc + b.val, b.trunc + a.val); picks a sparse or Karatsuba
// path when the operand shapes warrant it.
template <class R>
Series<R> mul(const Series<R>& a, const Series<R>& b) {
    detail::check_same_ring(a, b);
    const long t = std::min(a.trunc() + b.valuation(), b.trunc() + a.valuation());
    if (a.is_zero() || b.is_zero()) return Series<R>::zero(a.ring(), t);
    const long base = a.valuation() + b.valuation();
    const long lim = t - base; // number of product coefficients to produce
    if (lim <= 0) return Series<R>::zero(a.ring(), t);
    const auto& A = a.stored();
    const auto& B = b.stored();
    const long la = std::min<long>(static_cast<long>(A.size()), lim);
    const long lb = std::min<long>(static_cast<long>(B.size()), lim);
    const long nza = detail::count_nonzero(a.ring(), A);
    const long nzb = detail::count_nonzero(a.ring(), B);
    std::vector<typename R::Elem> out;
    const bool sparse = nza * 4 <= la || nzb * 4 <= lb;
    if (!sparse && std::min(la, lb) >= detail::kKaratsubaMin) {
        std::vector<typename R::Elem> av(A.begin(), A.begin() + la);
        std::vector<typename R::Elem> bv(B.begin(), B.begin() + lb);
        out = detail::vec_mul_kara(a.ring(), av, bv);
        if (static_cast<long>(out.size()) > lim) out.resize(static_cast<std::size_t>(lim));
    } else {
        out.assign(static_cast<std::size_t>(std::min(lim, la + lb - 1)), a.ring().zero());
        std::vector<typename R::Elem> av(A.begin(), A.begin() + la);
        std::vector<typename R::Elem> bv(B.begin(), B.begin() + lb);
        detail::vec_mul_school(a.ring(), av, bv, out, lim);
    }
    return Series<R>::from_coeffs(a.ring(), base, std::move(out), t);
}

// Multiplicative inverse up to truncation via the standard recurrence
// b_0 = lead^-1, b_m = -lead^-1 * sum_{k>=1} a_{val+k} b_{m-k}. The input's
// relative precision (trunc - val) carries over to the result.
template <class R>
Series<R> invert(const Series<R>& a) {
    if (a.is_zero())
        throw NonInvertibleError("cannot invert a series that vanishes up to O(q^" +
                                 std::to_string(a.trunc()) + ")");
    const auto& A = a.stored();
    const typename R::Elem linv = a.ring().inv(A[0]); // throws NonInvertibleError
    const long n = a.trunc() - a.valuation();
    std::vector<typename R::Elem> b(static_cast<std::size_t>(n), a.ring().zero());
    b[0] = linv;
    for (long m = 1; m < n; ++m) {
        typename R::Elem s = a.ring().zero();
        const long kmax = std::min<long>(m, static_cast<long>(A.size()) - 1);
        for (long k = 1; k <= kmax; ++k) {
            if (a.ring().is_zero(A[static_cast<std::size_t>(k)])) continue;
            a.ring().addmul(s, A[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(m - k)]);
        }
        b[static_cast<std::size_t>(m)] = a.ring().neg(a.ring().mul(linv, s));
    }
    return Series<R>::from_coeffs(a.ring(), -a.valuation(), std::move(b),
                                  a.trunc() - 2 * a.valuation());
}

template <class R>
Series<R> div(const Series<R>& a, const Series<R>& b) {
    return mul(a, invert(b));
}

// binary exponentiation; negative exponents go through invert
template <class R>
Series<R> pow_int(const Series<R>& a, long e) {
    if (e == 0) {
        const long t = a.is_zero() ? a.trunc() : a.trunc() - a.valuation();
        return Series<R>::one(a.ring(), t);
    }
    if (e < 0) return pow_int(invert(a), -e);
    int top = 63;
    while (((e >> top) & 1) == 0) --top;
    Series<R> r = a;
    for (int bit = top - 1; bit >= 0; --bit) {
        r = mul(r, r);
        if ((e >> bit) & 1) r = mul(r, a);
    }
    return r;
}

// q d/dq: coefficient at q^n picks up a factor n
template <class R>
Series<R> d_operator(const Series<R>& a) {
    std::vector<typename R::Elem> out;
    out.reserve(a.stored().size());
    long n = a.valuation();
    for (const auto& c : a.stored()) out.push_back(a.ring().mul(c, a.ring().from_long(n++)));
    return Series<R>::from_coeffs(a.ring(), a.valuation(), std::move(out), a.trunc());
}

// substitution q -> q^k
template <class R>
Series<R> dilate(const Series<R>& a, long k) {
    if (k < 1) throw DomainError("dilate needs a positive integer");
    if (a.is_zero()) return Series<R>::zero(a.ring(), k * a.trunc());
    std::vector<typename R::Elem> out(
        static_cast<std::size_t>(k * (static_cast<long>(a.stored().size()) - 1) + 1),
        a.ring().zero());
    for (std::size_t i = 0; i < a.stored().size(); ++i)
        out[i * static_cast<std::size_t>(k)] = a.stored()[i];
    return Series<R>::from_coeffs(a.ring(), k * a.valuation(), std::move(out), k * a.trunc());
}

// formal exponential; needs valuation >= 1 and a ring with exact division by
// integers (rationals, quadratic extensions)
template <class R>
Series<R> exp_series(const Series<R>& a) {
    if (!a.is_zero() && a.valuation() < 1)
        throw DomainError("exp_series needs valuation >= 1");
    const long T = a.trunc();
    if (T <= 0) return Series<R>::one(a.ring(), T);
    std::vector<typename R::Elem> A(static_cast<std::size_t>(T), a.ring().zero());
    std::vector<long> nz;
    for (long k = a.valuation(); k < std::min(T, a.valuation() + static_cast<long>(a.stored().size())); ++k) {
        const auto& c = a.stored()[static_cast<std::size_t>(k - a.valuation())];
        if (!a.ring().is_zero(c)) {
            A[static_cast<std::size_t>(k)] = a.ring().mul(c, a.ring().from_long(k));
            nz.push_back(k); // A now holds k*a_k
        }
    }
    std::vector<typename R::Elem> e(static_cast<std::size_t>(T), a.ring().zero());
    e[0] = a.ring().one();
    for (long n = 1; n < T; ++n) {
        typename R::Elem s = a.ring().zero();
        for (long k : nz) {
            if (k > n) break;
            a.ring().addmul(s, A[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(n - k)]);
        }
        e[static_cast<std::size_t>(n)] = a.ring().div_long(s, n);
    }
    return Series<R>::from_coeffs(a.ring(), 0, std::move(e), T);
}

// formal logarithm of a series with constant term 1
template <class R>
Series<R> log_series(const Series<R>& a) {
    if (a.is_zero() || a.valuation() != 0 || !a.ring().eq(a.stored()[0], a.ring().one()))
        throw DomainError("log_series needs constant term 1");
    const long T = a.trunc();
    std::vector<typename R::Elem> A(static_cast<std::size_t>(T), a.ring().zero());
    std::vector<long> nz;
    for (long k = 1; k < std::min(T, static_cast<long>(a.stored().size())); ++k) {
        const auto& c = a.stored()[static_cast<std::size_t>(k)];
        if (!a.ring().is_zero(c)) {
            A[static_cast<std::size_t>(k)] = c;
            nz.push_back(k);
        }
    }
    std::vector<typename R::Elem> l(static_cast<std::size_t>(T), a.ring().zero());
    for (long n = 1; n < T; ++n) {
        // n*l_n = n*a_n - sum_{m in nz, m<n} (n-m) l_{n-m} a_m
        typename R::Elem s = a.ring().mul(A[static_cast<std::size_t>(n)], a.ring().from_long(n));
        for (long m : nz) {
            if (m >= n) break;
            auto t = a.ring().mul(l[static_cast<std::size_t>(n - m)], a.ring().from_long(n - m));
            a.ring().submul(s, t, A[static_cast<std::size_t>(m)]);
        }
        l[static_cast<std::size_t>(n)] = a.ring().div_long(s, n);
    }
    return Series<R>::from_coeffs(a.ring(), 0, std::move(l), T);
}

inline Series<ResidueRing> reduce_mod(const Series<IntegerRing>& a, std::uint64_t p, unsigned j) {
    ResidueRing ring(p, j);
    std::vector<ResidueRing::Elem> out;
    out.reserve(a.stored().size());
    for (const auto& c : a.stored()) out.push_back(ring.from_mpz(c));
    return Series<ResidueRing>::from_coeffs(ring, a.valuation(), std::move(out), a.trunc());
}

// exact coefficientwise division; throws if any coefficient is not divisible
inline Series<IntegerRing> divexact_long(const Series<IntegerRing>& a, long n) {
    if (n == 0) throw DomainError("division by zero");
    std::vector<mpz_class> out;
    out.reserve(a.stored().size());
    mpz_class d(n);
    long e = a.valuation();
    for (const auto& c : a.stored()) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw DomainError("coefficient of q^" + std::to_string(e) + " (" + c.get_str() +
                              ") is not divisible by " + std::to_string(n));
        out.emplace_back(c / d);
        ++e;
    }
    return Series<IntegerRing>::from_coeffs(a.ring(), a.valuation(), std::move(out), a.trunc());
}

inline Series<RationalRing> to_rational(const Series<IntegerRing>& a) {
    std::vector<mpq_class> out;
    out.reserve(a.stored().size());
    for (const auto& c : a.stored()) out.emplace_back(c);
    return Series<RationalRing>::from_coeffs(RationalRing{}, a.valuation(), std::move(out),
                                             a.trunc());
}

inline Series<IntegerRing> to_integer(const Series<RationalRing>& a) {
    std::vector<mpz_class> out;
    out.reserve(a.stored().size());
    long e = a.valuation();
    for (const auto& c : a.stored()) {
        if (c.get_den() != 1)
            throw DomainError("coefficient of q^" + std::to_string(e) + " (" + c.get_str() +
                              ") is not an integer");
        out.push_back(c.get_num());
        ++e;
    }
    return Series<IntegerRing>::from_coeffs(IntegerRing{}, a.valuation(), std::move(out),
                                            a.trunc());
}

inline Series<QuadExtRing> to_quadext(const Series<IntegerRing>& a, const QuadExtRing& ring) {
    std::vector<QuadExtRing::Elem> out;
    out.reserve(a.stored().size());
    for (const auto& c : a.stored()) out.push_back(ring.from_rational(mpq_class(c)));
    return Series<QuadExtRing>::from_coeffs(ring, a.valuation(), std::move(out), a.trunc());
}

// exact equality of all coefficients below T; both inputs must know that much
template <class R>
bool agree_up_to(const Series<R>& a, const Series<R>& b, long T) {
    detail::check_same_ring(a, b);
    if (a.trunc() < T || b.trunc() < T)
        throw PrecisionError("agree_up_to(" + std::to_string(T) + ") given truncations " +
                             std::to_string(a.trunc()) + ", " + std::to_string(b.trunc()));
    const long lo = std::min(a.valuation(), b.valuation());
    for (long n = lo; n < T; ++n)
        if (!a.ring().eq(a.coeff(n), b.coeff(n))) return false;
    return true;
}

// equality on the overlap of the known windows
template <class R>
bool agree(const Series<R>& a, const Series<R>& b) {
    return agree_up_to(a, b, std::min(a.trunc(), b.trunc()));
}

template <class R>
Series<R> operator+(const Series<R>& a, const Series<R>& b) { return add(a, b); }
template <class R>
Series<R> operator-(const Series<R>& a, const Series<R>& b) { return sub(a, b); }
template <class R>
Series<R> operator*(const Series<R>& a, const Series<R>& b) { return mul(a, b); }
template <class R>
Series<R> operator-(const Series<R>& a) { return neg(a); }

using ZSeries = Series<IntegerRing>;
using QSeries = Series<RationalRing>;
using QuadSeries = Series<QuadExtRing>;
using ModSeries = Series<ResidueRing>;

} // namespace qcong

#include "qcong/series_text.hpp"
