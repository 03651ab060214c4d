#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "qcong/errors.hpp"

namespace qcong {

// Coefficient rings for ExactSeries. Each ring is a small value object that
// knows how to compute with its element type; series carry a copy of the ring
// so parametrized rings (QuadExt, Residues) stay consistent across operations.

struct IntegerRing {
    using Elem = mpz_class;

    static std::string name() { return "Z"; }
    bool operator==(const IntegerRing&) const { return true; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_long(long v) const { return Elem(v); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    void addmul(Elem& acc, const Elem& a, const Elem& b) const {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    void submul(Elem& acc, const Elem& a, const Elem& b) const {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    bool is_invertible(const Elem& a) const { return a == 1 || a == -1; }
    Elem inv(const Elem& a) const {
        if (!is_invertible(a))
            throw NonInvertibleError("integer " + a.get_str() + " is not a unit");
        return a;
    }
    std::string to_string(const Elem& a) const { return a.get_str(); }
};

struct RationalRing {
    using Elem = mpq_class;

    static std::string name() { return "Q"; }
    bool operator==(const RationalRing&) const { return true; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_long(long v) const { return Elem(v); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    void addmul(Elem& acc, const Elem& a, const Elem& b) const { acc += a * b; }
    void submul(Elem& acc, const Elem& a, const Elem& b) const { acc -= a * b; }
    bool is_invertible(const Elem& a) const { return sgn(a) != 0; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw NonInvertibleError("division by zero rational");
        return 1 / a;
    }
    Elem div_long(const Elem& a, long n) const { return a / Elem(n); }
    std::string to_string(const Elem& a) const { return a.get_str(); }
};

// Elements x + y*sqrt(r) with x, y rational. The radicand r is squarefree and
// not 0 or 1; negative radicands are supported so that the P_{-D} product
// convention can be expanded in an imaginary quadratic extension.
struct QuadExtRing {
    struct Elem {
        mpq_class x, y;
        Elem() = default;
        Elem(mpq_class x_, mpq_class y_) : x(std::move(x_)), y(std::move(y_)) {}
    };

    long radicand = 2;

    QuadExtRing() = default;
    explicit QuadExtRing(long r) : radicand(r) {
        if (r == 0 || r == 1) throw DomainError("QuadExt radicand must not be 0 or 1");
        for (long f = 2; f * f <= (r < 0 ? -r : r); ++f)
            if (r % (f * f) == 0)
                throw DomainError("QuadExt radicand " + std::to_string(r) +
                                  " is not squarefree");
    }

    std::string name() const { return "Q(sqrt(" + std::to_string(radicand) + "))"; }
    bool operator==(const QuadExtRing& o) const { return radicand == o.radicand; }

    Elem zero() const { return {mpq_class(0), mpq_class(0)}; }
    Elem one() const { return {mpq_class(1), mpq_class(0)}; }
    Elem from_long(long v) const { return {mpq_class(v), mpq_class(0)}; }
    Elem from_rational(mpq_class v) const { return {std::move(v), mpq_class(0)}; }
    Elem sqrt_term(mpq_class y) const { return {mpq_class(0), std::move(y)}; }
    bool is_zero(const Elem& a) const { return sgn(a.x) == 0 && sgn(a.y) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a.x == b.x && a.y == b.y; }
    Elem add(const Elem& a, const Elem& b) const { return {a.x + b.x, a.y + b.y}; }
    Elem sub(const Elem& a, const Elem& b) const { return {a.x - b.x, a.y - b.y}; }
    Elem neg(const Elem& a) const { return {-a.x, -a.y}; }
    Elem mul(const Elem& a, const Elem& b) const {
        return {a.x * b.x + radicand * (a.y * b.y), a.x * b.y + a.y * b.x};
    }
    void addmul(Elem& acc, const Elem& a, const Elem& b) const {
        acc.x += a.x * b.x + radicand * (a.y * b.y);
        acc.y += a.x * b.y + a.y * b.x;
    }
    void submul(Elem& acc, const Elem& a, const Elem& b) const {
        acc.x -= a.x * b.x + radicand * (a.y * b.y);
        acc.y -= a.x * b.y + a.y * b.x;
    }
    // norm x^2 - r*y^2 vanishes only for x = y = 0 since r is not a square
    bool is_invertible(const Elem& a) const { return !is_zero(a); }
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw NonInvertibleError("division by zero in " + name());
        mpq_class n = a.x * a.x - radicand * (a.y * a.y);
        return {a.x / n, -a.y / n};
    }
    Elem div_long(const Elem& a, long n) const {
        mpq_class q(n);
        return {a.x / q, a.y / q};
    }
    Elem conjugate(const Elem& a) const { return {a.x, -a.y}; }
    std::string to_string(const Elem& a) const;
};

// Z/p^j with canonical representatives in [0, p^j).
struct ResidueRing {
    using Elem = std::uint64_t;

    std::uint64_t p = 2;
    unsigned j = 1;
    std::uint64_t modulus = 2;

    ResidueRing() = default;
    ResidueRing(std::uint64_t p_, unsigned j_) : p(p_), j(j_) {
        if (p < 2 || j < 1) throw DomainError("Residues(p, j) needs p >= 2, j >= 1");
        modulus = 1;
        for (unsigned i = 0; i < j; ++i) {
            if (modulus > (std::uint64_t(1) << 32) / p)
                throw DomainError("residue modulus p^j too large");
            modulus *= p;
        }
    }

    std::string name() const {
        return "Z/" + std::to_string(p) + "^" + std::to_string(j);
    }
    bool operator==(const ResidueRing& o) const { return p == o.p && j == o.j; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % modulus; }
    Elem from_long(long v) const {
        long m = static_cast<long>(modulus);
        long r = v % m;
        if (r < 0) r += m;
        return static_cast<Elem>(r);
    }
    Elem from_mpz(const mpz_class& v) const {
        return mpz_fdiv_ui(v.get_mpz_t(), modulus);
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem s = a + b;
        return s >= modulus ? s - modulus : s;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        return a >= b ? a - b : a + modulus - b;
    }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : modulus - a; }
    Elem mul(const Elem& a, const Elem& b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % modulus);
    }
    void addmul(Elem& acc, const Elem& a, const Elem& b) const { acc = add(acc, mul(a, b)); }
    void submul(Elem& acc, const Elem& a, const Elem& b) const { acc = sub(acc, mul(a, b)); }
    bool is_unit(const Elem& a) const { return a % p != 0; }
    bool is_invertible(const Elem& a) const { return is_unit(a); }
    Elem inv(const Elem& a) const {
        if (!is_unit(a))
            throw NonInvertibleError(std::to_string(a) + " is not a unit in " + name());
        // extended Euclid on (a, modulus)
        std::int64_t r0 = static_cast<std::int64_t>(modulus), r1 = static_cast<std::int64_t>(a);
        std::int64_t s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
            t = s0 - q * s1; s0 = s1; s1 = t;
        }
        std::int64_t res = s0 % static_cast<std::int64_t>(modulus);
        if (res < 0) res += static_cast<std::int64_t>(modulus);
        return static_cast<Elem>(res);
    }
    std::string to_string(const Elem& a) const { return std::to_string(a); }
};

inline std::string QuadExtRing::to_string(const Elem& a) const {
    const std::string rad = "sqrt(" + std::to_string(radicand) + ")";
    auto ypart = [&](const mpq_class& y) -> std::string {
        if (y == 1) return rad;
        if (y == -1) return "-" + rad;
        return y.get_str() + "*" + rad;
    };
    if (sgn(a.y) == 0) return a.x.get_str();
    if (sgn(a.x) == 0) return "(" + ypart(a.y) + ")";
    std::string ys = ypart(a.y);
    if (ys[0] == '-') return "(" + a.x.get_str() + "-" + ys.substr(1) + ")";
    return "(" + a.x.get_str() + "+" + ys + ")";
}

} // namespace qcong
