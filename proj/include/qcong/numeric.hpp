#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "qcong/errors.hpp"

namespace qcong {

// Thin RAII value wrapper around mpfr_t. Binary operations work at the larger
// of the two operand precisions.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
    Real& operator=(Real o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    static Real from_long(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.x_, v, MPFR_RNDN);
        return r;
    }
    static Real from_mpz(const mpz_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real from_mpq(const mpq_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }
    static Real pow10(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_ui_pow_ui(r.x_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
        if (e < 0) mpfr_ui_div(r.x_, 1, r.x_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(x_); }
    bool operator<(const Real& o) const { return mpfr_cmp(x_, o.x_) < 0; }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }

    Real sqrt() const { return unop(*this, mpfr_sqrt); }
    Real exp() const { return unop(*this, mpfr_exp); }
    Real abs() const { return unop(*this, mpfr_abs); }
    Real floor() const {
        Real r(prec());
        mpfr_floor(r.x_, x_);
        return r;
    }
    void sin_cos(Real& s, Real& c) const {
        Real ss(prec()), cc(prec());
        mpfr_sin_cos(ss.x_, cc.x_, x_, MPFR_RNDN);
        s = std::move(ss);
        c = std::move(cc);
    }

    // nearest integer, plus |x - nearest|
    mpz_class round_to_mpz(Real* residual = nullptr) const {
        Real r(prec());
        mpfr_rint(r.x_, x_, MPFR_RNDN);
        mpz_class out;
        mpfr_get_z(out.get_mpz_t(), r.x_, MPFR_RNDN);
        if (residual) *residual = (*this - r).abs();
        return out;
    }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    template <class F>
    static Real binop(const Real& a, const Real& b, F f) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    template <class F>
    static Real unop(const Real& a, F f) {
        Real r(a.prec());
        f(r.x_, a.x_, MPFR_RNDN);
        return r;
    }

    mpfr_t x_;
};

struct Complex {
    Real re, im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Complex from_real(Real r) {
        Real z(r.prec());
        return {std::move(r), std::move(z)};
    }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex operator-() const { return {-re, -im}; }
    Real abs2() const { return re * re + im * im; }
};

// Continued-fraction rational reconstruction: the unique rational with
// denominator <= den_bound within tol of v, if one exists.
mpq_class recognize_rational(const Real& v, const mpz_class& den_bound, const Real& tol);

} // namespace qcong
