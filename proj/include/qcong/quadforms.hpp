#pragma once

#include <vector>

#include "qcong/errors.hpp"

namespace qcong {

// Integral binary quadratic form a x^2 + b xy + c y^2. The operations here
// work with positive definite forms (discriminant < 0, a > 0).
struct QuadForm {
    long a = 0, b = 0, c = 0;

    long discriminant() const { return b * b - 4 * a * c; }
    long content() const; // gcd(a, b, c)
    bool is_positive_definite() const { return discriminant() < 0 && a > 0; }
    bool is_primitive() const { return content() == 1; }
    bool is_reduced() const;
    long eval(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
    bool operator==(const QuadForm&) const = default;
};

// tau_Q = (-b + i sqrt(d)) / (2a), the root of Q(tau, 1) = 0
struct HeegnerPoint {
    long a = 1;
    long b = 0;
    long d = 3; // |discriminant|
};

struct FormClassData {
    long discriminant = 0;
    std::vector<QuadForm> reduced_forms;     // primitive classes only
    std::vector<int> stabilizer_orders;      // omega_Q in {1,2,3}, parallel to reduced_forms
    long class_number() const { return static_cast<long>(reduced_forms.size()); }
};

// unique reduced SL_2(Z)-representative of a positive definite form
QuadForm reduce(const QuadForm& q);

// Q composed with [[p, q], [r, s]] in SL_2(Z)
QuadForm apply_sl2(const QuadForm& f, long p, long q, long r, long s);

// All primitive reduced forms of the given discriminant (< 0, = 0 or 1 mod 4),
// enumerated with |b| <= a <= sqrt(|disc|/3); omega = 3 for [a,a,a], 2 for
// [a,0,a], else 1.
FormClassData reduced_forms(long disc);

// Reduced forms including imprimitive ones; used where multiples of smaller
// discriminants matter (Hurwitz-style counts).
std::vector<QuadForm> reduced_forms_all(long disc);

// class number h(disc) = number of primitive reduced forms
long class_number(long disc);

// class number of the fundamental discriminant underlying disc; this is the
// convention the congruence bookkeeping uses for non-fundamental inputs
long class_number_fundamental(long disc);

// largest fundamental discriminant dividing disc with square cofactor
long fundamental_part(long disc);

// full Kronecker symbol (D/n), defined for all integers
int kronecker(long D, long n);

bool is_fundamental_discriminant(long D);
bool is_square(long n);

// Extended genus character chi_{D,-d} evaluated on a form of discriminant
// -dD: zero when the form's content shares a factor with dD, otherwise (D/n)
// for the smallest represented n coprime to 2dD. The search bound grows on
// demand; exhausting it raises DomainError.
int genus_character(const QuadForm& q, long D, long d, long search_bound = 50);

HeegnerPoint heegner_point(const QuadForm& q);

} // namespace qcong
