#include "qcong/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcong {

long QuadForm::content() const {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

bool QuadForm::is_reduced() const {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

QuadForm reduce(const QuadForm& q) {
    if (!q.is_positive_definite())
        throw DomainError("reduce: form [" + std::to_string(q.a) + "," + std::to_string(q.b) +
                          "," + std::to_string(q.c) + "] is not positive definite");
    long a = q.a, b = q.b, c = q.c;
    while (true) {
        if (c < a) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (b > a || b <= -a) {
            // translate b into (-a, a]; the c update is exact since t = b (mod 2a)
            long t = b % (2 * a);
            while (t > a) t -= 2 * a;
            while (t <= -a) t += 2 * a;
            c = c + (t * t - b * b) / (4 * a);
            b = t;
            continue;
        }
        break;
    }
    if ((std::abs(b) == a || a == c) && b < 0) b = -b;
    return {a, b, c};
}

QuadForm apply_sl2(const QuadForm& f, long p, long q, long r, long s) {
    return {f.eval(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.eval(q, s)};
}

std::vector<QuadForm> reduced_forms_all(long disc) {
    if (disc >= 0 || ((disc % 4 + 4) % 4 != 0 && (disc % 4 + 4) % 4 != 1))
        throw DomainError("discriminant " + std::to_string(disc) + " is not < 0 and 0,1 mod 4");
    std::vector<QuadForm> out;
    for (long a = 1; 3 * a * a <= -disc; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            QuadForm f{a, b, c};
            if (f.is_reduced()) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });
    return out;
}

FormClassData reduced_forms(long disc) {
    FormClassData data;
    data.discriminant = disc;
    for (const QuadForm& f : reduced_forms_all(disc)) {
        if (!f.is_primitive()) continue;
        data.reduced_forms.push_back(f);
        int omega = 1;
        if (f.a == f.b && f.b == f.c) omega = 3;
        else if (f.b == 0 && f.a == f.c) omega = 2;
        data.stabilizer_orders.push_back(omega);
    }
    return data;
}

long class_number(long disc) { return reduced_forms(disc).class_number(); }

long fundamental_part(long disc) {
    if (disc >= 0) throw DomainError("fundamental_part expects a negative discriminant");
    long d = disc;
    for (long f = 2; f * f <= -d; ++f) {
        while (d % (f * f) == 0) {
            long cand = d / (f * f);
            long m4 = (cand % 4 + 4) % 4;
            if (m4 == 0 || m4 == 1) d = cand;
            else break;
        }
    }
    return d;
}

long class_number_fundamental(long disc) { return class_number(fundamental_part(disc)); }

int kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int t2 = 0;
    while (n % 2 == 0) { n /= 2; ++t2; }
    int result = 1;
    if (t2 % 2 == 1) {
        long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) result = -result;
        else if (am8 != 1 && am8 != 7) return 0; // a even
    }
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // Jacobi symbol for odd positive n
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_square(long n) {
    if (n < 0) return false;
    long r = static_cast<long>(std::sqrt((double)n));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

bool is_fundamental_discriminant(long D) {
    if (D == 0) return false;
    auto squarefree = [](long m) {
        m = std::abs(m);
        for (long f = 2; f * f <= m; ++f)
            if (m % (f * f) == 0) return false;
        return true;
    };
    long m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree(D);
    if (D % 4 == 0) {
        long m = D / 4;
        long mm4 = ((m % 4) + 4) % 4;
        return (mm4 == 2 || mm4 == 3) && squarefree(m);
    }
    return false;
}

int genus_character(const QuadForm& q, long D, long d, long search_bound) {
    if (q.discriminant() != -d * D)
        throw DomainError("genus_character: form discriminant " +
                          std::to_string(q.discriminant()) + " != -dD = " +
                          std::to_string(-d * D));
    if (std::gcd(q.content(), D * d) > 1) return 0;
    const long limit = 4000;
    for (long bound = search_bound; bound <= limit; bound *= 2) {
        long best = 0;
        for (long x = -bound; x <= bound; ++x) {
            for (long y = -bound; y <= bound; ++y) {
                long n = q.eval(x, y);
                if (n <= 0) continue;
                if (best != 0 && n >= best) continue;
                if (std::gcd(n, 2 * D * d) == 1) best = n;
            }
        }
        if (best != 0) return kronecker(D, best);
    }
    throw DomainError("genus_character: no represented value coprime to 2dD within bound " +
                      std::to_string(limit));
}

HeegnerPoint heegner_point(const QuadForm& q) {
    if (!q.is_positive_definite())
        throw DomainError("heegner_point needs a positive definite form");
    return {q.a, q.b, -q.discriminant()};
}

} // namespace qcong
