#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include <gmpxx.h>

#include "qcong/quadforms.hpp"

using namespace qcong;

namespace {

// weighted primitive class count sum_Q 1/omega_Q
mpq_class weighted_h(long disc) {
    FormClassData data = reduced_forms(disc);
    mpq_class h(0);
    for (int w : data.stabilizer_orders) h += mpq_class(1, w);
    return h;
}

// Hurwitz class number H(n) for -n = 0, 3 mod 4: all forms, 1/omega weights
mpq_class hurwitz(long n) {
    if (n == 0) return mpq_class(-1, 12);
    mpq_class H(0);
    for (long g = 1; g * g <= n; ++g) {
        if (n % (g * g)) continue;
        long m = n / (g * g);
        if (m % 4 == 0 || m % 4 == 3) H += weighted_h(-m);
    }
    return H;
}

QuadForm random_equivalent(std::mt19937& rng, QuadForm f, int steps = 6) {
    std::uniform_int_distribution<int> coin(0, 1), sh(-2, 2);
    for (int i = 0; i < steps; ++i) {
        if (coin(rng)) {
            long t = sh(rng); // [[1, t], [0, 1]]
            f = apply_sl2(f, 1, t, 0, 1);
        } else {
            f = apply_sl2(f, 0, -1, 1, 0); // S
        }
    }
    return f;
}

} // namespace

TEST_CASE("reduce: fixed examples and enumeration oracles") {
    CHECK(reduce({1, 0, 1}) == QuadForm{1, 0, 1});
    auto disc8 = reduced_forms(-8).reduced_forms;
    REQUIRE(disc8.size() == 1);
    CHECK(reduce({3, 2, 1}) == disc8[0]);
    CHECK(disc8[0] == QuadForm{1, 0, 2});

    auto disc15 = reduced_forms(-15).reduced_forms;
    REQUIRE(disc15.size() == 2);
    QuadForm r = reduce({2, 3, 3});
    CHECK((r == disc15[0] || r == disc15[1]));
    CHECK(r == QuadForm{2, 1, 2});
    CHECK_THROWS_AS(reduce({1, 0, -1}), DomainError);
}

TEST_CASE("reduce is idempotent and preserves the discriminant") {
    std::mt19937 rng(4242);
    for (long disc : {-15L, -24L, -60L, -111L, -163L, -240L}) {
        for (const QuadForm& f : reduced_forms(disc).reduced_forms) {
            QuadForm g = random_equivalent(rng, f);
            CHECK(g.discriminant() == disc);
            QuadForm r = reduce(g);
            CHECK(r.discriminant() == disc);
            CHECK(reduce(r) == r);
            CHECK(r == f);
        }
    }
}

TEST_CASE("class numbers of Example-1.3 discriminants") {
    CHECK(class_number(-15) == 2);
    CHECK(class_number(-159) == 10);
    auto d24 = reduced_forms(-24);
    REQUIRE(d24.class_number() == 2);
    CHECK(d24.reduced_forms[0] == QuadForm{1, 0, 6});
    CHECK(d24.reduced_forms[1] == QuadForm{2, 0, 3});
    auto d3 = reduced_forms(-3);
    REQUIRE(d3.class_number() == 1);
    CHECK(d3.stabilizer_orders[0] == 3);
    auto d4 = reduced_forms(-4);
    REQUIRE(d4.class_number() == 1);
    CHECK(d4.stabilizer_orders[0] == 2);
    // the congruence bookkeeping uses the fundamental part for order discriminants
    CHECK(class_number_fundamental(-60) == 2);
    CHECK(class_number_fundamental(-240) == 2);
    CHECK(class_number(-240) == 4);
    CHECK_THROWS_AS(reduced_forms(-5), DomainError);
}

TEST_CASE("Eichler relation pins all class numbers up to |disc| = 400") {
    // sum_{r^2 <= 4n} H(4n - r^2) = 2 sigma(n) - sum_{d | n} min(d, n/d)
    for (long n = 1; n <= 100; ++n) {
        mpq_class lhs = hurwitz(4 * n);
        for (long r = 1; r * r <= 4 * n; ++r) {
            lhs += 2 * hurwitz(4 * n - r * r); // +-r
        }
        long sigma = 0, minsum = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                sigma += d;
                minsum += std::min(d, n / d);
            }
        CHECK(lhs == mpq_class(2 * sigma - minsum));
    }
}

TEST_CASE("Dirichlet class number formula agrees on fundamental discriminants") {
    for (long disc = -3; disc >= -400; --disc) {
        if (!is_fundamental_discriminant(disc)) continue;
        long w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
        long t = 0;
        for (long k = 1; k < -disc; ++k) t += k * kronecker(disc, k);
        CHECK(class_number(disc) == std::abs(t) * w / (2 * (-disc)));
    }
}

TEST_CASE("omega > 1 only at discriminants -3 and -4 among primitive forms") {
    for (long disc = -3; disc >= -400; --disc) {
        if ((disc % 4 + 4) % 4 != 0 && (disc % 4 + 4) % 4 != 1) continue;
        auto data = reduced_forms(disc);
        for (std::size_t i = 0; i < data.reduced_forms.size(); ++i)
            if (data.stabilizer_orders[i] > 1) CHECK((disc == -3 || disc == -4));
    }
}

TEST_CASE("kronecker: fixed values and properties") {
    CHECK(kronecker(8, 7) == 1);
    CHECK(kronecker(8, 5) == -1);
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(-20, 1) == 1);
    // complete multiplicativity in n; zero exactly at shared factors
    for (long D : {-15L, -20L, 8L, 5L, 104L, -311L}) {
        for (long m = -20; m <= 20; ++m)
            for (long n = -20; n <= 20; ++n)
                CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
        for (long n = 1; n <= 200; ++n)
            CHECK((kronecker(D, n) == 0) == (std::gcd(std::abs(D), n) > 1));
    }
    // cross-check the full table against GMP
    for (long a = -60; a <= 60; ++a)
        for (long n = -60; n <= 60; ++n) {
            mpz_class az(a), nz(n);
            CHECK(kronecker(a, n) == mpz_kronecker(az.get_mpz_t(), nz.get_mpz_t()));
        }
}

TEST_CASE("is_fundamental_discriminant") {
    CHECK(is_fundamental_discriminant(5));
    CHECK_FALSE(is_fundamental_discriminant(20));
    CHECK(is_fundamental_discriminant(104));
    CHECK(is_fundamental_discriminant(8));
    CHECK(is_fundamental_discriminant(-3));
    CHECK_FALSE(is_fundamental_discriminant(-9));
    CHECK(is_fundamental_discriminant(12)); // disc of Q(sqrt 3)
    CHECK_FALSE(is_fundamental_discriminant(45));
    CHECK_FALSE(is_fundamental_discriminant(-12));
}

TEST_CASE("genus character: Zagier example and well-definedness") {
    CHECK(genus_character({1, 0, 6}, 8, 3) == 1);
    CHECK(genus_character({2, 0, 3}, 8, 3) == -1);

    // distinct coprime represented values give the same Kronecker symbol
    std::mt19937 rng(1618);
    int checked = 0;
    std::vector<std::pair<long, long>> twists{{8, 3}, {5, 3}, {13, 3}, {8, 7}, {12, 7}, {21, 4}};
    while (checked < 100) {
        auto [D, d] = twists[static_cast<std::size_t>(checked) % twists.size()];
        auto data = reduced_forms(-D * d);
        std::uniform_int_distribution<std::size_t> pick(0, data.reduced_forms.size() - 1);
        QuadForm f = random_equivalent(rng, data.reduced_forms[pick(rng)]);
        std::set<long> values;
        for (long x = -8; x <= 8; ++x)
            for (long y = -8; y <= 8; ++y) {
                long n = f.eval(x, y);
                if (n > 0 && std::gcd(n, 2 * D * d) == 1) values.insert(n);
            }
        REQUIRE(values.size() >= 2);
        auto it = values.begin();
        int c1 = kronecker(D, *it++);
        int c2 = kronecker(D, *it);
        CHECK(c1 == c2);
        CHECK(c1 == genus_character(f, D, d));
        ++checked;
    }
}

TEST_CASE("genus character is constant on SL2(Z) orbits") {
    std::mt19937 rng(271828);
    std::vector<std::pair<long, long>> twists{{8, 3}, {5, 3}, {20, 3}, {13, 7}, {24, 7}};
    for (int iter = 0; iter < 100; ++iter) {
        auto [D, d] = twists[static_cast<std::size_t>(iter) % twists.size()];
        auto data = reduced_forms(-D * d);
        std::uniform_int_distribution<std::size_t> pick(0, data.reduced_forms.size() - 1);
        QuadForm f = data.reduced_forms[pick(rng)];
        QuadForm g = random_equivalent(rng, f);
        CHECK(genus_character(g, D, d) == genus_character(reduce(g), D, d));
        CHECK(genus_character(g, D, d) == genus_character(f, D, d));
    }
}

TEST_CASE("heegner points") {
    HeegnerPoint p1 = heegner_point({1, 0, 6});
    CHECK(p1.a == 1);
    CHECK(p1.b == 0);
    CHECK(p1.d == 24); // tau = i sqrt(24)/2 = i sqrt(6)
    HeegnerPoint p2 = heegner_point({2, 0, 3});
    CHECK(p2.a == 2);
    CHECK(p2.d == 24); // tau = i sqrt(24)/4 = i sqrt(3/2)
    HeegnerPoint p3 = heegner_point({1, 0, 1});
    CHECK(p3.d == 4); // tau = i
}
