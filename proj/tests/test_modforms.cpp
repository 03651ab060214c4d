#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "qcong/fd_cache.hpp"
#include "qcong/modforms.hpp"

using namespace qcong;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == mpq_class(-1, 2));
    CHECK(bernoulli(4) == mpq_class(-1, 30));
    CHECK(bernoulli(6) == mpq_class(1, 42));
    CHECK(bernoulli(10) == mpq_class(5, 66));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
    CHECK(bernoulli(7) == 0);
    // von Staudt-Clausen: denominator of B_k is prod of primes with (p-1) | k
    for (unsigned k : {4u, 6u, 8u, 10u, 12u}) {
        mpz_class den(1);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
            if (k % static_cast<unsigned>(p - 1) == 0) den *= p;
        CHECK(mpq_class(bernoulli(k)).get_den() == den);
    }
}

TEST_CASE("theta: 12 f_0 = 12 + 24q + 24q^4 + 24q^9 + ...") {
    ZSeries th = theta(12);
    CHECK(th.coeff(0) == 1);
    CHECK(th.coeff(1) == 2);
    CHECK(th.coeff(2) == 0);
    CHECK(th.coeff(4) == 2);
    CHECK(th.coeff(9) == 2);
    ZSeries twelve = scalar_mul(th, mpz_class(12));
    CHECK(twelve.coeff(0) == 12);
    CHECK(twelve.coeff(1) == 24);
    CHECK(twelve.coeff(4) == 24);
    CHECK(twelve.coeff(9) == 24);
}

TEST_CASE("eisenstein series") {
    QSeries e4 = eisenstein(4, 10);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    QSeries e10 = eisenstein(10, 10);
    CHECK(e10.coeff(1) == -264);
    QSeries e12 = eisenstein(12, 6);
    CHECK(e12.coeff(1) == mpq_class(65520, 691));
    CHECK_THROWS_AS(eisenstein(3, 5), DomainError);
    CHECK_THROWS_AS(eisenstein_integral(12, 6), DomainError); // 691 in denominators
}

TEST_CASE("delta and j") {
    ZSeries d = delta(20);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    ZSeries j = j_invariant(20);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    ZSeries e4 = eisenstein_integral(4, 19);
    CHECK(agree(mul(d, j), mul(mul(e4, e4), e4)));
}

TEST_CASE("f3 reproduces the worked example") {
    PlusSpaceForm f = f3(200);
    CHECK(f.coefficient(-3) == 1);
    CHECK(f.coefficient(1) == -248);
    CHECK(f.coefficient(4) == 26752);
    CHECK(f.coefficient(5) == -85995);
    CHECK(f.coefficient(8) == 1707264);
    CHECK(f.coefficient(9) == -4096248);
    CHECK(f.coefficient(12) == 44330496);
    CHECK(f.plus_space_supported());
}

TEST_CASE("f3 split construction matches the generic q-ring formula") {
    const long P = 60;
    ZSeries th = theta(P + 20);
    ZSeries dth = d_operator(th);
    ZSeries e10 = eisenstein_integral(10, (P + 20) / 4 + 2);
    ZSeries de10_4 = dilate(d_operator(e10), 4);
    ZSeries e10_4 = dilate(e10, 4);
    ZSeries delta4 = dilate(delta((P + 20) / 4 + 2), 4);
    ZSeries five = ZSeries::monomial(IntegerRing{}, 5, 0, P + 20);
    ZSeries num = sub(mul(th, de10_4), mul(five, mul(dth, e10_4)));
    ZSeries quotient = mul(num, invert(delta4));
    ZSeries c304 = ZSeries::monomial(IntegerRing{}, 304, 0, quotient.trunc());
    ZSeries raw = add(quotient, mul(c304, th));
    ZSeries direct = divexact_long(raw, -10);
    CHECK(agree_up_to(direct, f3(P).series, P / 2));
}

TEST_CASE("kohnen basis: normalization, support, known values") {
    auto basis = kohnen_basis(16, 60);
    REQUIRE(basis.size() == 9); // d = 0, 3, 4, 7, 8, 11, 12, 15, 16
    for (const auto& f : basis) {
        CHECK(f.plus_space_supported());
        if (f.d == 0) {
            CHECK(f.series.coeff(0) == 1);
        } else {
            CHECK(f.series.valuation() == -f.d);
            CHECK(f.series.coeff(-f.d) == 1);
            CHECK(f.series.coeff(0) == 0);
            for (long e = -f.d + 1; e < 0; ++e) CHECK(f.series.coeff(e) == 0);
        }
        if (f.d == 4) {
            CHECK(f.series.coeff(1) == 492);
            CHECK(f.series.coeff(4) == 143376);
        }
        if (f.d == 7) CHECK(f.series.coeff(1) == -4119);
    }
}

TEST_CASE("eisenstein congruences (small window)") {
    for (unsigned k = 4; k <= 20; k += 2) CHECK(congruent_one_mod(eisenstein(k, 60), 24));
    for (long p : {5L, 7L, 11L, 13L})
        CHECK(congruent_one_mod(eisenstein(static_cast<unsigned>(p - 1), 60), p));
    CHECK_FALSE(congruent_one_mod(eisenstein(4, 30), 7));
}

TEST_CASE("fd coefficient cache round-trips") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "qcong-test-cache-modforms";
    std::filesystem::remove_all(dir);
    bool hit = true;
    PlusSpaceForm a = fd_cached(3, 120, dir, &hit);
    CHECK_FALSE(hit);
    PlusSpaceForm b = fd_cached(3, 120, dir, &hit);
    CHECK(hit);
    CHECK(agree(a.series, b.series));
    PlusSpaceForm c = fd_cached(3, 40, dir, &hit); // lower precision still hits
    CHECK(hit);
    CHECK(c.precision == 40);
    CHECK(agree_up_to(c.series, a.series, 41));
    // corrupt the checksum: cache must rebuild instead of returning garbage
    {
        std::filesystem::path file = dir / "fd_3.txt";
        auto size = std::filesystem::file_size(file);
        std::filesystem::resize_file(file, size - 3);
    }
    PlusSpaceForm d = fd_cached(3, 120, dir, &hit);
    CHECK_FALSE(hit);
    CHECK(agree(d.series, a.series));
    // a version bump invalidates the record
    {
        std::ifstream in(dir / "fd_3.txt");
        std::stringstream buf;
        buf << in.rdbuf();
        std::string content = buf.str();
        content.replace(content.find("qcong-fd-cache: "), 17, "qcong-fd-cache: 0");
        std::ofstream out(dir / "fd_3.txt");
        out << content;
    }
    PlusSpaceForm e = fd_cached(3, 120, dir, &hit);
    CHECK_FALSE(hit);
    CHECK(agree(e.series, a.series));
    std::filesystem::remove_all(dir);
}
