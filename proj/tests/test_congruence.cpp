#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qcong/congruence.hpp"

using namespace qcong;

namespace {

// the reduced log-derivative table of the worked p = 11 search
const std::vector<long> kExampleS{5, 20, 37, 53, 56, 80, 89, 92, 97, 104};
const std::vector<std::vector<std::uint64_t>> kExampleCols{
    {3, 5, 3, 6, 3, 5, 0, 0, 5},  {4, 0, 4, 3, 4, 0, 0, 5, 3},
    {6, 10, 4, 1, 6, 3, 9, 0, 1}, {3, 5, 3, 6, 3, 5, 10, 0, 5},
    {9, 4, 9, 7, 9, 4, 4, 0, 4},  {0, 7, 0, 8, 0, 7, 0, 3, 0},
    {1, 9, 1, 2, 1, 9, 0, 0, 9},  {5, 1, 5, 10, 5, 1, 2, 0, 1},
    {7, 8, 1, 3, 7, 9, 0, 0, 3},  {5, 1, 5, 10, 5, 1, 0, 0, 1}};

const std::vector<std::vector<std::uint64_t>> kKnownRelations{
    {7, 0, 0, 4, 1, 0, 2, 0, 0, 0},  {0, 3, 2, 0, 0, 6, 0, 2, 3, 0},
    {3, 0, 0, 0, 0, 0, 2, 0, 0, 0},  {0, 0, 0, 3, 9, 0, 9, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 2, 9, 0, 2},  {2, 0, 0, 9, 0, 0, 0, 10, 0, 1}};

std::vector<std::vector<std::uint64_t>> example_matrix() {
    std::vector<std::vector<std::uint64_t>> M(9, std::vector<std::uint64_t>(10, 0));
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t r = 0; r < 9; ++r) M[r][i] = kExampleCols[i][r];
    return M;
}

std::set<std::vector<std::uint64_t>> brute_kernel(const std::vector<std::vector<std::uint64_t>>& M,
                                                  std::uint64_t N) {
    const std::size_t n = M.size(), k = M[0].size();
    std::set<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> v(k, 0);
    while (true) {
        bool in_kernel = true;
        for (std::size_t r = 0; r < n && in_kernel; ++r) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < k; ++i) s += M[r][i] * v[i];
            in_kernel = s % N == 0;
        }
        if (in_kernel) out.insert(v);
        std::size_t pos = 0;
        while (pos < k && ++v[pos] == N) v[pos++] = 0;
        if (pos == k) break;
    }
    return out;
}

std::set<std::vector<std::uint64_t>> span_closure(
    const std::vector<std::vector<std::uint64_t>>& gens, std::uint64_t N, std::size_t k,
    std::size_t cap) {
    std::set<std::vector<std::uint64_t>> seen{std::vector<std::uint64_t>(k, 0)};
    std::vector<std::vector<std::uint64_t>> frontier{std::vector<std::uint64_t>(k, 0)};
    while (!frontier.empty()) {
        auto x = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            std::vector<std::uint64_t> y(k);
            for (std::size_t i = 0; i < k; ++i) y[i] = (x[i] + g[i]) % N;
            if (seen.insert(y).second) {
                frontier.push_back(y);
                REQUIRE(seen.size() <= cap);
            }
        }
    }
    return seen;
}

} // namespace

TEST_CASE("index of Gamma_0(N)") {
    CHECK(index_gamma0(1) == 1);
    CHECK(index_gamma0(4) == 6);
    CHECK(index_gamma0(6) == 12);
    CHECK(index_gamma0(11) == 12);
}

TEST_CASE("S_p membership for d = 3, p = 11") {
    CHECK(s_p_membership(5, 3, 11));
    CHECK_FALSE(s_p_membership(13, 3, 11));
    for (long D : kExampleS) CHECK(s_p_membership(D, 3, 11));
    // equivalent residue description mod 11
    std::set<long> allowed{0, 1, 3, 4, 5, 9};
    for (long D = 2; D <= 500; ++D) {
        if (is_square(D) || (D % 4 != 0 && D % 4 != 1) || D % 3 == 0) continue;
        CHECK(s_p_membership(D, 3, 11) == (allowed.count(D % 11) > 0));
    }
}

TEST_CASE("h_S over the example set") {
    CHECK(h_S(kExampleS, 3, 1) == 10);
    CHECK(h_S({5}, 3, 1) == 2);
    CHECK(h_S({5, 20}, 3, 1) == 2);
}

TEST_CASE("required_set_size") {
    Threshold t = required_set_size(11, 1, 10, 1, ThresholdVariant::from_hS);
    CHECK(t.exact);
    mpq_class want(102, 12);
    want.canonicalize();
    CHECK(t.exact_value == want);
    CHECK(t.exact_value > 8);
    CHECK(t.exact_value < 9);
    CHECK(mpq_class(10) > t.exact_value); // #S = 10 exceeds it

    Threshold t2 = required_set_size(5, 1, 0, 1, ThresholdVariant::from_hS);
    mpq_class want2(2, 12);
    want2.canonicalize();
    CHECK(t2.exact_value == want2);

    Threshold bound = required_set_size(11, 1, 10, 1, ThresholdVariant::from_bound, 104, 3);
    CHECK_FALSE(bound.exact);
    CHECK(bound.value >= t.value);
}

TEST_CASE("class number upper bound") {
    CHECK(class_number_upper_bound(15) == doctest::Approx(5.80413).epsilon(1e-4));
    CHECK(class_number_upper_bound(15) >= 2.0);
    CHECK(class_number_upper_bound(3) == doctest::Approx(1.70835).epsilon(1e-4));
    double prev = class_number_upper_bound(3);
    for (long d = 10; d <= 1000000; d *= 3) {
        double cur = class_number_upper_bound(d);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("kernel of the identity matrix") {
    std::vector<std::vector<std::uint64_t>> I(4, std::vector<std::uint64_t>(4, 0));
    for (int i = 0; i < 4; ++i) I[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    CHECK(kernel_mod_prime_power(I, 11, 1).empty());
    auto gens = kernel_mod_prime_power(I, 3, 2);
    for (const auto& g : gens)
        for (auto x : g) CHECK(x % 3 == 0);
}

TEST_CASE("kernel matches brute force over Z/4 and Z/9") {
    std::mt19937 rng(55);
    for (auto [p, j] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}}) {
        const std::uint64_t N = p == 2 ? 4 : 9;
        std::uniform_int_distribution<std::uint64_t> entry(0, N - 1);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::vector<std::uint64_t>> M(4, std::vector<std::uint64_t>(4));
            for (auto& row : M)
                for (auto& x : row) x = entry(rng);
            auto gens = kernel_mod_prime_power(M, p, j);
            auto brute = brute_kernel(M, N);
            for (const auto& g : gens) CHECK(brute.count(g) == 1);
            auto span = span_closure(gens, N, 4, brute.size() + 8);
            CHECK(span == brute);
        }
    }
}

TEST_CASE("rank-nullity over the field case") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<std::uint64_t> entry(0, 10);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 3 + trial % 3, k = 4 + trial % 2;
        std::vector<std::vector<std::uint64_t>> M(n, std::vector<std::uint64_t>(k));
        for (auto& row : M)
            for (auto& x : row) x = entry(rng);
        auto gens = kernel_mod_prime_power(M, 11, 1);
        // row rank via elimination mod 11
        auto rows = M;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = rows.size();
            for (std::size_t r = rank; r < rows.size(); ++r)
                if (rows[r][c] % 11) { piv = r; break; }
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            std::uint64_t inv = 1;
            for (std::uint64_t t = 1; t < 11; ++t)
                if (rows[rank][c] * t % 11 == 1) inv = t;
            for (auto& x : rows[rank]) x = x * inv % 11;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == rank || rows[r][c] % 11 == 0) continue;
                std::uint64_t f = rows[r][c] % 11;
                for (std::size_t i = 0; i < k; ++i)
                    rows[r][i] = (rows[r][i] + (11 - f) * rows[rank][i]) % 11;
            }
            ++rank;
        }
        CHECK(gens.size() + rank == k);
    }
}

TEST_CASE("the example matrix mod 11: kernel spans all six relations") {
    auto kernel = kernel_mod_prime_power(example_matrix(), 11, 1);
    CHECK(kernel.size() == 6);
    for (const auto& rel : kKnownRelations) CHECK(in_span_mod(rel, kernel, 11, 1));
    // the two named combinations are themselves kernel members
    std::vector<std::uint64_t> not_in_kernel{1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_FALSE(in_span_mod(not_in_kernel, kernel, 11, 1));
}

TEST_CASE("search config validation") {
    CHECK_THROWS_AS(make_search_config(3, 11, 1, 1, {}, 9), UsageError);
    CHECK_THROWS_AS(make_search_config(3, 11, 1, 1, {9}, 9), UsageError);   // square
    CHECK_THROWS_AS(make_search_config(3, 11, 1, 1, {7}, 9), UsageError);   // 3 mod 4
    CHECK_THROWS_AS(make_search_config(3, 11, 1, 1, {21}, 9), UsageError);  // gcd 3
    CHECK_THROWS_AS(make_search_config(3, 11, 1, 1, {13}, 9), UsageError);  // 11 splits
    SearchConfig ok = make_search_config(3, 11, 1, 1, {20, 5}, 9);
    CHECK(ok.S == std::vector<long>{5, 20});
    CHECK(ok.warnings.size() == 1); // 20 is not fundamental
}

TEST_CASE("find_congruences: singleton has no relation, duplicates produce one") {
    PlusSpaceForm f = f3(5 * 81);
    SearchConfig single = make_search_config(3, 11, 1, 1, {5}, 0);
    SearchResult r1 = find_congruences(single, f);
    CHECK(r1.certificates.empty());
    CHECK_FALSE(r1.threshold_met);
    CHECK_FALSE(r1.trivial_column[0]); // L_5 itself is not 0 mod 11

    SearchConfig dup = make_search_config(3, 11, 1, 1, {5, 5}, 5);
    SearchResult r2 = find_congruences(dup, f);
    REQUIRE(r2.certificates.size() == 1);
    CHECK(r2.certificates[0].coeffs == std::vector<std::uint64_t>{1, 10});
    CHECK(r2.certificates[0].verified_to == 5);
}

TEST_CASE("verify_congruence flags tampering; certificates round-trip as text") {
    PlusSpaceForm f = f3(5 * 81);
    SearchConfig dup = make_search_config(3, 11, 1, 1, {5, 5}, 5);
    SearchResult res = find_congruences(dup, f);
    REQUIRE(res.certificates.size() == 1);
    CongruenceCertificate cert = res.certificates[0];
    CHECK(verify_congruence(cert, f, 9));
    CHECK(cert.verified_to == 9);
    CongruenceCertificate bad = cert;
    bad.coeffs[1] = 3;
    CHECK_FALSE(verify_congruence(bad, f, 5));

    std::string text = write_certificate(cert);
    CongruenceCertificate back = read_certificate(text);
    CHECK(back.config.S == cert.config.S);
    CHECK(back.coeffs == cert.coeffs);
    CHECK(back.n_terms == cert.n_terms);
    CHECK(back.fd_precision == cert.fd_precision);
    CHECK(back.trivial_column == cert.trivial_column);
    CHECK(verify_congruence(back, f, 5));
}
