#include "qcong/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcong/version.hpp"

namespace qcong {

long index_gamma0(long N) {
    if (N < 1) throw DomainError("level must be positive");
    long idx = N;
    long m = N;
    for (long f = 2; f * f <= m; ++f) {
        if (m % f) continue;
        idx = idx / f * (f + 1);
        while (m % f == 0) m /= f;
    }
    if (m > 1) idx = idx / m * (m + 1);
    return idx;
}

bool s_p_membership(long D, long d, long p, long N) {
    (void)N; // the level enters through the D = r^2 mod 4N admissibility check
    int kr = kronecker(-d * D, p);
    return kr == 0 || kr == -1;
}

long h_S(const std::vector<long>& S, long d, long N) {
    if (S.empty()) throw DomainError("h_S needs a nonempty set");
    long idx = index_gamma0(N);
    long best = 0;
    for (long D : S) best = std::max(best, idx * class_number_fundamental(-d * D));
    return best;
}

double class_number_upper_bound(long disc_abs) {
    if (disc_abs < 3) throw DomainError("class_number_upper_bound needs |disc| >= 3");
    double x = static_cast<double>(disc_abs);
    return std::sqrt(x) * (std::log(x) + 2.0) / M_PI;
}

Threshold required_set_size(long p, unsigned j, long hS, long N, ThresholdVariant variant,
                            long D_S, long d) {
    long pw = 1;
    for (unsigned i = 1; i < j; ++i) pw *= p;
    const long idx = index_gamma0(N);
    if (variant == ThresholdVariant::from_hS) {
        mpq_class v(mpz_class(p - 1) * pw * hS + 2, 12);
        v.canonicalize();
        v *= idx;
        return {true, v, v.get_d()};
    }
    if (D_S <= 0 || d <= 0)
        throw DomainError("required_set_size variant (ii) needs D_S and d");
    const double x = static_cast<double>(D_S) * static_cast<double>(d);
    const double num = static_cast<double>(p - 1) * static_cast<double>(pw) *
                           std::sqrt(x) * (std::log(x) + 2.0) +
                       2.0 * M_PI;
    const double v = num / (12.0 * M_PI) * static_cast<double>(idx) * static_cast<double>(idx);
    return {false, mpq_class(0), v};
}

namespace {

unsigned p_valuation(std::uint64_t x, std::uint64_t p, unsigned cap) {
    unsigned v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

} // namespace

std::vector<std::vector<std::uint64_t>> kernel_mod_prime_power(
    const std::vector<std::vector<std::uint64_t>>& M, std::uint64_t p, unsigned j) {
    ResidueRing ring(p, j);
    const std::uint64_t N = ring.modulus;
    const std::size_t n = M.size();
    const std::size_t k = n == 0 ? 0 : M[0].size();
    for (const auto& row : M)
        if (row.size() != k) throw DomainError("kernel: ragged matrix");

    // rows of [M^T | I]; combinations with vanishing left part are kernel vectors
    std::vector<std::vector<std::uint64_t>> pool;
    pool.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::uint64_t> row(n + k, 0);
        for (std::size_t r = 0; r < n; ++r) row[r] = M[r][i] % N;
        row[n + i] = 1;
        pool.push_back(std::move(row));
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = pool.size();
        unsigned bestv = j + 1;
        for (std::size_t r = 0; r < pool.size(); ++r) {
            if (pool[r][col] == 0) continue;
            unsigned v = p_valuation(pool[r][col], p, j);
            if (v < bestv) {
                bestv = v;
                best = r;
            }
        }
        if (best == pool.size()) continue;
        std::vector<std::uint64_t> pivot = std::move(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        std::uint64_t pv = 1;
        for (unsigned i = 0; i < bestv; ++i) pv *= p;
        std::uint64_t w = ring.inv(pivot[col] / pv); // unit cofactor
        for (auto& x : pivot) x = ring.mul(x, w);
        for (auto& row : pool) {
            if (row[col] == 0) continue;
            std::uint64_t m = row[col] / pv; // exact: pivot had minimal valuation
            for (std::size_t i = 0; i < row.size(); ++i)
                row[i] = ring.sub(row[i], ring.mul(m, pivot[i]));
        }
        if (bestv > 0) {
            // annihilator continuation: (N / p^v) * pivot re-enters with this
            // column cleared (the Howell step; never triggers for j = 1)
            std::vector<std::uint64_t> ann(pivot.size());
            for (std::size_t i = 0; i < pivot.size(); ++i) ann[i] = ring.mul(N / pv, pivot[i]);
            pool.push_back(std::move(ann));
        }
    }

    std::vector<std::vector<std::uint64_t>> gens;
    for (const auto& row : pool) {
        std::vector<std::uint64_t> tail(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
        bool nonzero = false;
        for (auto x : tail) nonzero = nonzero || x != 0;
        if (!nonzero) continue;
        // canonical scale: first unit entry becomes 1
        for (auto x : tail) {
            if (x == 0) continue;
            if (ring.is_unit(x)) {
                std::uint64_t w = ring.inv(x);
                for (auto& y : tail) y = ring.mul(y, w);
            }
            break;
        }
        gens.push_back(std::move(tail));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

bool in_span_mod(const std::vector<std::uint64_t>& v,
                 const std::vector<std::vector<std::uint64_t>>& gens, std::uint64_t p,
                 unsigned j) {
    ResidueRing ring(p, j);
    const std::size_t k = v.size();
    // Howell-reduce the generators, then greedily eliminate v
    std::vector<std::vector<std::uint64_t>> rows = gens;
    std::vector<std::uint64_t> target = v;
    for (auto& x : target) x %= ring.modulus;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t best = rows.size();
        unsigned bestv = j + 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            unsigned val = p_valuation(rows[r][col], p, j);
            if (val < bestv) {
                bestv = val;
                best = r;
            }
        }
        if (best == rows.size()) {
            if (target[col] != 0) return false;
            continue;
        }
        std::vector<std::uint64_t> pivot = std::move(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        std::uint64_t pv = 1;
        for (unsigned i = 0; i < bestv; ++i) pv *= p;
        std::uint64_t w = ring.inv(pivot[col] / pv);
        for (auto& x : pivot) x = ring.mul(x, w);
        for (auto& row : rows) {
            if (row[col] == 0) continue;
            std::uint64_t m = row[col] / pv;
            for (std::size_t i = 0; i < k; ++i) row[i] = ring.sub(row[i], ring.mul(m, pivot[i]));
        }
        if (bestv > 0) {
            std::vector<std::uint64_t> ann(k);
            for (std::size_t i = 0; i < k; ++i) ann[i] = ring.mul(ring.modulus / pv, pivot[i]);
            bool nz = false;
            for (auto x : ann) nz = nz || x != 0;
            if (nz) rows.push_back(std::move(ann));
        }
        if (target[col] != 0) {
            if (target[col] % pv != 0) return false;
            std::uint64_t m = target[col] / pv;
            for (std::size_t i = 0; i < k; ++i)
                target[i] = ring.sub(target[i], ring.mul(m, pivot[i]));
        }
    }
    for (auto x : target)
        if (x != 0) return false;
    return true;
}

SearchConfig make_search_config(long d, long p, unsigned j, long N, std::vector<long> S,
                                long n_terms) {
    if (d < 0 || (d % 4 != 0 && d % 4 != 3))
        throw UsageError("d must be >= 0 with d = 0, 3 mod 4");
    bool prime = p >= 2;
    for (long f = 2; f * f <= p && prime; ++f) prime = p % f != 0;
    if (!prime) throw UsageError(std::to_string(p) + " is not prime");
    if (S.empty()) throw UsageError("the discriminant set S must be nonempty");
    std::sort(S.begin(), S.end());
    SearchConfig cfg{d, p, j, N, std::move(S), n_terms, {}};
    for (long D : cfg.S) {
        if (D <= 1 || is_square(D))
            throw UsageError("D = " + std::to_string(D) + " must be > 1 and not a square");
        bool sq_mod = false;
        for (long r = 0; r < 4 * N && !sq_mod; ++r) sq_mod = ((r * r - D) % (4 * N) == 0);
        if (!sq_mod)
            throw UsageError("D = " + std::to_string(D) + " is not a square mod 4N = " +
                             std::to_string(4 * N));
        if (std::gcd(D, d) != 1)
            throw UsageError("D = " + std::to_string(D) + " is not coprime to d = " +
                             std::to_string(d));
        if (!s_p_membership(D, d, p, N))
            throw UsageError("D = " + std::to_string(D) + " fails S_p membership: p = " +
                             std::to_string(p) + " splits in Q(sqrt(" + std::to_string(-d * D) +
                             "))");
        if (!is_fundamental_discriminant(D))
            cfg.warnings.push_back("D = " + std::to_string(D) +
                                   " is not a fundamental discriminant; accepted, class "
                                   "numbers use its fundamental part");
    }
    return cfg;
}

namespace {

long default_n_terms(const SearchConfig& cfg) {
    long hs = h_S(cfg.S, cfg.d, cfg.N);
    Threshold t = required_set_size(cfg.p, cfg.j, hs, cfg.N, ThresholdVariant::from_hS);
    mpz_class num = t.exact_value.get_num(), den = t.exact_value.get_den();
    mpz_class q = (num + den - 1) / den;
    return q.get_si();
}

std::vector<std::uint64_t> reduced_column(const PlusSpaceForm& f, long D, long p, unsigned j,
                                          long nt) {
    ModSeries col = reduce_mod(log_deriv(f, D, nt).series, static_cast<std::uint64_t>(p), j);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(nt), 0);
    for (long e = 1; e <= nt; ++e) out[static_cast<std::size_t>(e - 1)] = col.coeff(e);
    return out;
}

} // namespace

SearchResult find_congruences(const SearchConfig& config, const PlusSpaceForm& f) {
    if (f.d != config.d)
        throw DomainError("find_congruences given f_" + std::to_string(f.d) +
                          " but config.d = " + std::to_string(config.d));
    SearchResult res;
    res.n_terms = config.n_terms > 0 ? config.n_terms : default_n_terms(config);
    const long nt = res.n_terms;
    const long maxD = config.S.back();
    if (f.precision < maxD * nt * nt)
        throw PrecisionError("find_congruences needs f_" + std::to_string(f.d) +
                             " to precision " + std::to_string(maxD * nt * nt) + ", have " +
                             std::to_string(f.precision));
    const long hs = h_S(config.S, config.d, config.N);
    res.threshold = required_set_size(config.p, config.j, hs, config.N,
                                      ThresholdVariant::from_hS);
    res.threshold_met = mpq_class(static_cast<long>(config.S.size())) > res.threshold.exact_value;

    const std::size_t k = config.S.size();
    std::vector<std::vector<std::uint64_t>> cols;
    cols.reserve(k);
    for (long D : config.S) cols.push_back(reduced_column(f, D, config.p, config.j, nt));
    res.trivial_column.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        bool zero = true;
        for (auto x : cols[i]) zero = zero && x == 0;
        res.trivial_column[i] = zero;
    }
    std::vector<std::vector<std::uint64_t>> M(static_cast<std::size_t>(nt),
                                              std::vector<std::uint64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (long r = 0; r < nt; ++r) M[static_cast<std::size_t>(r)][i] = cols[i][static_cast<std::size_t>(r)];
    res.kernel = kernel_mod_prime_power(M, static_cast<std::uint64_t>(config.p), config.j);

    for (const auto& gen : res.kernel) {
        bool unit = false;
        for (auto x : gen) unit = unit || (x % static_cast<std::uint64_t>(config.p) != 0 && x != 0);
        if (!unit) continue;
        CongruenceCertificate cert;
        cert.config = config;
        cert.config.n_terms = nt;
        cert.coeffs = gen;
        cert.n_terms = nt;
        cert.fd_precision = f.precision;
        cert.trivial_column = res.trivial_column;
        if (!verify_congruence(cert, f, nt))
            throw Error("kernel vector failed verification (bug)");
        res.certificates.push_back(std::move(cert));
    }
    return res;
}

bool verify_congruence(CongruenceCertificate& cert, const PlusSpaceForm& f, long T) {
    const auto& S = cert.config.S;
    if (cert.coeffs.size() != S.size())
        throw DomainError("certificate coefficient vector does not match S");
    if (f.precision < S.back() * T * T)
        throw PrecisionError("verify_congruence needs f precision " +
                             std::to_string(S.back() * T * T) + ", have " +
                             std::to_string(f.precision));
    ResidueRing ring(static_cast<std::uint64_t>(cert.config.p), cert.config.j);
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(T), 0);
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (cert.coeffs[i] == 0) continue;
        auto col = reduced_column(f, S[i], cert.config.p, cert.config.j, T);
        for (std::size_t r = 0; r < col.size(); ++r)
            acc[r] = ring.add(acc[r], ring.mul(cert.coeffs[i] % ring.modulus, col[r]));
    }
    for (auto x : acc)
        if (x != 0) return false;
    cert.verified_to = std::max(cert.verified_to, T);
    return true;
}

std::string write_certificate(const CongruenceCertificate& cert) {
    std::ostringstream os;
    os << "qcong-certificate-version: " << kFixtureVersion << "\n";
    os << "artifact-version: " << kArtifactVersion << "\n";
    os << "d: " << cert.config.d << "\n";
    os << "p: " << cert.config.p << "\n";
    os << "j: " << cert.config.j << "\n";
    os << "N: " << cert.config.N << "\n";
    os << "S:";
    for (long D : cert.config.S) os << " " << D;
    os << "\n";
    os << "coeffs:";
    for (auto c : cert.coeffs) os << " " << c;
    os << "\n";
    os << "n-terms: " << cert.n_terms << "\n";
    os << "fd-precision: " << cert.fd_precision << "\n";
    os << "verified-to: " << cert.verified_to << "\n";
    os << "trivial:";
    for (bool b : cert.trivial_column) os << " " << (b ? 1 : 0);
    os << "\n";
    return os.str();
}

CongruenceCertificate read_certificate(const std::string& text) {
    CongruenceCertificate cert;
    std::istringstream is(text);
    std::string line;
    bool version_ok = false;
    while (std::getline(is, line)) {
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::istringstream val(line.substr(colon + 1));
        if (key == "qcong-certificate-version") {
            std::string v;
            val >> v;
            version_ok = v == kFixtureVersion;
        } else if (key == "d") val >> cert.config.d;
        else if (key == "p") val >> cert.config.p;
        else if (key == "j") val >> cert.config.j;
        else if (key == "N") val >> cert.config.N;
        else if (key == "S") {
            long D;
            while (val >> D) cert.config.S.push_back(D);
        } else if (key == "coeffs") {
            std::uint64_t c;
            while (val >> c) cert.coeffs.push_back(c);
        } else if (key == "n-terms") val >> cert.n_terms;
        else if (key == "fd-precision") val >> cert.fd_precision;
        else if (key == "verified-to") val >> cert.verified_to;
        else if (key == "trivial") {
            int b;
            while (val >> b) cert.trivial_column.push_back(b != 0);
        }
    }
    if (!version_ok) throw ParseError("certificate version mismatch or missing");
    if (cert.config.S.empty() || cert.coeffs.size() != cert.config.S.size())
        throw ParseError("certificate S/coeffs are inconsistent");
    cert.config.n_terms = cert.n_terms;
    return cert;
}

} // namespace qcong
