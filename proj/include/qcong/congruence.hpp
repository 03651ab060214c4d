#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcong/modforms.hpp"
#include "qcong/products.hpp"

namespace qcong {

// [SL2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)
long index_gamma0(long N);

// p inert or ramified in Q(sqrt(-dD)): kronecker(-dD, p) in {0, -1}.
// The scalar input f_d has principal-part support {-d}, so that single
// discriminant decides membership.
bool s_p_membership(long D, long d, long p, long N = 1);

// max over D in S of index * h(-dD), with h taken for the fundamental part of
// the discriminant (the convention the worked numerics use for the
// non-fundamental members)
long h_S(const std::vector<long>& S, long d, long N = 1);

// sqrt(d) (log d + 2) / pi
double class_number_upper_bound(long disc_abs);

struct Threshold {
    bool exact = true;
    mpq_class exact_value; // meaningful when exact
    double value = 0;      // always set
};

// (i) from the true class-number budget h_S, (ii) from the analytic
// class-number bound with D_S = max S
enum class ThresholdVariant { from_hS, from_bound };

// variant from_hS: ((p-1) p^(j-1) h_S + 2) / 12 * index, exact rational;
// variant from_bound substitutes sqrt|D_S d|(log|D_S d| + 2)/pi and squares
// the index factor; needs D_S and d
Threshold required_set_size(long p, unsigned j, long hS, long N, ThresholdVariant variant,
                            long D_S = 0, long d = 0);

// Generating set of {v : M v = 0 over Z/p^j}. Gaussian elimination over the
// field when j = 1; for j > 1 the same sweep keeps p-power pivots and feeds
// their annihilator rows back in (Howell-form reduction).
std::vector<std::vector<std::uint64_t>> kernel_mod_prime_power(
    const std::vector<std::vector<std::uint64_t>>& M, std::uint64_t p, unsigned j);

// membership of v in the span of gens over Z/p^j
bool in_span_mod(const std::vector<std::uint64_t>& v,
                 const std::vector<std::vector<std::uint64_t>>& gens, std::uint64_t p,
                 unsigned j);

struct SearchConfig {
    long d = 3;
    long p = 11;
    unsigned j = 1;
    long N = 1;
    std::vector<long> S; // ascending; duplicates permitted
    long n_terms = 0;    // 0 = pick the variant-(i) ceiling
    std::vector<std::string> warnings;
};

// validates admissibility (D > 1 non-square, square mod 4N, coprime to d,
// s_p-membership); flags non-fundamental members with a warning instead of
// rejecting them
SearchConfig make_search_config(long d, long p, unsigned j, long N, std::vector<long> S,
                                long n_terms = 0);

struct CongruenceCertificate {
    SearchConfig config;
    std::vector<std::uint64_t> coeffs; // indexed by ascending S; some entry is a unit
    long n_terms = 0;
    long fd_precision = 0;
    long verified_to = 0;
    std::vector<bool> trivial_column; // per D: whether L_D itself = 0 mod p^j
};

struct SearchResult {
    std::vector<CongruenceCertificate> certificates;
    std::vector<std::vector<std::uint64_t>> kernel; // full generating set
    std::vector<bool> trivial_column;
    long n_terms = 0;
    Threshold threshold;
    bool threshold_met = false;
};

// builds the coefficient matrix of the reduced log derivatives and returns a
// certificate for every kernel generator with a unit entry, each verified
// coefficientwise to n_terms
SearchResult find_congruences(const SearchConfig& config, const PlusSpaceForm& f);

// recomputes the combination to q^T; updates cert.verified_to on success
bool verify_congruence(CongruenceCertificate& cert, const PlusSpaceForm& f, long T);

std::string write_certificate(const CongruenceCertificate& cert);
CongruenceCertificate read_certificate(const std::string& text);

} // namespace qcong
