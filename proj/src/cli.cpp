#include "qcong/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "qcong/congruence.hpp"
#include "qcong/fd_cache.hpp"
#include "qcong/version.hpp"

namespace qcong {

namespace {

// ceiling on the f_d precision a single command may demand
constexpr long kMaxFdPrecision = 2000000;

// text commands print exact values; this marks the payloads that carry them
nlohmann::json coeff_list(const ZSeries& s) {
    nlohmann::json out = nlohmann::json::array();
    for (long e = s.valuation(); e < s.trunc(); ++e) {
        mpz_class c = s.coeff(e);
        if (c != 0) out.push_back({e, c.get_str()});
    }
    return out;
}

std::string polynomial_string(const std::vector<mpz_class>& coeffs) {
    std::string out;
    for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i) {
        const mpz_class& c = coeffs[static_cast<std::size_t>(i)];
        if (c == 0 && !(coeffs.size() == 1)) continue;
        std::string mono = i == 0 ? "" : i == 1 ? "X" : "X^" + std::to_string(i);
        std::string cs = c.get_str();
        bool negative = cs.size() && cs[0] == '-';
        std::string mag = negative ? cs.substr(1) : cs;
        std::string term = mono.empty() ? mag : (mag == "1" ? mono : mag + "*" + mono);
        if (out.empty()) out = (negative ? "-" : "") + term;
        else out += (negative ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace

nlohmann::json CommandResult::to_json(std::optional<double> timing_ms) const {
    nlohmann::json j{{"status", status},
                     {"command", command},
                     {"payload", payload},
                     {"versions",
                      {{"artifact", kArtifactVersion}, {"fixtures", kFixtureVersion}}}};
    if (timing_ms) j["timing_ms"] = *timing_ms;
    return j;
}

CommandResult cmd_fd(long d, long precision, const std::string& format) {
    if (precision < 0) throw UsageError("precision must be >= 0");
    bool hit = false;
    PlusSpaceForm f = fd_cached(d, precision, &hit);
    CommandResult res;
    res.command = "fd";
    res.payload = {{"d", d},
                   {"precision", precision},
                   {"cache", hit ? "hit" : "miss"},
                   {"series", f.series.to_string()},
                   {"coefficients", coeff_list(f.series)},
                   {"format", format}};
    return res;
}

CommandResult cmd_logderiv(long d, long D, long terms, long p, unsigned j, bool with_mod) {
    if (terms < 0) throw UsageError("terms must be >= 0");
    if (D * terms * terms > kMaxFdPrecision)
        throw PrecisionError("log derivative to " + std::to_string(terms) + " terms needs f_" +
                             std::to_string(d) + " to precision " +
                             std::to_string(D * terms * terms) + ", beyond the ceiling " +
                             std::to_string(kMaxFdPrecision));
    PlusSpaceForm f = fd_cached(d, D * terms * terms);
    LogDerivSeries L = log_deriv(f, D, terms);
    CommandResult res;
    res.command = "logderiv";
    res.payload = {{"d", d},
                   {"D", D},
                   {"terms", terms},
                   {"series", L.series.to_string()},
                   {"coefficients", coeff_list(L.series)}};
    if (with_mod) {
        ModSeries red = reduce_mod(L.series, static_cast<std::uint64_t>(p), j);
        res.payload["mod"] = {{"p", p}, {"j", j}, {"series", red.to_string()}};
    }
    return res;
}

CommandResult cmd_search(long d, long p, unsigned j, long N, std::vector<long> S, long range,
                         long terms, const std::string& out_path) {
    if (S.empty() && range <= 1) throw UsageError("provide --S or a positive --range");
    if (S.empty()) {
        for (long D = 2; D <= range; ++D) {
            if (is_square(D)) continue;
            bool sq_mod = false;
            for (long r = 0; r < 4 * N && !sq_mod; ++r) sq_mod = ((r * r - D) % (4 * N) == 0);
            if (!sq_mod) continue;
            if (std::gcd(D, d) != 1) continue;
            if (!s_p_membership(D, d, p, N)) continue;
            // keep p inert (not merely ramified), as the worked selections do
            if (D % p == 0) continue;
            S.push_back(D);
        }
        if (S.empty()) throw UsageError("no admissible discriminants up to " + std::to_string(range));
    }
    SearchConfig cfg = make_search_config(d, p, j, N, std::move(S), terms);
    long nt = cfg.n_terms;
    if (nt == 0) {
        // mirror find_congruences' default so the f_d precision is known here
        Threshold t = required_set_size(p, j, h_S(cfg.S, d, N), N, ThresholdVariant::from_hS);
        mpz_class num = t.exact_value.get_num(), den = t.exact_value.get_den();
        nt = mpz_class((num + den - 1) / den).get_si();
    }
    if (cfg.S.back() * nt * nt > kMaxFdPrecision)
        throw PrecisionError("search at " + std::to_string(nt) + " terms needs f_" +
                             std::to_string(d) + " to precision " +
                             std::to_string(cfg.S.back() * nt * nt) + ", beyond the ceiling " +
                             std::to_string(kMaxFdPrecision));
    PlusSpaceForm f = fd_cached(d, cfg.S.back() * nt * nt);
    SearchResult sr = find_congruences(cfg, f);

    CommandResult res;
    res.command = "search";
    nlohmann::json certs = nlohmann::json::array();
    std::string file_blob;
    for (const auto& c : sr.certificates) {
        nlohmann::json jc{{"coeffs", c.coeffs},
                          {"verified_to", c.verified_to},
                          {"trivial", c.trivial_column}};
        certs.push_back(jc);
        file_blob += write_certificate(c) + "\n";
    }
    nlohmann::json kernel = nlohmann::json::array();
    for (const auto& g : sr.kernel) kernel.push_back(g);
    res.payload = {{"d", d},
                   {"p", p},
                   {"j", j},
                   {"N", N},
                   {"S", cfg.S},
                   {"n_terms", sr.n_terms},
                   {"threshold", sr.threshold.exact_value.get_str()},
                   {"threshold_met", sr.threshold_met},
                   {"warnings", cfg.warnings},
                   {"kernel", kernel},
                   {"certificates", certs},
                   {"found", !sr.certificates.empty()}};
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << file_blob;
        if (!out) throw Error("could not write certificates to " + out_path);
    }
    res.exit_code = sr.certificates.empty() ? 1 : 0;
    return res;
}

CommandResult cmd_identity_check(const std::string& which, long terms) {
    if (terms < 1) throw UsageError("terms must be >= 1");
    CommandResult res;
    res.command = "identity-check";
    bool ok = false;
    nlohmann::json detail;
    if (which == "j-product") {
        PlusSpaceForm f = fd_cached(3, terms * terms);
        std::map<long, mpz_class> expo;
        for (long n = 1; n <= terms; ++n) expo[n] = 3 * f.coefficient(n * n);
        BorcherdsProduct prod = untwisted_product(expo, {mpq_class(-1)}, terms + 1);
        ZSeries folded = prod.folded();
        ZSeries j = j_invariant(terms);
        ok = agree_up_to(folded, j, terms);
        if (!ok) {
            for (long e = -1; e < terms; ++e)
                if (folded.coeff(e) != j.coeff(e)) {
                    detail["first_mismatch"] = e;
                    break;
                }
        }
    } else if (which == "zagier-twist") {
        PlusSpaceForm f = fd_cached(3, 8 * terms * terms);
        QuadSeries psi = twisted_product_psi(f, 8, terms);
        TwistedClassPolyExpansion hexp = twisted_class_polynomial_expansion(8, 3, terms);
        ok = agree_up_to(psi, hexp.series, terms) && hexp.recognition_residual < 1e-20;
        detail["recognition_residual"] = hexp.recognition_residual;
    } else if (which == "eisenstein") {
        ok = true;
        for (unsigned k = 4; k <= 20; k += 2)
            if (!congruent_one_mod(eisenstein(k, terms + 1), 24)) {
                ok = false;
                detail["failed"] = "E_" + std::to_string(k) + " mod 24";
            }
        for (long pp : {5L, 7L, 11L, 13L})
            if (!congruent_one_mod(eisenstein(static_cast<unsigned>(pp - 1), terms + 1), pp)) {
                ok = false;
                detail["failed"] = "E_" + std::to_string(pp - 1) + " mod " + std::to_string(pp);
            }
    } else {
        throw UsageError("unknown identity '" + which +
                         "' (expected j-product, zagier-twist, eisenstein)");
    }
    res.payload = {{"which", which}, {"terms", terms}, {"ok", ok}, {"detail", detail}};
    if (!ok) {
        res.status = "error";
        res.exit_code = 4;
    }
    return res;
}

CommandResult cmd_hilbert(long disc, long digits) {
    ClassPolynomial H = hilbert_class_polynomial(disc, digits);
    CommandResult res;
    res.command = "hilbert";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : H.coeffs) coeffs.push_back(c.get_str());
    res.payload = {{"disc", disc},
                   {"polynomial", polynomial_string(H.coeffs)},
                   {"coefficients", coeffs},
                   {"degree", H.degree()},
                   {"omega_denominator", H.omega_denominator},
                   {"class_number", class_number(disc)},
                   {"rounding_residual", H.rounding_residual}};
    return res;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact q-series arithmetic for twisted Borcherds products and their "
                 "congruences"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "include wall-clock timing in the output");

    long d = 3, D = 5, precision = 100, terms = 9, p = 11, N = 1, range = 0, disc = -3,
         digits = 0;
    unsigned jpow = 1;
    std::string format = "json", which = "j-product", out_path, s_list;

    app.fallthrough();

    auto* fd_cmd = app.add_subcommand("fd", "coefficients A(D, d) of the plus-space basis");
    fd_cmd->fallthrough();
    fd_cmd->add_option("--d", d, "basis index (0 or 3 mod 4)")->required();
    fd_cmd->add_option("--precision", precision, "inclusive coefficient bound")->required();
    fd_cmd->add_option("--format", format, "json or text");

    auto* ld_cmd = app.add_subcommand("logderiv", "logarithmic derivative of Psi_D(f_d)");
    ld_cmd->fallthrough();
    ld_cmd->add_option("--d", d)->required();
    ld_cmd->add_option("--D", D, "twist discriminant")->required();
    ld_cmd->add_option("--terms", terms, "number of q-coefficients")->required();
    auto* mod_opt = ld_cmd->add_option("--mod", p, "reduce modulo this prime");
    ld_cmd->add_option("--mod-power", jpow, "prime power exponent j");

    auto* se_cmd = app.add_subcommand("search", "find congruences among log derivatives");
    se_cmd->fallthrough();
    se_cmd->add_option("--d", d)->required();
    se_cmd->add_option("--p", p, "prime modulus")->required();
    se_cmd->add_option("--j", jpow, "power of p");
    se_cmd->add_option("--N", N, "level");
    se_cmd->add_option("--S", s_list, "comma-separated twist discriminants");
    se_cmd->add_option("--range", range, "auto-select admissible D in (1, range]");
    se_cmd->add_option("--terms", terms, "coefficients to test (0 = Sturm default)");
    se_cmd->add_option("--out", out_path, "write certificates to this file");

    auto* id_cmd = app.add_subcommand("identity-check", "verify a named identity");
    id_cmd->fallthrough();
    id_cmd->add_option("--which", which, "j-product | zagier-twist | eisenstein")->required();
    id_cmd->add_option("--terms", terms)->required();

    auto* hi_cmd = app.add_subcommand("hilbert", "Hilbert class polynomial");
    hi_cmd->fallthrough();
    hi_cmd->add_option("--disc", disc, "negative discriminant")->required();
    hi_cmd->add_option("--digits", digits, "working precision (0 = automatic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult res;
    try {
        if (fd_cmd->parsed()) {
            if (format != "json" && format != "text") throw UsageError("format must be json or text");
            res = cmd_fd(d, precision, format);
        } else if (ld_cmd->parsed()) {
            res = cmd_logderiv(d, D, terms, p, jpow, mod_opt->count() > 0);
        } else if (se_cmd->parsed()) {
            std::vector<long> S;
            std::stringstream ss(s_list);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) S.push_back(std::stol(item));
            res = cmd_search(d, p, jpow, N, std::move(S), range, terms, out_path);
        } else if (id_cmd->parsed()) {
            res = cmd_identity_check(which, terms);
        } else if (hi_cmd->parsed()) {
            res = cmd_hilbert(disc, digits);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const IdentityError& e) {
        std::cerr << "identity error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (fd_cmd->parsed() && format == "text") {
        std::cout << res.payload["series"].get<std::string>() << "\n";
    } else {
        std::optional<double> t = timing ? std::optional<double>(ms) : std::nullopt;
        std::cout << res.to_json(t).dump(2) << "\n";
    }
    return res.exit_code;
}

} // namespace qcong
