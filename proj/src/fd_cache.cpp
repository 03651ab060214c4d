#include "qcong/fd_cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcong/version.hpp"

namespace qcong {

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string coefficient_block(const ZSeries& s) {
    std::ostringstream os;
    for (long e = s.valuation(); e < s.trunc(); ++e) {
        mpz_class c = s.coeff(e);
        if (c != 0) os << e << " " << c.get_str() << "\n";
    }
    return os.str();
}

} // namespace

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("QCONG_CACHE_DIR")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::filesystem::path(xdg) / "qcong";
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "qcong";
    return std::filesystem::temp_directory_path() / "qcong-cache";
}

PlusSpaceForm fd_cached(long d, long precision, const std::filesystem::path& dir, bool* hit) {
    if (hit) *hit = false;
    const std::filesystem::path file = dir / ("fd_" + std::to_string(d) + ".txt");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::string line;
        long ver = -1, dd = -1, prec = -1;
        std::string checksum;
        bool header_ok = true;
        for (int i = 0; i < 4 && std::getline(in, line); ++i) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "qcong-fd-cache:") ls >> ver;
            else if (key == "d:") ls >> dd;
            else if (key == "precision:") ls >> prec;
            else if (key == "checksum:") ls >> checksum;
            else header_ok = false;
        }
        if (header_ok && ver == kFdCacheVersion && dd == d && prec >= precision) {
            std::ostringstream body;
            body << in.rdbuf();
            std::ostringstream want;
            want << std::hex << fnv1a(body.str());
            if (want.str() == checksum) {
                std::istringstream bs(body.str());
                long e;
                std::string cs;
                std::vector<std::pair<long, mpz_class>> entries;
                long val = -d;
                while (bs >> e >> cs) entries.emplace_back(e, mpz_class(cs));
                std::vector<mpz_class> coeffs(static_cast<std::size_t>(prec + 1 + d), 0);
                for (auto& [ee, cc] : entries)
                    coeffs[static_cast<std::size_t>(ee - val)] = std::move(cc);
                ZSeries s = ZSeries::from_coeffs(IntegerRing{}, val, std::move(coeffs), prec + 1);
                if (hit) *hit = true;
                return {d, s.truncated(precision + 1), precision};
            }
        }
    }

    PlusSpaceForm f = fd(d, precision);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string body = coefficient_block(f.series);
    std::ostringstream sum;
    sum << std::hex << fnv1a(body);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << "qcong-fd-cache: " << kFdCacheVersion << "\n";
        out << "d: " << d << "\n";
        out << "precision: " << precision << "\n";
        out << "checksum: " << sum.str() << "\n";
        out << body;
        if (!out) return f; // cache write is best-effort
    }
    std::filesystem::rename(tmp, file, ec);
    return f;
}

PlusSpaceForm fd_cached(long d, long precision, bool* hit) {
    return fd_cached(d, precision, default_cache_dir(), hit);
}

} // namespace qcong
