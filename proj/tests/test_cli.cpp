#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(QCONG_BIN) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct CacheDirGuard {
    std::filesystem::path dir;
    explicit CacheDirGuard(const std::string& name) {
        dir = std::filesystem::temp_directory_path() / name;
        std::filesystem::remove_all(dir);
        setenv("QCONG_CACHE_DIR", dir.c_str(), 1);
    }
    ~CacheDirGuard() {
        std::filesystem::remove_all(dir);
        unsetenv("QCONG_CACHE_DIR");
    }
};

} // namespace

TEST_CASE("fd: json payload, text format, determinism, cache hits") {
    CacheDirGuard cache("qcong-cli-test-fd");
    RunResult a = run("fd --d 3 --precision 12");
    CHECK(a.exit_code == 0);
    json ja = json::parse(a.out);
    CHECK(ja["status"] == "ok");
    CHECK(ja["payload"]["cache"] == "miss");
    bool saw = false;
    for (const auto& pair : ja["payload"]["coefficients"])
        if (pair[0] == 1) {
            CHECK(pair[1] == "-248");
            saw = true;
        }
    CHECK(saw);
    CHECK(ja["versions"]["artifact"].is_string());

    RunResult b = run("fd --d 3 --precision 12");
    CHECK(b.exit_code == 0);
    json jb = json::parse(b.out);
    CHECK(jb["payload"]["cache"] == "hit");

    // byte-identical repetition with warm cache
    RunResult c = run("fd --d 3 --precision 12");
    CHECK(c.out == b.out);

    RunResult t = run("fd --d 0 --precision 9 --format text");
    CHECK(t.exit_code == 0);
    CHECK(t.out == "1 + 2*q + 2*q^4 + 2*q^9 + O(q^10)\n");

    RunResult timed = run("fd --d 3 --precision 12 --timing");
    json jt = json::parse(timed.out);
    CHECK(jt.contains("timing_ms"));
    CHECK_FALSE(json::parse(c.out).contains("timing_ms"));
}

TEST_CASE("logderiv: known values mod 11") {
    CacheDirGuard cache("qcong-cli-test-ld");
    RunResult r = run("logderiv --d 3 --D 5 --mod 11 --terms 9");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["payload"]["mod"]["series"] ==
          "3*q + 5*q^2 + 3*q^3 + 6*q^4 + 3*q^5 + 5*q^6 + 5*q^9 + O(q^10)");

    RunResult empty = run("logderiv --d 3 --D 5 --terms 0");
    CHECK(empty.exit_code == 0);
    CHECK(json::parse(empty.out)["payload"]["series"] == "O(q^1)");
}

TEST_CASE("search: exit codes distinguish found and none-found") {
    CacheDirGuard cache("qcong-cli-test-se");
    // two independent columns: nothing found, exit 1
    RunResult none = run("search --d 3 --p 11 --S 5,20 --terms 5");
    CHECK(none.exit_code == 1);
    json jn = json::parse(none.out);
    CHECK(jn["payload"]["found"] == false);
    CHECK(jn["payload"]["threshold_met"] == true); // 2 > 22/12

    // duplicated column forces the (1, -1) relation
    RunResult dup = run("search --d 3 --p 11 --S 5,5 --terms 5");
    CHECK(dup.exit_code == 0);
    json jd = json::parse(dup.out);
    CHECK(jd["payload"]["found"] == true);
    REQUIRE(jd["payload"]["certificates"].size() == 1);
    CHECK(jd["payload"]["certificates"][0]["coeffs"] == json::array({1, 10}));

    RunResult usage = run("search --d 3 --p 11");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("search: range auto-filter selects the worked example set") {
    CacheDirGuard cache("qcong-cli-test-range");
    // terms 1 keeps this fast; the selection logic is what's under test
    RunResult r = run("search --d 3 --p 11 --range 104 --terms 1");
    json j = json::parse(r.out);
    CHECK(j["payload"]["S"] == json::array({5, 20, 37, 53, 56, 80, 89, 92, 97, 104}));
}

TEST_CASE("identity-check subcommand") {
    CacheDirGuard cache("qcong-cli-test-id");
    RunResult e = run("identity-check --which eisenstein --terms 40");
    CHECK(e.exit_code == 0);
    CHECK(json::parse(e.out)["payload"]["ok"] == true);

    RunResult jp = run("identity-check --which j-product --terms 12");
    CHECK(jp.exit_code == 0);

    RunResult zt = run("identity-check --which zagier-twist --terms 8");
    CHECK(zt.exit_code == 0);
    CHECK(json::parse(zt.out)["payload"]["ok"] == true);

    RunResult bad = run("identity-check --which nonsense --terms 5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("fd rejects invalid d") {
    RunResult r = run("fd --d 2 --precision 5");
    CHECK(r.exit_code == 2);
}

TEST_CASE("hilbert subcommand") {
    RunResult h3 = run("hilbert --disc -3");
    json j3 = json::parse(h3.out);
    CHECK(h3.exit_code == 0);
    CHECK(j3["payload"]["polynomial"] == "X");
    CHECK(j3["payload"]["omega_denominator"] == 3);

    RunResult h4 = run("hilbert --disc -4");
    json j4 = json::parse(h4.out);
    CHECK(j4["payload"]["polynomial"] == "X - 1728");
    CHECK(j4["payload"]["omega_denominator"] == 2);

    RunResult h15 = run("hilbert --disc -15");
    json j15 = json::parse(h15.out);
    CHECK(j15["payload"]["degree"] == 2);
    CHECK(j15["payload"]["class_number"] == 2);

    RunResult badusage = run("hilbert --disc 5");
    CHECK(badusage.exit_code == 2);
}

TEST_CASE("precision guard returns exit code 3") {
    CacheDirGuard cache("qcong-cli-test-prec");
    RunResult r = run("logderiv --d 3 --D 104 --terms 4000");
    CHECK(r.exit_code == 3);
}
