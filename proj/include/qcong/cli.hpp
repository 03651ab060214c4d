#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcong {

// exit codes: 0 success, 1 search found nothing, 2 usage error,
// 3 precision error, 4 identity-check failure
struct CommandResult {
    int exit_code = 0;
    std::string command;
    std::string status = "ok";
    nlohmann::json payload;

    nlohmann::json to_json(std::optional<double> timing_ms) const;
};

CommandResult cmd_fd(long d, long precision, const std::string& format);
CommandResult cmd_logderiv(long d, long D, long terms, long p, unsigned j, bool with_mod);
CommandResult cmd_search(long d, long p, unsigned j, long N, std::vector<long> S, long range,
                         long terms, const std::string& out_path);
CommandResult cmd_identity_check(const std::string& which, long terms);
CommandResult cmd_hilbert(long disc, long digits);

int run_cli(int argc, const char* const* argv);

} // namespace qcong
