// cli.hpp
// Command-line front end: run | sweep | verify with text, JSON and CSV
// reports. Exit codes: 0 success, 1 verification failure, 2 usage or
// configuration error.

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "telsim/analysis.hpp"
#include "telsim/verification.hpp"

namespace telsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Command { run, sweep, verify };
enum class OutputFormat { text, json, csv };

struct RunConfig {
    Command command = Command::run;
    Protocol protocol = Protocol::qubit_assisted;
    double alpha_sq = 0.5;
    // re_a, im_a, re_b, im_b; nullopt means Haar-random per trial
    std::optional<std::array<double, 4>> input;
    std::size_t trials = 100'000;
    std::uint64_t seed = 42;
    std::vector<double> grid;  // sweep only; empty selects the default grid
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> out_path;
    bool quick = false;
    bool timestamps = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, dispatches to the selected subcommand and returns the
// process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace telsim::cli
