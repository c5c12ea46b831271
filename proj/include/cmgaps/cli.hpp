// cli.hpp - the `cmgaps` command surface: coeffs, verify, gaps, intervals.
//
// Exit codes: 0 ok, 1 a mathematical property was violated, 2 invalid
// configuration or budget exceeded, 3 internal cross-check mismatch.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cmgaps/coeffs.hpp"

namespace cmgaps::cli {

enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_config = 2, exit_mismatch = 3 };

enum class Command { coeffs, verify, gaps, intervals };
enum class Format { csv, json };
enum class StrategyChoice { recurrence, lattice, both };

struct RunConfig {
    Command command = Command::coeffs;
    unsigned m = 1;
    std::uint64_t limit = 0;
    std::uint64_t N = 192;
    std::optional<double> C;
    std::uint64_t n0 = 100;
    std::optional<std::uint64_t> calibrate_prefix;
    double slack = 2.0;
    std::uint64_t p_max = 10'000;
    std::uint64_t x_lo = 1;
    std::uint64_t x_hi = 1;
    std::uint64_t stride = 1;
    std::size_t top = 10;
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> series_path;
    Format format = Format::json;
    StrategyChoice strategy = StrategyChoice::recurrence;
    bool write_csv = true;
};

// Throws contract_error / budget_error describing the first invalid field.
void validate(const RunConfig& config);

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gaps(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_intervals(const RunConfig& config, std::ostream& out, std::ostream& err);

// Validates, dispatches and maps library exceptions onto exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs the selected command.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmgaps::cli
