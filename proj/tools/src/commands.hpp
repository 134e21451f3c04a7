// commands.hpp — Subcommand implementations. Each returns the full output text
// so the driver, the tests and the benchmarks share one code path.

#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace qdsps::cli {

// '#'-prefixed header: the command name, a "# config" marker and every key.
std::string header(const std::string& command, const RunConfig& config);

std::string cmd_spectrum(const RunConfig& config);
std::string cmd_merit(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config, const std::vector<ArchType>& archs, unsigned threads);

struct BenchmarkOutcome {
    std::string csv;
    double max_gap = 0.0;   // over points with Gamma_cav < kappa_c and 4 g < kappa_c
    std::size_t valid_points = 0;
    bool passed = false;
};
// Requires a cavity configuration.
BenchmarkOutcome cmd_benchmark(const RunConfig& config, unsigned threads);

} // namespace qdsps::cli
