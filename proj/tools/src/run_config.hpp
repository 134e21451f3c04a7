// run_config.hpp — Flat key=value run configuration for the qdsps tool.
//
// Syntax: one `section.key = value` per line, '#' starts a comment, blank
// lines are ignored. Unknown keys and malformed values are rejected with the
// offending line number. The full schema is listed in README.md.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdsps/emitter_dynamics.hpp"
#include "qdsps/figures_of_merit.hpp"
#include "qdsps/phonon_env.hpp"

namespace qdsps::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

enum class ArchType { waveguide, filtered, cavity };

struct RunConfig {
    // phonon.*
    double alpha_ps2 = 0.03;
    double xi_meV = 1.45;
    double T_K = 4.0;
    // qd.*
    double Gamma_ueV = 1.0;
    double gamma_ueV = 0.0;
    double omega_X_meV = 0.0;
    // arch.*
    ArchType arch = ArchType::filtered;
    double F_wg = 10.0;                     // Gamma_D = F_wg * Gamma
    std::optional<double> Gamma_O_ueV;      // unset: 0 for waveguides, Gamma for the cavity
    double kappa_f_ueV = 100.0;
    double filter_detuning_ueV = 0.0;
    double g_ueV = 30.0;
    double kappa_c_ueV = 120.0;
    // numerics.*
    double rel_tol = 1e-4;
    double tau_step_ps = 0.01;
    double tau_cap_ps = 80.0;
    double kernel_half_width_xi = 12.0;
    int kernel_points_per_xi = 400;
    int diagonal_order = 20;
    SidebandModel sideband_model = SidebandModel::exact;
    bool include_chi_z = true;
    CavityRateConvention cavity_rates = CavityRateConvention::renormalised;
    // sweep.*
    double kappa_min_ueV = 10.0;
    double kappa_max_ueV = 10000.0;
    int points = 50;
    bool linear = false;
    double omega_c_meV = 1400.0;
    // benchmark.*
    double max_gap = 0.01;
    // output.*
    std::string out = "-";

    bool operator==(const RunConfig&) const = default;
};

// Named parameter sets: fig3 (the defaults) and figS1.
RunConfig preset(std::string_view name);

// Sets one key; `line` only decorates error messages.
void apply(RunConfig& config, std::string_view key, std::string_view value, int line = 0);
// "key=value" as given on the command line.
void apply_assignment(RunConfig& config, std::string_view assignment);

// Parses config text on top of `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Every key in schema order, as "key=value" lines.
std::vector<std::string> config_lines(const RunConfig& config);
// Recovers a config from output text whose '#' header was written by
// `config_lines` after a "# config" marker.
RunConfig parse_echo(std::string_view text);

// Throws ConfigError if a physical value is out of range.
void validate(const RunConfig& config);

std::string_view arch_name(ArchType type);
ArchType parse_arch(std::string_view name);

PhononParameters phonon_parameters(const RunConfig& config);
PhononGridOptions grid_options(const RunConfig& config);
QDParams qd_parameters(const RunConfig& config);
SourceArchitecture architecture(const RunConfig& config);
SourceArchitecture architecture(const RunConfig& config, ArchType type);
MeritOptions merit_options(const RunConfig& config);

} // namespace qdsps::cli
