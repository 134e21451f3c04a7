// commands.cpp

#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "qdsps/spectra.hpp"
#include "qdsps/sweep.hpp"
#include "qdsps/units.hpp"

namespace qdsps::cli {

namespace {

PhononEnvironment make_environment(const RunConfig& config) {
    return PhononEnvironment(phonon_parameters(config), grid_options(config));
}

std::string line(const char* format, auto... args) {
    char buf[1024];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

} // namespace

std::string header(const std::string& command, const RunConfig& config) {
    std::string out = "# qdsps " + command + "\n# config\n";
    for (const auto& l : config_lines(config)) out += "# " + l + "\n";
    return out;
}

std::string cmd_spectrum(const RunConfig& config) {
    validate(config);
    const auto env = make_environment(config);
    const auto source = build_source(qd_parameters(config), architecture(config), env, merit_options(config));
    const auto grid = export_grid(*source.bare);
    const auto rows = sample_diagonal(source.detected, grid);
    std::vector<std::string> lines = {"qdsps spectrum", "config"};
    for (auto& l : config_lines(config)) lines.push_back(std::move(l));
    return spectrum_csv(rows, config.omega_X_meV, lines);
}

std::string cmd_merit(const RunConfig& config) {
    validate(config);
    const auto env = make_environment(config);
    const auto r = compute_merit(qd_parameters(config), architecture(config), env, merit_options(config));
    std::string out = header("merit", config);
    out += "arch,I_full,I_error,I_analytic,eta_full,eta_error,eta_analytic,B,F,P_ZPL,P_SB,P_D,P_O,P_rej,"
           "Gamma_tot_ueV,gamma_tot_ueV,Gamma_cav_ueV,gamma_ph_ueV,gamma_ph_weak_ueV,cross_fraction,"
           "flag_strong_coupling,flag_adiabatic,flag_polaron_valid,flag_confluent\n";
    out += line("%s,%.8e,%.3e,%.8e,%.8e,%.3e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.3e,"
                "%d,%d,%d,%d\n",
                r.architecture.c_str(), r.I, r.I_error, r.analytic_I, r.eta, r.eta_error, r.analytic_eta, r.B, r.F,
                r.P_ZPL, r.P_SB, r.P_D, r.P_O, r.P_rej, units::to_ueV(r.Gamma_tot), units::to_ueV(r.gamma_tot),
                units::to_ueV(r.Gamma_cav), units::to_ueV(r.gamma_ph), units::to_ueV(r.gamma_ph_weak),
                r.cross_fraction, int(r.flags.strong_coupling), int(r.flags.adiabatic), int(r.flags.polaron_valid),
                int(r.flags.confluent));
    return out;
}

std::string cmd_sweep(const RunConfig& config, const std::vector<ArchType>& archs, unsigned threads) {
    validate(config);
    const auto env = make_environment(config);
    const auto kappas = sweep_grid(config.kappa_min_ueV, config.kappa_max_ueV, std::size_t(config.points), config.linear);
    std::string out = header("sweep", config);
    out += sweep_csv_header() + "\n";
    for (const auto type : archs) {
        const auto arch = architecture(config, type);
        try {
            qdsps::validate(arch);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        const auto rows = run_sweep(qd_parameters(config), arch, env, kappas, threads, merit_options(config));
        for (const auto& row : rows) out += sweep_csv_row(row, config.omega_c_meV) + "\n";
    }
    return out;
}

BenchmarkOutcome cmd_benchmark(const RunConfig& config, unsigned threads) {
    validate(config);
    if (config.arch != ArchType::cavity) throw ConfigError("benchmark needs arch.type=cavity");
    const auto env = make_environment(config);
    const auto kappas = sweep_grid(config.kappa_min_ueV, config.kappa_max_ueV, std::size_t(config.points), config.linear);
    const auto rows =
        run_sweep(qd_parameters(config), architecture(config), env, kappas, threads, merit_options(config));

    BenchmarkOutcome outcome;
    bool failed_point = false;
    std::string body = "kappa_ueV,I_full,I_adiabatic,rel_gap,valid,error\n";
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            failed_point = true;
            std::string err = row.error;
            for (auto& c : err)
                if (c == ',' || c == '\n') c = ';';
            body += line("%.8e,nan,nan,nan,0,%s\n", row.kappa_ueV, err.c_str());
            continue;
        }
        const auto& r = row.report;
        const bool valid = r.flags.adiabatic && !r.flags.strong_coupling;
        const double gap = std::abs(r.I - r.analytic_I) / r.I;
        if (valid) {
            outcome.max_gap = std::max(outcome.max_gap, gap);
            ++outcome.valid_points;
        }
        body += line("%.8e,%.8e,%.8e,%.3e,%d,\n", row.kappa_ueV, r.I, r.analytic_I, gap, int(valid));
    }
    outcome.passed = !failed_point && outcome.valid_points > 0 && outcome.max_gap < config.max_gap;
    outcome.csv = header("benchmark", config) +
                  line("# max_rel_gap_valid=%.3e over %zu points (limit %.3e): %s\n", outcome.max_gap,
                       outcome.valid_points, config.max_gap, outcome.passed ? "pass" : "FAIL") +
                  body;
    return outcome;
}

} // namespace qdsps::cli
