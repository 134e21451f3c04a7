// main.cpp — qdsps command-line driver.
//
// Layering: preset, then --config file, then --set overrides, then the
// dedicated flags. Exit codes: 0 ok, 1 benchmark assertion failed, 2 bad
// configuration, 3 numerical tolerance not met.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qdsps/errors.hpp"
#include "qdsps/sweep.hpp"

namespace {

using namespace qdsps;
using namespace qdsps::cli;

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-dot single-photon source figures of merit"};
    app.require_subcommand(1);

    std::string preset_name;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string arch_flag;
    std::string out_flag;
    unsigned threads = default_thread_count();
    std::optional<double> kappa_min, kappa_max;
    std::optional<int> points;
    bool linear = false;

    app.add_option("--preset", preset_name, "Named parameter set")->check(CLI::IsMember({"fig3", "figS1"}));
    app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "Override one key, e.g. --set phonon.T_K=0");
    app.add_option("--arch", arch_flag, "waveguide, filtered or cavity (sweep also accepts all)");
    app.add_option("--out", out_flag, "Output path, - for stdout");
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    auto* spectrum = app.add_subcommand("spectrum", "Diagonal emission spectrum with ZPL/sideband split");
    auto* merit = app.add_subcommand("merit", "Indistinguishability and efficiency at one point");
    auto* sweep = app.add_subcommand("sweep", "Figures of merit against filter or cavity width");
    auto* bench = app.add_subcommand("benchmark", "Full theory against the adiabatic formula (figS1 by default)");
    for (auto* sub : {spectrum, merit, sweep, bench}) sub->fallthrough();
    for (auto* sub : {sweep, bench}) {
        sub->add_option("--kappa-min", kappa_min, "Smallest width (ueV)");
        sub->add_option("--kappa-max", kappa_max, "Largest width (ueV)");
        sub->add_option("--points", points, "Number of widths");
        sub->add_flag("--linear", linear, "Linear instead of geometric spacing");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (preset_name.empty() && bench->parsed()) preset_name = "figS1";
        RunConfig config = preset(preset_name.empty() ? "fig3" : preset_name);
        if (!config_path.empty()) config = load_config(config_path, config);
        for (const auto& s : overrides) apply_assignment(config, s);

        std::vector<ArchType> archs;
        if (arch_flag == "all") {
            if (!sweep->parsed()) throw ConfigError("--arch all is only valid for sweep");
            archs = {ArchType::waveguide, ArchType::filtered, ArchType::cavity};
        } else if (!arch_flag.empty()) {
            config.arch = parse_arch(arch_flag);
        }
        if (archs.empty()) archs = {config.arch};
        if (!out_flag.empty()) config.out = out_flag;
        if (kappa_min) config.kappa_min_ueV = *kappa_min;
        if (kappa_max) config.kappa_max_ueV = *kappa_max;
        if (points) config.points = *points;
        if (linear) config.linear = true;

        if (spectrum->parsed()) {
            write_output(config.out, cmd_spectrum(config));
        } else if (merit->parsed()) {
            write_output(config.out, cmd_merit(config));
        } else if (sweep->parsed()) {
            write_output(config.out, cmd_sweep(config, archs, threads));
        } else {
            const auto outcome = cmd_benchmark(config, threads);
            write_output(config.out, outcome.csv);
            std::fprintf(stderr, "benchmark: max relative gap %.3e over %zu valid points (limit %.3e): %s\n",
                         outcome.max_gap, outcome.valid_points, config.max_gap, outcome.passed ? "pass" : "FAIL");
            if (!outcome.passed) return 1;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ConfigurationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericalToleranceError& e) {
        std::fprintf(stderr, "numerical tolerance not met: %s (residual %.3e)\n", e.what(), e.residual());
        return 3;
    } catch (const ConstructionError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
