// test_cli.cpp — Configuration parsing and command output.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "commands.hpp"
#include "qdsps/units.hpp"
#include "run_config.hpp"

using namespace qdsps;
using namespace qdsps::cli;

namespace {

struct Columns {
    std::vector<double> omega, total, zpl, sb;
};

Columns read_spectrum(const std::string& csv) {
    Columns c;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        double v[4];
        std::istringstream row(line);
        char comma;
        row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3];
        c.omega.push_back(v[0]);
        c.total.push_back(v[1]);
        c.zpl.push_back(v[2]);
        c.sb.push_back(v[3]);
    }
    return c;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

} // namespace

TEST(RunConfig, DefaultsAreTheFig3Set) {
    const RunConfig c;
    EXPECT_EQ(c, preset("fig3"));
    EXPECT_DOUBLE_EQ(c.alpha_ps2, 0.03);
    EXPECT_DOUBLE_EQ(c.xi_meV, 1.45);
    EXPECT_DOUBLE_EQ(c.T_K, 4.0);
    EXPECT_DOUBLE_EQ(c.Gamma_ueV, 1.0);
    EXPECT_DOUBLE_EQ(c.F_wg, 10.0);
    const auto arch = architecture(c, ArchType::cavity);
    EXPECT_DOUBLE_EQ(std::get<ResonantCavity>(arch).Gamma_O_ueV, 1.0);
    EXPECT_DOUBLE_EQ(std::get<FilteredWaveguide>(architecture(c)).Gamma_O_ueV, 0.0);
}

TEST(RunConfig, FigS1Preset) {
    const auto c = preset("figS1");
    EXPECT_EQ(c.arch, ArchType::cavity);
    EXPECT_DOUBLE_EQ(c.alpha_ps2, 0.032);
    EXPECT_DOUBLE_EQ(c.xi_meV, 0.95);
    EXPECT_DOUBLE_EQ(c.T_K, 0.0);
    EXPECT_DOUBLE_EQ(c.g_ueV, 50.0);
    EXPECT_DOUBLE_EQ(*c.Gamma_O_ueV, 1.0);
    EXPECT_THROW(preset("fig9"), ConfigError);
}

TEST(RunConfig, ParsesCommentsAndWhitespace) {
    const auto c = parse_config("# a comment\n\nphonon.T_K = 10   # trailing\n  arch.type=cavity\nqd.gamma_ueV=0.25\n");
    EXPECT_DOUBLE_EQ(c.T_K, 10.0);
    EXPECT_EQ(c.arch, ArchType::cavity);
    EXPECT_DOUBLE_EQ(c.gamma_ueV, 0.25);
}

TEST(RunConfig, RejectsUnknownKeysWithLineNumber) {
    try {
        parse_config("phonon.T_K=4\n\nphonon.temperature=4\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_config("phonon.T_K=warm\n"), ConfigError);
    EXPECT_THROW(parse_config("phonon.T_K\n"), ConfigError);
    EXPECT_THROW(parse_config("arch.type=ring\n"), ConfigError);
    EXPECT_THROW(parse_config("sweep.points=2.5\n"), ConfigError);
}

TEST(RunConfig, ValidationRejectsUnphysicalValues) {
    RunConfig c;
    c.xi_meV = -1.0;
    EXPECT_THROW(validate(c), ConfigError);
    c = RunConfig{};
    c.kappa_min_ueV = 0.5;
    EXPECT_THROW(validate(c), ConfigError);
    c = RunConfig{};
    c.kappa_max_ueV = 2e4;
    EXPECT_THROW(validate(c), ConfigError);
    c = RunConfig{};
    c.points = 1;
    EXPECT_THROW(validate(c), ConfigError);
    EXPECT_NO_THROW(validate(RunConfig{}));
}

TEST(RunConfig, EchoRoundTrips) {
    RunConfig c = preset("figS1");
    apply_assignment(c, "qd.gamma_ueV=0.123456789012345");
    apply_assignment(c, "numerics.sideband_model=factorised");
    apply_assignment(c, "numerics.cavity_rates=bare");
    apply_assignment(c, "sweep.linear=true");
    apply_assignment(c, "output.path=/tmp/x.csv");
    const std::string text = header("merit", c) + "arch,I_full\n";
    EXPECT_EQ(parse_echo(text), c);
    RunConfig d;
    EXPECT_EQ(parse_echo(header("spectrum", d)), d);
}

TEST(Commands, SpectrumIsDeterministicAndRoundTrips) {
    RunConfig c;
    c.arch = ArchType::cavity;
    const std::string a = cmd_spectrum(c);
    EXPECT_EQ(a, cmd_spectrum(c));
    EXPECT_EQ(parse_echo(a), c);
}

TEST(Commands, SweepIsIndependentOfThreadCount) {
    RunConfig c;
    c.arch = ArchType::cavity;
    c.points = 3;
    c.kappa_min_ueV = 100.0;
    c.kappa_max_ueV = 1000.0;
    const std::string a = cmd_sweep(c, {ArchType::cavity}, 1);
    EXPECT_EQ(a, cmd_sweep(c, {ArchType::cavity}, 3));
    EXPECT_EQ(parse_echo(a), c);
    std::istringstream in(a);
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++rows;
    EXPECT_EQ(rows, 4);  // header + 3
}

TEST(Commands, FilteredSpectrumSidebandIntegral) {
    RunConfig c;  // filtered waveguide, kappa_f = 100 ueV
    const auto cols = read_spectrum(cmd_spectrum(c));
    const PhononEnvironment env(phonon_parameters(c));
    const auto r = compute_merit(qd_parameters(c), architecture(c), env);
    const double Gamma_D = units::from_ueV(10.0);
    EXPECT_NEAR(trapezoid(cols.omega, cols.sb) / (Gamma_D * r.F * r.P_SB), 1.0, 2e-3);
}

TEST(Commands, BareWaveguideSidebandShare) {
    RunConfig c;
    c.arch = ArchType::waveguide;
    const auto cols = read_spectrum(cmd_spectrum(c));
    const double B = PhononEnvironment(phonon_parameters(c)).franck_condon();
    EXPECT_NEAR(trapezoid(cols.omega, cols.sb) / trapezoid(cols.omega, cols.total), 1.0 - B * B, 2e-3);
}

TEST(Commands, NoPhononSpectrumHasZeroSideband) {
    RunConfig c;
    c.alpha_ps2 = 0.0;
    const auto cols = read_spectrum(cmd_spectrum(c));
    ASSERT_FALSE(cols.sb.empty());
    for (double v : cols.sb) EXPECT_EQ(v, 0.0);
}

TEST(Commands, BenchmarkWithoutPhononsMatchesExactly) {
    RunConfig c = preset("figS1");
    c.alpha_ps2 = 0.0;
    c.points = 4;
    c.kappa_min_ueV = 300.0;
    c.kappa_max_ueV = 3000.0;
    const auto out = cmd_benchmark(c, 2);
    EXPECT_TRUE(out.passed);
    EXPECT_EQ(out.valid_points, 4u);
    // Without phonons gamma_tot = 0, so both columns sit at 1.
    EXPECT_LT(out.max_gap, 1e-6);
    c.arch = ArchType::filtered;
    EXPECT_THROW(cmd_benchmark(c, 1), ConfigError);
}
