// test_emitter_dynamics.cpp

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qdsps/emitter_dynamics.hpp"
#include "qdsps/errors.hpp"
#include "qdsps/units.hpp"

using namespace qdsps;
using units::from_ueV;

namespace {

struct CavityCase {
    PhononEnvironment env;
    ResonantCavity cavity;
    QDParams qd;
    PolaronRates rates;
    LiouvillianDecomposition decomp;
};

CavityCase make_cavity(double alpha, double T, ResonantCavity cav, QDParams qd = {}) {
    PhononEnvironment env({alpha, 1.45, T});
    const auto rates = polaron_rates(from_ueV(cav.g_ueV), from_ueV(cav.kappa_c_ueV), env);
    auto d = build_cavity_generator(qd, cav, env, rates);
    return {std::move(env), cav, qd, rates, std::move(d)};
}

double trace_drift(const Eigen::MatrixXcd& L, int dim) {
    // Row vector vec(I)^T L must vanish for a trace-preserving generator.
    const Eigen::VectorXcd id = oracle::vec(Eigen::MatrixXcd::Identity(dim, dim));
    return (id.transpose() * L).cwiseAbs().maxCoeff();
}

} // namespace

TEST(Waveguide, CorrelationClosedForm) {
    const QDParams qd{0.0, 1.0, 0.3};
    const BareWaveguide wg{10.0, 0.5};
    const auto corr = dipole_correlation(build_waveguide_generator(qd, wg));
    const double Gamma = from_ueV(10.5);
    const double gamma = from_ueV(0.3);
    for (double t : {0.0, 10.0, 123.0})
        for (double tau : {0.0, 5.0, 77.7}) {
            const complex ref = std::exp(-Gamma * t) * std::exp(-(0.5 * Gamma + gamma) * tau);
            EXPECT_NEAR(std::abs(corr.value(t, tau) - ref), 0.0, 1e-12);
        }
}

TEST(Waveguide, PopulationTransformClosedForm) {
    const auto corr = dipole_correlation(build_waveguide_generator(QDParams{}, BareWaveguide{10.0, 0.0}));
    const double Gamma = from_ueV(10.0);
    for (double d : {0.0, 0.01, -0.2}) {
        const complex ref = 1.0 / (Gamma - complex(0.0, d));
        EXPECT_NEAR(std::abs(corr.population_transform(d) - ref), 0.0, 1e-9 * std::abs(ref));
    }
}

TEST(Generators, TracePreserving) {
    EXPECT_LT(trace_drift(waveguide_generator(0.1, 0.02), 2), 1e-15);
    const auto c = make_cavity(0.03, 4.0, {30.0, 120.0, 1.0}, {0.0, 1.0, 0.2});
    EXPECT_LT(trace_drift(c.decomp.generator, 4), 1e-14);
}

TEST(Generators, PropagationStaysPhysical) {
    const auto c = make_cavity(0.03, 4.0, {30.0, 60.0, 1.0});
    Eigen::VectorXcd rho = oracle::vec(c.decomp.rho0);
    for (int block = 0; block < 40; ++block) {
        rho = oracle::rk4(c.decomp.generator, rho, 0.05, 100);
        const Eigen::MatrixXcd m = oracle::unvec(rho, 4);
        EXPECT_NEAR(std::abs(m.trace() - 1.0), 0.0, 1e-10);
        EXPECT_LT((m - m.adjoint()).norm(), 1e-12);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    }
}

TEST(Generators, JaynesCummingsCoherenceEigenvalues) {
    // Without phonons the one-excitation coherences obey
    // d/dt (<sigma>, <a>) = [[-Gamma_O/2 - gamma, -i g], [-i g, -kappa/2]].
    const ResonantCavity cav{30.0, 100.0, 1.0};
    const QDParams qd{0.0, 1.0, 0.5};
    const auto c = make_cavity(0.0, 4.0, cav, qd);
    const double g = from_ueV(30.0), k = from_ueV(100.0), G = from_ueV(1.0), gam = from_ueV(0.5);
    const complex mean = -0.25 * (k + G + 2.0 * gam);
    const complex root = std::sqrt(complex(std::pow(0.25 * (k - G - 2.0 * gam), 2) - g * g, 0.0));
    const auto& ev = c.decomp.eigenvalues();
    for (const complex expected : {mean + root, mean - root}) {
        double best = 1e9;
        for (int i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev[i] - expected));
        EXPECT_LT(best, 1e-12) << expected;
    }
}

TEST(Regression, MatchesTwoStagePropagation) {
    const auto c = make_cavity(0.03, 4.0, {30.0, 100.0, 1.0}, {0.0, 1.0, 0.1});
    const auto corr = dipole_correlation(c.decomp);
    for (double t : {0.0, 7.5, 40.0})
        for (double tau : {0.0, 3.0, 25.0, 90.0}) {
            const complex ref = oracle::two_stage_correlation(c.decomp.generator, c.decomp.sigma, c.decomp.rho0, t,
                                                              tau, 0.01);
            EXPECT_NEAR(std::abs(corr.value(t, tau) - ref), 0.0, 1e-8) << t << " " << tau;
        }
}

TEST(Regression, StrongCouplingOscillates) {
    const auto c = make_cavity(0.03, 4.0, {50.0, 40.0, 1.0});
    const auto corr = dipole_correlation(c.decomp);
    bool oscillating = false;
    for (const auto& term : corr.terms()) oscillating |= std::abs(term.lambda.imag()) > 1e-3;
    EXPECT_TRUE(oscillating);
    const complex ref =
        oracle::two_stage_correlation(c.decomp.generator, c.decomp.sigma, c.decomp.rho0, 12.0, 20.0, 0.01);
    EXPECT_NEAR(std::abs(corr.value(12.0, 20.0) - ref), 0.0, 1e-8);
}

TEST(Regression, ExceptionalPointIsSplit) {
    // 4 g = kappa - Gamma_O with no phonons puts the coherence block at an
    // exceptional point.
    const auto c = make_cavity(0.0, 4.0, {30.0, 121.0, 1.0});
    EXPECT_TRUE(c.decomp.confluent);
    EXPECT_EQ(c.decomp.branches.size(), 2u);
    const auto corr = dipole_correlation(c.decomp);
    EXPECT_TRUE(corr.confluent());
    for (double tau : {0.0, 10.0, 60.0}) {
        const complex ref =
            oracle::two_stage_correlation(c.decomp.generator, c.decomp.sigma, c.decomp.rho0, 5.0, tau, 0.01);
        EXPECT_NEAR(std::abs(corr.value(5.0, tau) - ref), 0.0, 1e-6) << tau;
    }
}

TEST(Regression, AllTermsDecay) {
    const auto c = make_cavity(0.03, 4.0, {30.0, 120.0, 1.0});
    const auto corr = dipole_correlation(c.decomp);
    for (const auto& term : corr.terms()) {
        EXPECT_LT(term.mu.real(), 0.0);
        EXPECT_LT(term.lambda.real(), 0.0);
    }
    EXPECT_NEAR(corr.population(0.0), 1.0, 1e-12);
    EXPECT_GT(corr.slowest_rate(), 0.0);
}

TEST(AdiabaticRates, ConventionsDifferByFranckCondonSquared) {
    const PhononEnvironment env({0.03, 1.45, 4.0});
    const ResonantCavity cav{30.0, 120.0, 1.0};
    const auto rates = polaron_rates(from_ueV(30.0), from_ueV(120.0), env);
    const double B = env.franck_condon();
    const auto ren = adiabatic_rates(QDParams{}, cav, &rates, B, CavityRateConvention::renormalised);
    const auto bare = adiabatic_rates(QDParams{}, cav, &rates, B, CavityRateConvention::bare);
    EXPECT_NEAR(bare.Gamma_cav, 4.0 * std::pow(from_ueV(30.0), 2) / from_ueV(120.0), 1e-15);
    EXPECT_NEAR(ren.Gamma_cav / bare.Gamma_cav, B * B, 1e-12);
    EXPECT_NEAR(ren.Gamma_tot, ren.Gamma_cav + from_ueV(1.0), 1e-15);
    EXPECT_NEAR(ren.gamma_tot, rates.gamma_ph, 1e-15);
}

TEST(Validation, RejectsNegativeRates) {
    EXPECT_THROW(validate(QDParams{0.0, -1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(validate(SourceArchitecture{FilteredWaveguide{10.0, 0.0, -5.0, 0.0}}), std::invalid_argument);
    EXPECT_THROW(validate(SourceArchitecture{ResonantCavity{0.0, 120.0, 1.0}}), std::invalid_argument);
    EXPECT_EQ(architecture_name(ResonantCavity{}), "cavity");
}
