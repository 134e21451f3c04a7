// test_phonon_env.cpp

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdsps/errors.hpp"
#include "qdsps/phonon_env.hpp"
#include "qdsps/units.hpp"

using namespace qdsps;

namespace {

const PhononEnvironment& warm() {
    static const PhononEnvironment env({0.03, 1.45, 4.0});
    return env;
}
const PhononEnvironment& cold() {
    static const PhononEnvironment env({0.03, 1.45, 0.0});
    return env;
}

} // namespace

TEST(PhononEnvironment, SpectralDensityShape) {
    const auto& env = warm();
    const double xi = env.cutoff();
    EXPECT_DOUBLE_EQ(env.spectral_density(0.0), 0.0);
    EXPECT_NEAR(env.spectral_density(xi), 0.03 * xi * xi * xi * std::exp(-1.0), 1e-15);
    EXPECT_THROW(env.spectral_density(-1.0), std::domain_error);
}

TEST(PhononEnvironment, PhiMatchesBruteForceAtFivePicoseconds) {
    const auto& env = warm();
    const complex ref = oracle::phi_brute_force(0.03, env.cutoff(), env.beta(), 5.0, 20.0 * env.cutoff());
    const complex got = env.phi(5.0);
    EXPECT_NEAR(got.real(), ref.real(), 1e-10);
    EXPECT_NEAR(got.imag(), ref.imag(), 1e-10);
}

TEST(PhononEnvironment, CachedGridMatchesDirectEvaluation) {
    const auto& env = warm();
    for (double tau : {0.0, 0.37, 1.0, 2.5, 4.01}) {
        const complex direct = env.phi(tau);
        const complex cached = std::log(env.correlation(tau) / std::pow(env.franck_condon(), 2));
        EXPECT_NEAR(std::abs(cached - direct), 0.0, 1e-9) << "tau = " << tau;
    }
}

TEST(PhononEnvironment, ZeroTemperatureClosedForm) {
    const auto& env = cold();
    for (double tau : {0.0, 0.2, 1.0, 3.0, 8.0}) {
        const complex ref = oracle::phi_zero_temperature(0.03, env.cutoff(), tau);
        const complex got = env.phi(tau);
        EXPECT_NEAR(got.real(), ref.real(), 1e-11) << tau;
        EXPECT_NEAR(got.imag(), ref.imag(), 1e-11) << tau;
    }
    // phi(0) = alpha xi^2 / 2 when T = 0.
    EXPECT_NEAR(env.phi(0.0).real(), 0.5 * 0.03 * std::pow(env.cutoff(), 2), 1e-12);
}

TEST(PhononEnvironment, FranckCondonAgainstDirectQuadrature) {
    for (double T : {0.0, 4.0, 20.0}) {
        const PhononEnvironment env({0.03, 1.45, T});
        const double ref = oracle::franck_condon_direct(0.03, env.cutoff(), env.beta());
        EXPECT_NEAR(env.franck_condon(), ref, 1e-8) << "T = " << T;
    }
}

TEST(PhononEnvironment, SidebandWeightAtZeroTemperature) {
    // Frozen from the closed form: 1 - exp(-alpha xi^2 / 2).
    EXPECT_NEAR(1.0 - std::pow(cold().franck_condon(), 2), 0.07020768, 1e-7);
}

TEST(PhononEnvironment, CorrelationHermitianSymmetry) {
    const auto& env = warm();
    for (double tau : {0.1, 1.3, 6.0, 40.0}) {
        const complex a = env.correlation(tau);
        const complex b = env.correlation(-tau);
        EXPECT_NEAR(std::abs(b - std::conj(a)), 0.0, 1e-15);
    }
    EXPECT_NEAR(env.correlation(0.0).real(), 1.0, 1e-12);
    EXPECT_NEAR(env.correlation(0.0).imag(), 0.0, 1e-15);
}

TEST(PhononEnvironment, CorrelationSettlesToFranckCondonSquared) {
    const auto& env = warm();
    const double B2 = std::pow(env.franck_condon(), 2);
    EXPECT_LT(std::abs(env.correlation(env.tau_max()) - B2), 1e-8);
    EXPECT_FALSE(env.grid_capped());
}

TEST(PhononEnvironment, ZeroTemperatureTailIsAlgebraic) {
    const auto& env = cold();
    ASSERT_TRUE(env.grid_capped());
    // The T = 0 phi decays as -alpha / tau^2.
    EXPECT_NEAR(env.tail_coefficient().real(), -0.03, 1e-4);
    const double tau = 200.0;
    const complex ref = oracle::phi_zero_temperature(0.03, env.cutoff(), tau);
    EXPECT_NEAR(std::abs(env.phi_beyond_grid(tau) - ref), 0.0, 1e-9);
}

TEST(PhononEnvironment, AlphaZeroIsTrivial) {
    const PhononEnvironment env({0.0, 1.45, 4.0});
    EXPECT_DOUBLE_EQ(env.franck_condon(), 1.0);
    EXPECT_EQ(env.correlation(3.0), complex(1.0, 0.0));
}

TEST(PhononEnvironment, RejectsBadParameters) {
    EXPECT_THROW(PhononEnvironment({-0.1, 1.45, 4.0}), std::domain_error);
    EXPECT_THROW(PhononEnvironment({0.03, 0.0, 4.0}), std::domain_error);
    EXPECT_THROW(PhononEnvironment({0.03, 1.45, -1.0}), std::domain_error);
}

TEST(PolaronRates, WeakCouplingFormAtFourKelvin) {
    const auto& env = warm();
    const auto r = polaron_rates(units::from_ueV(30), units::from_ueV(120), env);
    // gamma_ph and the closed form 2 pi (g_r/kappa)^2 J(2 g_r) coth(beta g_r)
    // agree to leading order in g / (k_B T).
    EXPECT_NEAR(r.gamma_ph / r.gamma_ph_weak, 1.0, 0.02);
    EXPECT_GT(r.gamma_ph, 0.0);
    EXPECT_TRUE(r.polaron_valid);
}

TEST(PolaronRates, DephasingVanishesWithoutPhonons) {
    const PhononEnvironment env({0.0, 1.45, 4.0});
    const auto r = polaron_rates(units::from_ueV(30), units::from_ueV(120), env);
    EXPECT_EQ(r.gamma_ph, 0.0);
    EXPECT_EQ(r.chi_X, complex{});
}

TEST(PolaronRates, ValidityFlagTracksCutoffRatio) {
    const auto& env = warm();
    EXPECT_FALSE(polaron_rates(units::from_meV(0.5), units::from_ueV(120), env).polaron_valid);
    EXPECT_THROW(polaron_rates(0.0, 1.0, env), std::domain_error);
}
