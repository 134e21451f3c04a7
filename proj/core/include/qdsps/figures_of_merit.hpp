// figures_of_merit.hpp — Efficiency and indistinguishability of a source.

#pragma once

#include <memory>
#include <string>

#include "qdsps/emitter_dynamics.hpp"
#include "qdsps/phonon_env.hpp"
#include "qdsps/spectra.hpp"
#include "qdsps/two_colour_integrals.hpp"

namespace qdsps {

struct MeritOptions {
    SpectrumOptions spectrum;
    PolaronRateOptions polaron;
    DecompositionOptions decomposition;
    CavityRateConvention convention = CavityRateConvention::renormalised;
    // Two refinement levels for the double integral; their difference is the
    // reported error estimate.
    TwoColourRuleOptions coarse{10, 10};
    TwoColourRuleOptions fine{15, 15};
    double relative_tolerance = 1e-4;
    int diagonal_order = 20;
};

struct MeritFlags {
    bool strong_coupling = false;  // cavity with 4 g > kappa_c
    bool adiabatic = true;         // Gamma_cav < kappa_c or Gamma_D < kappa_f
    bool polaron_valid = true;     // g / xi below the validity ratio
    bool confluent = false;        // exceptional point split was needed
};

struct MeritReport {
    std::string architecture;
    double I = 0.0;
    double I_error = 0.0;
    double eta = 0.0;
    double eta_error = 0.0;
    double analytic_I = 0.0;
    double analytic_eta = 0.0;
    double B = 1.0;
    double F = 1.0;
    double P_ZPL = 0.0;   // bare powers, numerical
    double P_SB = 0.0;
    double P_D = 0.0;     // detected, out-of-plane and filter-rejected powers
    double P_O = 0.0;
    double P_rej = 0.0;
    double Gamma_tot = 0.0;  // ps^-1, adiabatic
    double gamma_tot = 0.0;
    double Gamma_cav = 0.0;
    double gamma_ph = 0.0;
    double gamma_ph_weak = 0.0;
    BlockIntegrals blocks;   // normalised by P_D^2
    // |cross block| / I: weight of the ZPL-sideband interference neglected by
    // the analytic route.
    double cross_fraction = 0.0;
    // (Gamma_tot + 2 gamma_tot) / xi: small when the ZPL is slow on the phonon
    // memory time.
    double factorisation_ratio = 0.0;
    MeritFlags flags;
};

// eta = P_D / (P_D + P_O + P_rej) from the detected and out-of-plane spectra.
// P_rej, the power thrown away by the filter, is nonzero only for the filtered
// waveguide. Throws std::domain_error when no power is emitted.
struct EfficiencyResult {
    double eta = 0.0;
    double error = 0.0;
    double P_D = 0.0;
    double P_O = 0.0;
    double P_rej = 0.0;
};
EfficiencyResult efficiency(const DetectedSpectrum& detected, const DetectedSpectrum& lost,
                            const SourceArchitecture& arch, int order = 20);

struct IndistinguishabilityResult {
    double value = 0.0;
    double error = 0.0;
    double detected_power = 0.0;
    BlockIntegrals blocks;  // normalised
};
// Throws NumericalToleranceError when the two refinement levels differ by more
// than relative_tolerance * I.
IndistinguishabilityResult indistinguishability(const DetectedSpectrum& detected, const MeritOptions& options = {});

// I = Gamma_tot / (Gamma_tot + 2 gamma_tot) * (B^2 / (B^2 + F (1 - B^2)))^2.
double analytic_indistinguishability(double Gamma_tot, double gamma_tot, double B, double F);

// Cavity: Gamma_cav (B^2 + F(1-B^2)) / (Gamma_cav (B^2 + F(1-B^2)) + Gamma_O) with
// Gamma_cav = 4 g^2 / kappa_c; waveguides: (B^2 + F(1-B^2)) Gamma_D / (Gamma_D + Gamma_O).
double analytic_efficiency(const SourceArchitecture& arch, double B, double F);

MeritFlags validity_flags(const SourceArchitecture& arch, const PhononEnvironment& env,
                          const PolaronRateOptions& polaron = {});

MeritReport compute_merit(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                          const MeritOptions& options = {});

// Everything needed to evaluate one source, exposed for spectrum export.
struct SourceModel {
    std::shared_ptr<const TwoColourSpectrum> bare;
    DetectedSpectrum detected;
    DetectedSpectrum lost;
    PolaronRates rates;
    AdiabaticRates adiabatic;
    bool confluent = false;
};
SourceModel build_source(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                         const MeritOptions& options = {});

} // namespace qdsps
