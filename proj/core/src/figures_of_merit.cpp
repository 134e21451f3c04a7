// figures_of_merit.cpp

#include "qdsps/figures_of_merit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdsps/errors.hpp"
#include "qdsps/units.hpp"

namespace qdsps {

EfficiencyResult efficiency(const DetectedSpectrum& detected, const DetectedSpectrum& lost,
                            const SourceArchitecture& arch, int order) {
    const auto& bare = detected.bare();
    const DetectedSpectrum flat(std::shared_ptr<const TwoColourSpectrum>(&bare, [](const TwoColourSpectrum*) {}),
                                GreensFunction{});

    auto evaluate = [&](int n) {
        EfficiencyResult r;
        const double bare_total = integrate_diagonal(flat, n).total();
        r.P_D = integrate_diagonal(detected, n).total();
        r.P_O = lost.greens().prefactor * bare_total;
        if (std::holds_alternative<FilteredWaveguide>(arch))
            r.P_rej = std::max(0.0, detected.greens().prefactor * bare_total - r.P_D);
        const double all = r.P_D + r.P_O + r.P_rej;
        if (!(all > 0.0)) throw std::domain_error("efficiency: no emitted power");
        r.eta = r.P_D / all;
        return r;
    };

    auto hi = evaluate(order);
    const auto lo = evaluate(order == 15 ? 10 : 15);
    hi.error = std::abs(hi.eta - lo.eta);
    return hi;
}

IndistinguishabilityResult indistinguishability(const DetectedSpectrum& detected, const MeritOptions& options) {
    IndistinguishabilityResult out;
    out.detected_power = integrate_diagonal(detected, options.diagonal_order).total();
    if (!(out.detected_power > 0.0)) throw std::domain_error("indistinguishability: no detected power");
    const double norm = 1.0 / (out.detected_power * out.detected_power);

    const auto coarse = two_colour_blocks(detected, options.coarse);
    const auto fine = two_colour_blocks(detected, options.fine);
    out.blocks = fine;
    out.blocks.zz *= norm;
    out.blocks.ss *= norm;
    out.blocks.cross *= norm;
    out.value = fine.total() * norm;
    out.error = std::abs(fine.total() - coarse.total()) * norm;
    if (out.error > options.relative_tolerance * out.value) {
        throw NumericalToleranceError("indistinguishability: refinement levels differ by "
                                          + std::to_string(out.error) + " (I = " + std::to_string(out.value) + ")",
                                      out.error);
    }
    return out;
}

double analytic_indistinguishability(double Gamma_tot, double gamma_tot, double B, double F) {
    const double b2 = B * B;
    const double zpl_share = b2 / (b2 + F * (1.0 - b2));
    return Gamma_tot / (Gamma_tot + 2.0 * gamma_tot) * zpl_share * zpl_share;
}

double analytic_efficiency(const SourceArchitecture& arch, double B, double F) {
    const double b2 = B * B;
    const double kept = b2 + F * (1.0 - b2);
    if (const auto* c = std::get_if<ResonantCavity>(&arch)) {
        const double g = units::from_ueV(c->g_ueV);
        const double cav = 4.0 * g * g / units::from_ueV(c->kappa_c_ueV) * kept;
        return cav / (cav + units::from_ueV(c->Gamma_O_ueV));
    }
    double gd = 0.0;
    double go = 0.0;
    std::visit([&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (!std::is_same_v<T, ResonantCavity>) {
            gd = a.Gamma_D_ueV;
            go = a.Gamma_O_ueV;
        }
    }, arch);
    return kept * gd / (gd + go);
}

MeritFlags validity_flags(const SourceArchitecture& arch, const PhononEnvironment& env,
                          const PolaronRateOptions& polaron) {
    MeritFlags f;
    if (const auto* c = std::get_if<ResonantCavity>(&arch)) {
        f.strong_coupling = 4.0 * c->g_ueV > c->kappa_c_ueV;
        f.adiabatic = 4.0 * c->g_ueV * c->g_ueV / c->kappa_c_ueV < c->kappa_c_ueV;
        f.polaron_valid = units::from_ueV(c->g_ueV) / env.cutoff() < polaron.validity_ratio;
    } else if (const auto* w = std::get_if<FilteredWaveguide>(&arch)) {
        f.adiabatic = w->Gamma_D_ueV < w->kappa_f_ueV;
    }
    return f;
}

SourceModel build_source(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                         const MeritOptions& options) {
    validate(qd);
    validate(arch);
    PolaronRates rates;
    LiouvillianDecomposition decomp;
    if (const auto* c = std::get_if<ResonantCavity>(&arch)) {
        rates = polaron_rates(units::from_ueV(c->g_ueV), units::from_ueV(c->kappa_c_ueV), env, options.polaron);
        decomp = build_cavity_generator(qd, *c, env, rates, options.decomposition);
    } else {
        decomp = build_waveguide_generator(qd, arch, options.decomposition);
    }
    const double r = emission_norm(arch);
    auto bare = std::make_shared<const TwoColourSpectrum>(dipole_correlation(decomp), env, r, options.spectrum);
    SourceModel m{bare, DetectedSpectrum(bare, detected_greens(arch, r)), DetectedSpectrum(bare, lost_greens(arch, r)),
                  rates, adiabatic_rates(qd, arch, &rates, env.franck_condon(), options.convention),
                  decomp.confluent};
    return m;
}

MeritReport compute_merit(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                          const MeritOptions& options) {
    const auto model = build_source(qd, arch, env, options);
    const auto& bare = *model.bare;

    MeritReport rep;
    rep.architecture = std::string(architecture_name(arch));
    rep.B = env.franck_condon();
    rep.flags = validity_flags(arch, env, options.polaron);
    rep.flags.confluent = model.confluent;
    rep.gamma_ph = model.rates.gamma_ph;
    rep.gamma_ph_weak = model.rates.gamma_ph_weak;
    rep.Gamma_tot = model.adiabatic.Gamma_tot;
    rep.gamma_tot = model.adiabatic.gamma_tot;
    rep.Gamma_cav = model.adiabatic.Gamma_cav;

    const DetectedSpectrum flat(model.bare, GreensFunction{});
    const auto powers = integrate_diagonal(flat, options.diagonal_order);
    rep.P_ZPL = powers.zpl;
    rep.P_SB = powers.sideband;

    const auto eff = efficiency(model.detected, model.lost, arch, options.diagonal_order);
    rep.eta = eff.eta;
    rep.eta_error = eff.error;
    rep.P_D = eff.P_D;
    rep.P_O = eff.P_O;
    rep.P_rej = eff.P_rej;

    const auto ind = indistinguishability(model.detected, options);
    rep.I = ind.value;
    rep.I_error = ind.error;
    rep.blocks = ind.blocks;
    rep.cross_fraction = rep.I > 0.0 ? std::abs(ind.blocks.cross) / rep.I : 0.0;

    rep.F = sideband_fraction(bare, model.detected.greens().filter, options.diagonal_order);
    rep.analytic_I = analytic_indistinguishability(rep.Gamma_tot, rep.gamma_tot, rep.B, rep.F);
    rep.analytic_eta = analytic_efficiency(arch, rep.B, rep.F);
    rep.factorisation_ratio = (rep.Gamma_tot + 2.0 * rep.gamma_tot) / env.cutoff();
    return rep;
}

} // namespace qdsps
