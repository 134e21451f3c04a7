// phonon_env.hpp — Acoustic-phonon environment of a quantum dot.
//
// Superohmic spectral density J(nu) = alpha nu^3 exp(-nu^2 / xi^2), the
// polaron displacement correlation phi(tau), the Franck–Condon factor B and
// the phonon correlation function G(tau) = B^2 exp(phi(tau)).
//
// All frequencies are angular frequencies in ps^-1 and times are in ps; the
// constructor takes the conventional meV / K inputs.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qdsps {

using complex = std::complex<double>;

struct PhononParameters {
    double alpha_ps2 = 0.03;     // exciton–phonon coupling strength (ps^2)
    double xi_meV = 1.45;        // cut-off frequency (meV)
    double temperature_K = 4.0;  // lattice temperature (K)
};

struct PhononGridOptions {
    double tau_step_ps = 0.01;
    // The cached grid ends once |phi| stays below this value.
    double decay_threshold = 1e-10;
    // Hard limit on the grid. Beyond it phi is continued with an algebraic
    // c / tau^2 tail (the T = 0 asymptote).
    double tau_cap_ps = 80.0;
    double phi_abs_tol = 1e-12;
    // Largest allowed mismatch between phi and the tail model near the cap.
    double tail_tolerance = 1e-8;
};

class PhononEnvironment {
public:
    explicit PhononEnvironment(const PhononParameters& params, const PhononGridOptions& options = {});

    const PhononParameters& parameters() const { return params_; }
    const PhononGridOptions& grid_options() const { return options_; }

    double alpha() const { return params_.alpha_ps2; }
    double cutoff() const { return xi_; }          // ps^-1
    double beta() const { return beta_; }          // ps, +inf at T = 0
    bool zero_temperature() const { return !(params_.temperature_K > 0.0); }

    // J(nu) in ps^-1. Throws std::domain_error for nu < 0.
    double spectral_density(double nu) const;

    // J(nu) / nu^2 * coth(beta nu / 2) with the nu -> 0 limit taken analytically.
    double thermal_weight(double nu) const;

    // phi(tau) by adaptive Gauss–Kronrod quadrature on [0, 10 xi].
    // Throws NumericalToleranceError when the tolerance is not met.
    complex phi(double tau) const;

    double franck_condon() const { return franck_condon_; }

    // G(tau) = B^2 exp(phi(tau)); G(-tau) = conj(G(tau)). Beyond the cached grid
    // the tail model is used (exactly B^2 when the grid reached the threshold).
    complex correlation(double tau) const;

    // Cached uniform samples phi(k * step), k = 0 .. n-1.
    double tau_step() const { return options_.tau_step_ps; }
    double tau_max() const { return tau_step() * double(phi_grid_.size() - 1); }
    std::span<const complex> phi_samples() const { return phi_grid_; }

    // phi(tau) ~ tail_coefficient / tau^2 for tau > tau_max (zero unless capped).
    complex tail_coefficient() const { return tail_coefficient_; }
    bool grid_capped() const { return capped_; }
    complex phi_beyond_grid(double tau) const;

private:
    std::vector<complex> batch_phi(double step, std::size_t count) const;

    PhononParameters params_;
    PhononGridOptions options_;
    double xi_ = 0.0;
    double beta_ = 0.0;
    double franck_condon_ = 1.0;
    std::vector<complex> phi_grid_;
    complex tail_coefficient_{};
    bool capped_ = false;
};

// Polaron-frame phonon rates of the cavity master equation.
struct PolaronRates {
    complex chi_X{};   // ps
    complex chi_Y{};   // ps
    complex chi_Z{};   // ps
    double gamma_ph = 0.0;        // adiabatic pure-dephasing rate (ps^-1)
    double gamma_ph_weak = 0.0;   // weak phonon-coupling closed form (ps^-1)
    double g_over_xi = 0.0;
    bool polaron_valid = true;    // g well below the phonon cut-off
};

struct PolaronRateOptions {
    bool include_chi_z = true;    // keep the gamma_Z term of the adiabatic rate
    double validity_ratio = 0.2;  // flag once g / xi exceeds this
};

// g and kappa_c in ps^-1. Throws std::domain_error for non-positive inputs.
PolaronRates polaron_rates(double g, double kappa_c, const PhononEnvironment& env,
                           const PolaronRateOptions& options = {});

} // namespace qdsps
