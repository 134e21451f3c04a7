// phonon_env.cpp

#include "qdsps/phonon_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdsps/errors.hpp"
#include "qdsps/quadrature.hpp"
#include "qdsps/special_functions.hpp"
#include "qdsps/units.hpp"

namespace qdsps {

namespace {

constexpr double kCutoffMultiple = 10.0;  // phonon integrals run over [0, 10 xi]
constexpr double kProbeStep = 0.1;        // ps

// nu / tanh(beta nu / 2), finite as nu -> 0.
double nu_coth(double nu, double beta) {
    if (!std::isfinite(beta)) return nu;
    const double x = 0.5 * beta * nu;
    if (x < 1e-6) return (2.0 / beta) * (1.0 + x * x / 3.0);
    return nu / std::tanh(x);
}

double coth(double x) {
    if (!std::isfinite(x)) return 1.0;
    return 1.0 / std::tanh(x);
}

} // namespace

PhononEnvironment::PhononEnvironment(const PhononParameters& params, const PhononGridOptions& options)
    : params_(params), options_(options) {
    if (!(params.alpha_ps2 >= 0.0)) throw std::domain_error("phonon: alpha must be >= 0");
    if (!(params.xi_meV > 0.0)) throw std::domain_error("phonon: xi must be > 0");
    if (!(params.temperature_K >= 0.0)) throw std::domain_error("phonon: temperature must be >= 0");
    if (!(options.tau_step_ps > 0.0) || !(options.tau_cap_ps > 10.0 * options.tau_step_ps))
        throw std::domain_error("phonon: invalid tau grid options");

    xi_ = units::from_meV(params.xi_meV);
    beta_ = units::inverse_temperature(params.temperature_K);

    const complex phi0 = phi(0.0);
    franck_condon_ = std::exp(-0.5 * phi0.real());

    const std::size_t step_ratio =
        static_cast<std::size_t>(std::llround(kProbeStep / options_.tau_step_ps));
    if (alpha() == 0.0) {
        phi_grid_.assign(std::max<std::size_t>(step_ratio, 8) + 1, complex{});
        return;
    }

    // Locate where |phi| has decayed for good on a coarse probe grid.
    const auto probe_count = static_cast<std::size_t>(std::floor(options_.tau_cap_ps / kProbeStep)) + 1;
    const auto probe = batch_phi(kProbeStep, probe_count);
    std::size_t last_above = 0;
    for (std::size_t k = 0; k < probe.size(); ++k)
        if (std::abs(probe[k]) >= options_.decay_threshold) last_above = k;

    std::size_t fine_count = 0;
    if (last_above + 1 >= probe.size()) {
        capped_ = true;
        fine_count = static_cast<std::size_t>(std::llround(options_.tau_cap_ps / options_.tau_step_ps)) + 1;
    } else {
        const std::size_t probe_end = std::max<std::size_t>(last_above + 1, 10);
        fine_count = probe_end * step_ratio + 1;
    }
    phi_grid_ = batch_phi(options_.tau_step_ps, fine_count);

    if (capped_) {
        const double t_end = tau_max();
        tail_coefficient_ = phi_grid_.back() * t_end * t_end;
        const std::size_t k_check = (phi_grid_.size() - 1) * 4 / 5;
        const double t_check = double(k_check) * tau_step();
        const double mismatch = std::abs(phi_grid_[k_check] - tail_coefficient_ / (t_check * t_check));
        if (mismatch > options_.tail_tolerance) {
            throw ConfigurationError("phonon: tau grid too short; |phi| has not reached its algebraic tail by "
                                     + std::to_string(t_end) + " ps (mismatch "
                                     + std::to_string(mismatch) + "), increase tau_cap_ps");
        }
    }
}

double PhononEnvironment::spectral_density(double nu) const {
    if (nu < 0.0) throw std::domain_error("spectral_density: nu must be >= 0");
    return alpha() * nu * nu * nu * std::exp(-(nu * nu) / (xi_ * xi_));
}

double PhononEnvironment::thermal_weight(double nu) const {
    return alpha() * nu_coth(nu, beta_) * std::exp(-(nu * nu) / (xi_ * xi_));
}

complex PhononEnvironment::phi(double tau) const {
    if (!std::isfinite(tau)) throw std::domain_error("phi: tau must be finite");
    if (alpha() == 0.0) return {};

    const double a = alpha();
    const double xi2 = xi_ * xi_;
    const double beta = beta_;
    auto integrand = [=](double nu) {
        const double damp = a * std::exp(-(nu * nu) / xi2);
        return complex{damp * nu_coth(nu, beta) * std::cos(nu * tau), -damp * nu * std::sin(nu * tau)};
    };

    const double upper = kCutoffMultiple * xi_;
    quad::AdaptiveOptions opts;
    opts.abs_tol = options_.phi_abs_tol;
    opts.initial_panels =
        std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(upper * std::abs(tau) / units::pi)));
    const auto res = quad::adaptive_gauss_kronrod(integrand, 0.0, upper, opts);
    if (!res.converged) {
        throw NumericalToleranceError("phi: quadrature did not converge at tau = " + std::to_string(tau),
                                      res.error_estimate);
    }
    return res.value;
}

complex PhononEnvironment::phi_beyond_grid(double tau) const {
    if (!capped_) return {};
    return tail_coefficient_ / (tau * tau);
}

complex PhononEnvironment::correlation(double tau) const {
    if (tau == 0.0) return {1.0, 0.0};
    if (tau < 0.0) return std::conj(correlation(-tau));
    const double b2 = franck_condon_ * franck_condon_;
    if (tau > tau_max()) return b2 * std::exp(phi_beyond_grid(tau));
    return b2 * std::exp(phi(tau));
}

std::vector<complex> PhononEnvironment::batch_phi(double step, std::size_t count) const {
    // Fixed composite Gauss–Legendre rule in nu, fine enough to resolve the
    // oscillation at the largest tau; samples are advanced by phasor rotation.
    const double upper = kCutoffMultiple * xi_;
    const double t_end = step * double(count - 1);
    double panel = 0.5 * xi_;
    if (t_end > 0.0) panel = std::min(panel, 0.5 * units::pi / t_end);
    const auto panels = static_cast<std::size_t>(std::ceil(upper / panel));
    const auto& gl = quad::gauss_legendre(20);

    const std::size_t n = panels * gl.nodes.size();
    std::vector<double> nu(n), wc(n), ws(n);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = upper * double(p) / double(panels);
        const double hi = upper * double(p + 1) / double(panels);
        const double half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const std::size_t k = p * gl.nodes.size() + i;
            nu[k] = 0.5 * (lo + hi) + half * gl.nodes[i];
            const double w = half * gl.weights[i];
            wc[k] = w * thermal_weight(nu[k]);
            ws[k] = w * alpha() * nu[k] * std::exp(-(nu[k] * nu[k]) / (xi_ * xi_));
        }
    }

    std::vector<complex> phase(n, complex{1.0, 0.0});
    std::vector<complex> rotate(n);
    for (std::size_t k = 0; k < n; ++k) rotate[k] = std::polar(1.0, nu[k] * step);

    std::vector<complex> out(count);
    constexpr std::size_t resync = 64;
    for (std::size_t m = 0; m < count; ++m) {
        if (m % resync == 0) {
            const double t = step * double(m);
            for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, nu[k] * t);
        }
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            re += wc[k] * phase[k].real();
            im -= ws[k] * phase[k].imag();
            phase[k] *= rotate[k];
        }
        out[m] = {re, im};
    }
    out[0] = {out[0].real(), 0.0};
    return out;
}

PolaronRates polaron_rates(double g, double kappa_c, const PhononEnvironment& env,
                           const PolaronRateOptions& options) {
    if (!(g > 0.0)) throw std::domain_error("polaron_rates: g must be > 0");
    if (!(kappa_c > 0.0)) throw std::domain_error("polaron_rates: kappa_c must be > 0");

    PolaronRates rates;
    rates.g_over_xi = g / env.cutoff();
    rates.polaron_valid = rates.g_over_xi < options.validity_ratio;
    if (env.alpha() == 0.0) return rates;

    const double B = env.franck_condon();
    const double b2 = B * B;
    const double gr = g * B;
    const double omega = 2.0 * gr;

    const auto phi = env.phi_samples();
    const double h = env.tau_step();
    const auto w = quad::gregory_weights(phi.size(), h);

    complex chi_x{}, chi_y{}, chi_z{};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double tau = h * double(k);
        const complex lxx = b2 * (std::cosh(phi[k]) - 1.0);
        const complex lyy = b2 * std::sinh(phi[k]);
        chi_x += w[k] * lxx;
        chi_y += w[k] * std::cos(omega * tau) * lyy;
        chi_z -= w[k] * std::sin(omega * tau) * lyy;
    }

    if (env.grid_capped()) {
        // Lambda_YY ~ B^2 c / tau^2 and Lambda_XX ~ B^2 c^2 / (2 tau^4) beyond the grid.
        const double a = env.tau_max();
        const complex c = env.tail_coefficient();
        const complex t = special::inverse_square_tail_transform(omega, a);
        chi_x += b2 * c * c / (6.0 * a * a * a);
        chi_y += b2 * c * t.real();
        chi_z += b2 * c * t.imag();
    }

    rates.chi_X = chi_x;
    rates.chi_Y = chi_y;
    rates.chi_Z = chi_z;

    const double y = 4.0 * gr / kappa_c;
    const double z = 1.0 - (2.0 * gr / kappa_c) * (2.0 * gr / kappa_c);
    double gamma = y * y * chi_y.real();
    if (options.include_chi_z) gamma += y * z * chi_z.real();
    rates.gamma_ph = g * g * gamma;

    const double th = env.zero_temperature() ? 1.0 : coth(env.beta() * gr);
    rates.gamma_ph_weak = 2.0 * units::pi * (gr / kappa_c) * (gr / kappa_c) * env.spectral_density(omega) * th;
    return rates;
}

} // namespace qdsps
