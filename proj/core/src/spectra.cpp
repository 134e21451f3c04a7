// spectra.cpp

#include "qdsps/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qdsps/errors.hpp"
#include "qdsps/special_functions.hpp"
#include "qdsps/units.hpp"

namespace qdsps {

namespace {

constexpr complex I{0.0, 1.0};

} // namespace

// ---------------------------------------------------------------- filters

FilterResponse FilterResponse::lorentzian(double centre, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("filter width must be > 0");
    return {FilterKind::lorentzian, centre, kappa};
}

FilterResponse FilterResponse::cavity(double centre, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("cavity width must be > 0");
    return {FilterKind::cavity, centre, kappa};
}

complex FilterResponse::operator()(double omega) const {
    const double hk = 0.5 * kappa;
    switch (kind) {
    case FilterKind::unity: return {1.0, 0.0};
    case FilterKind::lorentzian: return hk / (I * (omega - centre) - hk);
    case FilterKind::cavity: return I * hk / (I * (omega - centre) - hk);
    }
    return {1.0, 0.0};
}

double FilterResponse::transmission(double omega) const {
    if (kind == FilterKind::unity) return 1.0;
    const double hk = 0.5 * kappa;
    const double d = omega - centre;
    return hk * hk / (d * d + hk * hk);
}

// --------------------------------------------------------- sideband kernel

SidebandKernel::SidebandKernel(const PhononEnvironment& env, std::vector<complex> rates,
                               const SidebandKernelOptions& options)
    : env_(&env), rates_(std::move(rates)) {
    for (const auto& l : rates_)
        if (l.real() > 0.0) throw std::domain_error("SidebandKernel: rates must have Re <= 0");
    if (options.points_per_xi < 8 || !(options.half_width_xi > 1.0))
        throw std::domain_error("SidebandKernel: invalid table options");

    const double xi = env.cutoff();
    step_ = xi / double(options.points_per_xi);
    half_ = static_cast<std::size_t>(std::llround(options.half_width_xi * options.points_per_xi));
    window_ = step_ * double(half_);

    // Short-time derivatives for the large-|w| expansion.
    const double upper = 10.0 * xi;
    quad::AdaptiveOptions opts;
    opts.abs_tol = 1e-13;
    const double a = env.alpha();
    const double xi2 = xi * xi;
    const auto first = quad::adaptive_gauss_kronrod(
        [=](double nu) { return complex{a * nu * nu * std::exp(-nu * nu / xi2), 0.0}; }, 0.0, upper, opts);
    const auto second = quad::adaptive_gauss_kronrod(
        [&env](double nu) { return complex{nu * nu * env.thermal_weight(nu), 0.0}; }, 0.0, upper, opts);
    const auto third = quad::adaptive_gauss_kronrod(
        [=](double nu) { return complex{a * std::pow(nu, 4) * std::exp(-nu * nu / xi2), 0.0}; }, 0.0, upper, opts);
    const auto fourth = quad::adaptive_gauss_kronrod(
        [&env](double nu) { return complex{std::pow(nu, 4) * env.thermal_weight(nu), 0.0}; }, 0.0, upper, opts);
    dphi0_ = -I * first.value.real();
    ddphi0_ = -second.value.real();
    d3phi0_ = I * third.value.real();
    d4phi0_ = fourth.value.real();

    const auto phi = env.phi_samples();
    const double h = env.tau_step();
    if (phi.size() < 8) throw std::domain_error("SidebandKernel: phi grid too short");
    const double b2 = env.franck_condon() * env.franck_condon();
    std::vector<complex> f(phi.size());
    f[0] = 1.0 - b2;
    for (std::size_t k = 1; k < phi.size(); ++k) f[k] = b2 * (std::exp(phi[k]) - 1.0);

    const std::size_t n = 2 * half_ + 1;
    const double w0 = -window_;
    std::vector<quad::CubicFourierWeights> weights(n);
    for (std::size_t m = 0; m < n; ++m) weights[m] = quad::cubic_fourier_weights(-(w0 + step_ * double(m)) * h);

    const std::size_t last = phi.size() - 1;
    const double length = h * double(last);
    for (const complex lambda : rates_) {
        std::vector<complex> g(phi.size());
        for (std::size_t k = 0; k < phi.size(); ++k) g[k] = f[k] * std::exp(lambda * (h * double(k)));

        std::vector<complex> table(n, complex{});
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double tau = h * double(k);
            const complex rot = std::polar(1.0, -step_ * tau);
            complex z{};
            for (std::size_t m = 0; m < n; ++m) {
                if (m % 256 == 0) z = std::polar(1.0, -(w0 + step_ * double(m)) * tau);
                table[m] += g[k] * z;
                z *= rot;
            }
        }
        for (std::size_t m = 0; m < n; ++m) {
            const auto& wt = weights[m];
            complex ends{};
            const complex far = std::polar(1.0, -(w0 + step_ * double(m)) * length);
            for (std::size_t j = 0; j < 4; ++j) ends += wt.a[j] * g[j] + far * std::conj(wt.a[j]) * g[last - j];
            table[m] = h * (wt.W * table[m] + ends);
        }
        tables_.push_back(std::move(table));
    }
    for (std::size_t i = 0; i < rates_.size(); ++i)
        for (std::size_t m = 0; m < n; ++m)
            tables_[i][m] += tail(i, w0 + step_ * double(m));
}

complex SidebandKernel::tail(std::size_t i, double omega) const {
    if (!env_->grid_capped()) return {};
    const double b2 = env_->franck_condon() * env_->franck_condon();
    const complex s = I * omega - rates_[i];
    return b2 * env_->tail_coefficient() * special::inverse_square_laplace_tail(s, env_->tau_max());
}

complex SidebandKernel::direct(std::size_t i, double omega) const {
    const auto phi = env_->phi_samples();
    const double h = env_->tau_step();
    const double b2 = env_->franck_condon() * env_->franck_condon();
    const std::size_t last = phi.size() - 1;
    auto g = [&](std::size_t k) {
        const complex f = k == 0 ? complex(1.0 - b2) : b2 * (std::exp(phi[k]) - 1.0);
        return f * std::exp(rates_[i] * (h * double(k)));
    };
    complex sum{};
    for (std::size_t k = 0; k <= last; ++k) sum += g(k) * std::polar(1.0, -omega * h * double(k));
    const auto wt = quad::cubic_fourier_weights(-omega * h);
    const complex far = std::polar(1.0, -omega * h * double(last));
    complex ends{};
    for (std::size_t j = 0; j < 4; ++j) ends += wt.a[j] * g(j) + far * std::conj(wt.a[j]) * g(last - j);
    return h * (wt.W * sum + ends) + tail(i, omega);
}

complex SidebandKernel::asymptote(std::size_t i, double omega) const {
    // Watson series sum_n g^(n)(0) / s^(n+1) for g = (G - B^2) e^{l tau}.
    // Terms through s^-5 matter: the real part starts at l f0 / w^2 and the
    // 3 l u'' / w^4 correction still shifts the integrated weight by ~1e-6.
    const double b2 = env_->franck_condon() * env_->franck_condon();
    const complex l = rates_[i];
    const complex p1 = dphi0_, p2 = ddphi0_, p3 = d3phi0_, p4 = d4phi0_;
    // Derivatives of G / B^2 = e^phi / e^phi(0) at zero.
    const complex u0 = 1.0 - b2;
    const complex u1 = p1;
    const complex u2 = p2 + p1 * p1;
    const complex u3 = p3 + 3.0 * p1 * p2 + p1 * p1 * p1;
    const complex u4 = p4 + 4.0 * p1 * p3 + 3.0 * p2 * p2 + 6.0 * p1 * p1 * p2 + p1 * p1 * p1 * p1;
    const complex g[5] = {u0, u1 + l * u0, u2 + 2.0 * l * u1 + l * l * u0,
                          u3 + 3.0 * l * u2 + 3.0 * l * l * u1 + l * l * l * u0,
                          u4 + 4.0 * l * u3 + 6.0 * l * l * u2 + 4.0 * l * l * l * u1 + l * l * l * l * u0};
    const complex s = I * omega;
    complex sum{};
    complex sp = s;
    for (const complex& gn : g) {
        sum += gn / sp;
        sp *= s;
    }
    return sum;
}

complex SidebandKernel::operator()(std::size_t i, double omega) const {
    if (!(std::abs(omega) <= window_)) return asymptote(i, omega);
    const auto& t = tables_[i];
    const double x = (omega + window_) / step_;
    const auto last = static_cast<std::ptrdiff_t>(t.size()) - 1;
    auto ix = static_cast<std::ptrdiff_t>(std::floor(x));
    std::ptrdiff_t s = std::clamp<std::ptrdiff_t>(ix - 1, 0, last - 3);
    // Keep stencils on one side of w = 0, where the T = 0 kernel has a kink.
    const auto zero = static_cast<std::ptrdiff_t>(half_);
    if (s < zero && s + 3 > zero) s = x < double(zero) ? zero - 3 : zero;

    complex sum{};
    for (std::ptrdiff_t a = s; a < s + 4; ++a) {
        double basis = 1.0;
        for (std::ptrdiff_t b = s; b < s + 4; ++b)
            if (b != a) basis *= (x - double(b)) / double(a - b);
        sum += basis * t[static_cast<std::size_t>(a)];
    }
    return sum;
}

// --------------------------------------------------------- two-colour spectrum

TwoColourSpectrum::TwoColourSpectrum(DipoleCorrelation corr, const PhononEnvironment& env,
                                     double emission_norm, const SpectrumOptions& options)
    : corr_(std::move(corr)), env_(&env), r_(emission_norm), options_(options) {
    if (!(emission_norm > 0.0)) throw std::domain_error("TwoColourSpectrum: emission norm must be > 0");
    B_ = env.franck_condon();
    B2_ = B_ * B_;
    has_sideband_ = env.alpha() > 0.0;

    for (const auto& t : corr_.terms()) {
        auto it = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) { return g.lambda == t.lambda; });
        if (it == groups_.end()) {
            groups_.push_back({t.lambda, {}, groups_.size()});
            it = groups_.end() - 1;
        }
        it->pop.emplace_back(t.c, t.mu);
    }
    if (groups_.empty()) throw std::invalid_argument("TwoColourSpectrum: empty dipole correlation");

    if (has_sideband_) {
        std::vector<complex> rates;
        if (options_.sideband_model == SidebandModel::exact) {
            for (const auto& g : groups_) rates.push_back(g.lambda);
        } else {
            rates.push_back({0.0, 0.0});
            for (auto& g : groups_) g.kernel_index = 0;
        }
        kernel_ = std::make_shared<SidebandKernel>(env, std::move(rates), options_.kernel);
    }
}

complex TwoColourSpectrum::group_transform(const Group& g, double delta) const {
    complex sum{};
    for (const auto& [c, mu] : g.pop) sum -= c / (mu + I * delta);
    return sum;
}

TwoColourSpectrum::Pieces TwoColourSpectrum::half(double omega, double nu) const {
    const double delta = nu - omega;
    Pieces p{};
    if (options_.sideband_model == SidebandModel::factorised) {
        complex pi_total{};
        for (const auto& g : groups_) {
            const complex pi = group_transform(g, delta);
            pi_total += pi;
            p.zpl += pi / (I * omega - g.lambda);
        }
        if (has_sideband_) p.sideband = r_ * pi_total * (*kernel_)(0, omega);
    } else {
        for (const auto& g : groups_) {
            const complex pi = group_transform(g, delta);
            p.zpl += pi / (I * omega - g.lambda);
            if (has_sideband_) p.sideband += pi * (*kernel_)(g.kernel_index, omega);
        }
        p.sideband *= r_;
    }
    p.zpl *= r_ * B2_;
    return p;
}

complex TwoColourSpectrum::zpl(double omega, double nu) const {
    return half(omega, nu).zpl + std::conj(half(nu, omega).zpl);
}

complex TwoColourSpectrum::sideband(double omega, double nu) const {
    if (!has_sideband_) return {};
    return half(omega, nu).sideband + std::conj(half(nu, omega).sideband);
}

complex TwoColourSpectrum::total(double omega, double nu) const {
    const auto a = half(omega, nu);
    const auto b = half(nu, omega);
    return a.zpl + a.sideband + std::conj(b.zpl + b.sideband);
}

double TwoColourSpectrum::power_zpl() const {
    return 2.0 * units::pi * r_ * B2_ * corr_.population_transform(0.0).real();
}

double TwoColourSpectrum::power_sideband() const {
    return 2.0 * units::pi * r_ * (1.0 - B2_) * corr_.population_transform(0.0).real();
}

std::vector<quad::Feature> TwoColourSpectrum::zpl_features() const {
    std::vector<quad::Feature> out;
    for (const auto& g : groups_) out.push_back({g.lambda.imag(), std::abs(g.lambda.real())});
    return out;
}

std::vector<quad::Feature> TwoColourSpectrum::population_features() const {
    std::vector<quad::Feature> out;
    for (const auto& [p, mu] : corr_.population_terms()) {
        out.push_back({-mu.imag(), std::abs(mu.real())});
        if (mu.imag() != 0.0) out.push_back({mu.imag(), std::abs(mu.real())});
    }
    return out;
}

double TwoColourSpectrum::zpl_fwhm() const {
    double slowest = std::numeric_limits<double>::infinity();
    for (const auto& g : groups_) slowest = std::min(slowest, std::abs(g.lambda.real()));
    return 2.0 * slowest;
}

double TwoColourSpectrum::sideband_scale() const { return env_->cutoff(); }

// ------------------------------------------------------- Green's functions

DetectedSpectrum detected_spectrum(std::shared_ptr<const TwoColourSpectrum> bare, const GreensFunction& greens) {
    return DetectedSpectrum(std::move(bare), greens);
}

double emission_norm(const SourceArchitecture& arch) {
    const double g_o = out_of_plane_rate(arch);
    return g_o > 0.0 ? g_o : 1.0;
}

FilterResponse architecture_filter(const SourceArchitecture& arch) {
    if (const auto* f = std::get_if<FilteredWaveguide>(&arch))
        return FilterResponse::lorentzian(units::from_ueV(f->filter_detuning_ueV), units::from_ueV(f->kappa_f_ueV));
    if (const auto* c = std::get_if<ResonantCavity>(&arch))
        return FilterResponse::cavity(0.0, units::from_ueV(c->kappa_c_ueV));
    return FilterResponse::unity();
}

GreensFunction detected_greens(const SourceArchitecture& arch, double emission_norm) {
    GreensFunction g;
    g.filter = architecture_filter(arch);
    if (const auto* c = std::get_if<ResonantCavity>(&arch)) {
        // Detected cavity field: sqrt(4 g^2 / kappa_c) h_c acting on sigma B_-.
        const double gg = units::from_ueV(c->g_ueV);
        g.prefactor = 4.0 * gg * gg / units::from_ueV(c->kappa_c_ueV) / emission_norm;
    } else {
        std::visit([&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (!std::is_same_v<T, ResonantCavity>)
                g.prefactor = units::from_ueV(a.Gamma_D_ueV) / emission_norm;
        }, arch);
    }
    return g;
}

GreensFunction lost_greens(const SourceArchitecture& arch, double emission_norm) {
    return {out_of_plane_rate(arch) / emission_norm, FilterResponse::unity()};
}

// ------------------------------------------------------------ diagonal rules

quad::Rule diagonal_rule(const TwoColourSpectrum& bare, const FilterResponse& filter, int order) {
    std::vector<quad::Feature> features = bare.zpl_features();
    if (filter.kind != FilterKind::unity) features.push_back({filter.centre, 0.5 * filter.kappa});
    quad::RuleOptions opt;
    opt.order = order;
    if (bare.has_sideband()) {
        const double xi = bare.sideband_scale();
        features.push_back({0.0, 0.05 * xi});
        opt.window_lo = -12.0 * xi;
        opt.window_hi = 12.0 * xi;
        opt.max_panel = 0.25 * xi;
    }
    return quad::graded_rule(features, opt);
}

double sideband_fraction(const TwoColourSpectrum& bare, const FilterResponse& filter, int order) {
    if (!bare.has_sideband() || filter.kind == FilterKind::unity) return 1.0;
    const auto rule = diagonal_rule(bare, filter, order);
    double passed = 0.0;
    double all = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double s = rule.weights[i] * bare.sideband_diagonal(rule.nodes[i]);
        all += s;
        passed += s * filter.transmission(rule.nodes[i]);
    }
    if (!(all > 0.0)) return 1.0;
    return std::clamp(passed / all, 0.0, 1.0);
}

// ------------------------------------------------------------------- export

std::vector<double> export_grid(const TwoColourSpectrum& bare) {
    std::vector<double> pts;
    const double xi = bare.sideband_scale();
    const double coarse = xi / 400.0;
    for (int m = -4000; m <= 4000; ++m) pts.push_back(coarse * m);
    const double fwhm = bare.zpl_fwhm();
    const double fine = fwhm / 40.0;
    for (int m = -2000; m <= 2000; ++m) pts.push_back(fine * m);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts)
        if (out.empty() || p - out.back() > 1e-9 * fine) out.push_back(p);
    return out;
}

std::vector<SpectrumRow> sample_diagonal(const DetectedSpectrum& spectrum, std::span<const double> omegas) {
    std::vector<SpectrumRow> rows;
    rows.reserve(omegas.size());
    for (double w : omegas) {
        const double z = spectrum.zpl_diagonal(w);
        const double s = spectrum.sideband_diagonal(w);
        rows.push_back({w, z + s, z, s});
    }
    return rows;
}

std::string spectrum_csv(std::span<const SpectrumRow> rows, double omega_X_meV,
                         std::span<const std::string> header_lines) {
    std::string out;
    for (const auto& line : header_lines) out += "# " + line + "\n";
    out += "omega_meV,S_diag,S_ZPL_diag,S_SB_diag\n";
    char buf[128];
    const double per_meV = 1.0 / units::hbar_meV_ps;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.8e,%.8e,%.8e,%.8e\n", omega_X_meV + units::to_meV(r.omega),
                      r.total * per_meV, r.zpl * per_meV, r.sideband * per_meV);
        out += buf;
    }
    return out;
}

} // namespace qdsps
