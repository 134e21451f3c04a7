// spectra.hpp — Two-colour emission spectra, filters and Green's functions.
//
// Frequencies are detunings (ps^-1) from the polaron-shifted transition. The
// bare two-colour spectrum is
//     S(w, v) = Sc(w, v) + conj(Sc(v, w)),
//     Sc(w, v) = r \int dt \int dtau e^{i(v - w)t} e^{-i w tau} <sigma^+(t+tau) sigma(t)> G(tau),
// split into the zero-phonon line (G -> B^2) and the sideband (G -> G - B^2).
// `r` is the emission normalisation: Gamma_O, or 1 when Gamma_O = 0.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qdsps/emitter_dynamics.hpp"
#include "qdsps/phonon_env.hpp"
#include "qdsps/quadrature.hpp"

namespace qdsps {

enum class FilterKind { unity, lorentzian, cavity };

struct FilterResponse {
    FilterKind kind = FilterKind::unity;
    double centre = 0.0;  // ps^-1
    double kappa = 0.0;   // FWHM of |h|^2, ps^-1

    static FilterResponse unity() { return {}; }
    static FilterResponse lorentzian(double centre, double kappa);
    static FilterResponse cavity(double centre, double kappa);

    complex operator()(double omega) const;
    double transmission(double omega) const;  // |h(omega)|^2
};

// G(w, v) = prefactor * conj(h(w)) * h(v).
struct GreensFunction {
    double prefactor = 1.0;
    FilterResponse filter;

    complex operator()(double omega, double nu) const {
        return prefactor * std::conj(filter(omega)) * filter(nu);
    }
};

struct SidebandKernelOptions {
    double half_width_xi = 12.0;   // tabulated window, in units of the phonon cut-off
    int points_per_xi = 400;
};

// K_l(w) = \int_0^inf (G(tau) - B^2) exp((l - i w) tau) dtau for a set of
// complex decay rates l (Re l <= 0). Tabulated on a uniform grid and
// continued outside it by the large-|w| expansion.
class SidebandKernel {
public:
    SidebandKernel(const PhononEnvironment& env, std::vector<complex> rates,
                   const SidebandKernelOptions& options = {});

    std::size_t size() const { return rates_.size(); }
    complex rate(std::size_t i) const { return rates_[i]; }
    double window() const { return window_; }

    complex operator()(std::size_t i, double omega) const;
    // Direct sum over the cached tau grid (plus tail), as used for the table nodes.
    complex direct(std::size_t i, double omega) const;

private:
    complex asymptote(std::size_t i, double omega) const;
    complex tail(std::size_t i, double omega) const;

    const PhononEnvironment* env_;
    std::vector<complex> rates_;
    double step_ = 0.0;
    double window_ = 0.0;
    std::size_t half_ = 0;
    std::vector<std::vector<complex>> tables_;
    // phi derivatives at tau = 0; odd orders are imaginary, even orders real.
    complex dphi0_{};
    double ddphi0_ = 0.0;
    complex d3phi0_{};
    double d4phi0_ = 0.0;
};

enum class SidebandModel {
    exact,       // keeps the ZPL decay during the phonon memory time
    factorised,  // <sigma^+(t+tau) sigma(t)> ~ <sigma^+ sigma>(t) inside the sideband
};

struct SpectrumOptions {
    SidebandModel sideband_model = SidebandModel::exact;
    SidebandKernelOptions kernel;
};

class TwoColourSpectrum {
public:
    TwoColourSpectrum(DipoleCorrelation corr, const PhononEnvironment& env, double emission_norm,
                      const SpectrumOptions& options = {});

    double franck_condon() const { return B_; }
    double emission_norm() const { return r_; }
    const DipoleCorrelation& correlation() const { return corr_; }
    const PhononEnvironment& environment() const { return *env_; }
    bool has_sideband() const { return has_sideband_; }
    const SidebandKernel* kernel() const { return kernel_.get(); }

    complex zpl(double omega, double nu) const;
    complex sideband(double omega, double nu) const;
    complex total(double omega, double nu) const;

    double zpl_diagonal(double omega) const { return zpl(omega, omega).real(); }
    double sideband_diagonal(double omega) const { return sideband(omega, omega).real(); }
    double diagonal(double omega) const { return total(omega, omega).real(); }

    // Closed-form powers: 2 pi r B^2 Pi(0), 2 pi r (1 - B^2) Pi(0).
    double power_zpl() const;
    double power_sideband() const;
    double power_total() const { return power_zpl() + power_sideband(); }

    // ZPL poles in w as quadrature features (centre Im l, width |Re l|).
    std::vector<quad::Feature> zpl_features() const;
    // Population-transform poles in (v - w).
    std::vector<quad::Feature> population_features() const;
    double zpl_fwhm() const;          // 2 * slowest coherence decay rate
    double sideband_scale() const;    // phonon cut-off xi, ps^-1

    // Evaluate Sc(w, v) pieces; public for the two-colour integrators.
    struct Pieces {
        complex zpl;
        complex sideband;
    };
    Pieces half(double omega, double nu) const;

private:
    struct Group {
        complex lambda;
        std::vector<std::pair<complex, complex>> pop;  // (c, mu)
        std::size_t kernel_index = 0;
    };

    complex group_transform(const Group& g, double delta) const;

    DipoleCorrelation corr_;
    const PhononEnvironment* env_;
    double r_;
    double B_;
    double B2_;
    bool has_sideband_;
    SpectrumOptions options_;
    std::vector<Group> groups_;
    std::shared_ptr<const SidebandKernel> kernel_;
};

// Pointwise product of a bare spectrum with a Green's function.
class DetectedSpectrum {
public:
    DetectedSpectrum(std::shared_ptr<const TwoColourSpectrum> bare, GreensFunction greens)
        : bare_(std::move(bare)), greens_(greens) {}

    const TwoColourSpectrum& bare() const { return *bare_; }
    const GreensFunction& greens() const { return greens_; }

    complex zpl(double omega, double nu) const { return greens_(omega, nu) * bare_->zpl(omega, nu); }
    complex sideband(double omega, double nu) const { return greens_(omega, nu) * bare_->sideband(omega, nu); }
    complex total(double omega, double nu) const { return greens_(omega, nu) * bare_->total(omega, nu); }

    double zpl_diagonal(double w) const { return greens_.prefactor * greens_.filter.transmission(w) * bare_->zpl_diagonal(w); }
    double sideband_diagonal(double w) const { return greens_.prefactor * greens_.filter.transmission(w) * bare_->sideband_diagonal(w); }
    double diagonal(double w) const { return zpl_diagonal(w) + sideband_diagonal(w); }

private:
    std::shared_ptr<const TwoColourSpectrum> bare_;
    GreensFunction greens_;
};

DetectedSpectrum detected_spectrum(std::shared_ptr<const TwoColourSpectrum> bare, const GreensFunction& greens);

// Green's function of the detected channel and of the out-of-plane channel.
// `emission_norm` is the r used for the bare spectrum.
GreensFunction detected_greens(const SourceArchitecture& arch, double emission_norm);
GreensFunction lost_greens(const SourceArchitecture& arch, double emission_norm);
FilterResponse architecture_filter(const SourceArchitecture& arch);
double emission_norm(const SourceArchitecture& arch);

// Composite rule for diagonal integrals, graded around ZPL poles and the filter
// and covering the sideband window.
quad::Rule diagonal_rule(const TwoColourSpectrum& bare, const FilterResponse& filter, int order = 20);

// F = \int |h|^2 S_SB(w, w) dw / \int S_SB(w, w) dw; 1 when there is no sideband.
double sideband_fraction(const TwoColourSpectrum& bare, const FilterResponse& filter, int order = 20);

struct SpectrumRow {
    double omega;     // ps^-1 detuning
    double total;
    double zpl;
    double sideband;
};

// Diagonal of a detected spectrum on the two-scale export grid: a broadband
// window of +-10 xi at step xi/400 merged with a ZPL window of +-50 FWHM at
// step FWHM/40.
std::vector<double> export_grid(const TwoColourSpectrum& bare);
std::vector<SpectrumRow> sample_diagonal(const DetectedSpectrum& spectrum, std::span<const double> omegas);

// CSV with columns omega_meV,S_diag,S_ZPL_diag,S_SB_diag. Spectral densities
// are per meV; omega_meV is omega_X plus the detuning.
std::string spectrum_csv(std::span<const SpectrumRow> rows, double omega_X_meV,
                         std::span<const std::string> header_lines = {});

} // namespace qdsps
