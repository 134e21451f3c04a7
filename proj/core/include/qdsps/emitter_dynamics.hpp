// emitter_dynamics.hpp — Polaron master equations and two-time dipole correlations.
//
// Waveguide sources use the two-level generator
//     drho/dt = Gamma_tot L_sigma[rho] + 2 gamma L_{sigma^+ sigma}[rho],
// the cavity source the QD + single-mode generator (basis |g0>, |X0>, |g1>, |X1>)
//     drho/dt = -i[g_r X, rho] + K_ph[rho] + kappa L_a[rho] + Gamma_O L_sigma[rho]
//               + 2 gamma L_{sigma^+ sigma}[rho].
// Everything runs in the frame rotating at the polaron-shifted transition, with
// the cavity held on resonance. Rates in the parameter structs are in ueV;
// decompositions and correlations use ps^-1.

#pragma once

#include <complex>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qdsps/phonon_env.hpp"

namespace qdsps {

struct QDParams {
    double omega_X_meV = 0.0;     // spectral origin of exported spectra
    double Gamma_bulk_ueV = 1.0;  // bulk radiative rate Gamma
    double gamma_pd_ueV = 0.0;    // phenomenological pure dephasing gamma
};

struct BareWaveguide {
    double Gamma_D_ueV = 10.0;
    double Gamma_O_ueV = 0.0;
};

struct FilteredWaveguide {
    double Gamma_D_ueV = 10.0;
    double Gamma_O_ueV = 0.0;
    double kappa_f_ueV = 100.0;
    double filter_detuning_ueV = 0.0;  // omega_f relative to the ZPL
};

// The cavity is always resonant with the polaron-shifted transition.
struct ResonantCavity {
    double g_ueV = 30.0;
    double kappa_c_ueV = 120.0;
    double Gamma_O_ueV = 1.0;
};

using SourceArchitecture = std::variant<BareWaveguide, FilteredWaveguide, ResonantCavity>;

// Throw std::invalid_argument on negative or non-finite rates.
void validate(const QDParams& qd);
void validate(const SourceArchitecture& arch);

std::string_view architecture_name(const SourceArchitecture& arch);  // waveguide | filtered | cavity
double out_of_plane_rate(const SourceArchitecture& arch);            // Gamma_O, ps^-1

// One eigendecomposition of the generator. A defective generator (exceptional
// point) is represented by two nearby diagonalisable branches averaged with
// equal weights.
struct EigenBranch {
    double weight = 1.0;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd right;       // columns are right eigenvectors (column-major vec)
    Eigen::MatrixXcd right_inv;   // rows are the dual left eigenvectors
    Eigen::VectorXcd initial;     // right_inv * vec(rho0)
};

struct LiouvillianDecomposition {
    int dimension = 0;               // Hilbert-space dimension (2 or 4)
    Eigen::MatrixXcd generator;      // dimension^2 square superoperator
    Eigen::MatrixXcd sigma;          // QD lowering operator
    Eigen::MatrixXcd rho0;           // |X, vac><X, vac|
    std::vector<EigenBranch> branches;
    bool confluent = false;          // true when the symmetric split was needed
    double split = 0.0;              // relative split of kappa_c used then
    double max_real_eigenvalue = 0.0;

    const Eigen::VectorXcd& eigenvalues() const { return branches.front().eigenvalues; }
};

struct DecompositionOptions {
    double dissipative_tolerance = 1e-10;   // largest allowed Re(lambda), ps^-1
    double condition_limit = 1e8;           // beyond this the eigenbasis is treated as defective
    double split = 1e-6;
};

LiouvillianDecomposition build_waveguide_generator(const QDParams& qd, const SourceArchitecture& arch,
                                                   const DecompositionOptions& options = {});

LiouvillianDecomposition build_cavity_generator(const QDParams& qd, const ResonantCavity& cavity,
                                                const PhononEnvironment& env, const PolaronRates& rates,
                                                const DecompositionOptions& options = {});

// Generator alone (no decomposition), for propagation checks.
Eigen::MatrixXcd waveguide_generator(double Gamma_tot, double gamma);
Eigen::MatrixXcd cavity_generator(double g, double g_r, double kappa_c, double Gamma_O, double gamma,
                                  const PolaronRates& rates);

// <sigma^+(t + tau) sigma(t)> = sum_k c_k exp(mu_k t + lambda_k tau), t, tau >= 0.
struct CorrelationTerm {
    complex c;
    complex mu;
    complex lambda;
};

class DipoleCorrelation {
public:
    DipoleCorrelation() = default;
    DipoleCorrelation(std::vector<CorrelationTerm> terms, bool confluent);

    const std::vector<CorrelationTerm>& terms() const { return terms_; }
    bool confluent() const { return confluent_; }

    complex value(double t, double tau) const;
    double population(double t) const { return value(t, 0.0).real(); }

    // \int_0^inf exp(i delta t) <sigma^+ sigma>(t) dt.
    complex population_transform(double delta) const;

    // Aggregated population exponents: <sigma^+ sigma>(t) = sum p_k exp(mu_k t).
    const std::vector<std::pair<complex, complex>>& population_terms() const { return population_; }

    // Slowest |Re| rate among the tau exponents and the t exponents.
    double slowest_rate() const;

private:
    std::vector<CorrelationTerm> terms_;
    std::vector<std::pair<complex, complex>> population_;  // (p_k, mu_k)
    bool confluent_ = false;
};

// Quantum-regression sum for an initially excited emitter. Throws
// ConstructionError when a surviving term does not decay or when the cavity
// truncation leaks population into |X1>.
DipoleCorrelation dipole_correlation(const LiouvillianDecomposition& decomp);

enum class CavityRateConvention {
    renormalised,  // Gamma_cav = 4 g_r^2 / kappa_c (adiabatic elimination with g_r = g B)
    bare,          // Gamma_cav = 4 g^2 / kappa_c
};

struct AdiabaticRates {
    double Gamma_tot = 0.0;  // ps^-1
    double gamma_tot = 0.0;
    double Gamma_cav = 0.0;  // zero for waveguides
};

// Effective QD-only rates. `rates` is required for the cavity and ignored otherwise.
AdiabaticRates adiabatic_rates(const QDParams& qd, const SourceArchitecture& arch,
                               const PolaronRates* rates, double franck_condon,
                               CavityRateConvention convention = CavityRateConvention::renormalised);

} // namespace qdsps
