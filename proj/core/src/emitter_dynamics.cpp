// emitter_dynamics.cpp

#include "qdsps/emitter_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdsps/errors.hpp"
#include "qdsps/units.hpp"

namespace qdsps {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr complex I{0.0, 1.0};

void require_rate(double v, const char* name, bool allow_zero) {
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
        throw std::invalid_argument(std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0"));
    }
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-major vec: vec(A rho B) = (B^T (x) A) vec(rho).
MatrixXcd lindblad(const MatrixXcd& a) {
    const auto n = a.rows();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd ada = a.adjoint() * a;
    return kron(a.conjugate(), a) - 0.5 * kron(id, ada) - 0.5 * kron(ada.transpose(), id);
}

MatrixXcd commutator_super(const MatrixXcd& h) {
    const auto n = h.rows();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    return kron(id, h) - kron(h.transpose(), id);
}

// -g^2 ( [A, B rho] chi + [rho B, A] chi^* ), A and B Hermitian.
MatrixXcd phonon_term(const MatrixXcd& a, const MatrixXcd& b, complex chi, double g2) {
    const auto n = a.rows();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd left = kron(id, a * b) - kron(a.transpose(), b);
    const MatrixXcd right = kron((b * a).transpose(), id) - kron(b.transpose(), a);
    return -g2 * (chi * left + std::conj(chi) * right);
}

struct CavityOperators {
    MatrixXcd sigma, a, X, Y, Z;
};

// Basis |g0>, |X0>, |g1>, |X1>.
CavityOperators cavity_operators() {
    CavityOperators op;
    op.sigma = MatrixXcd::Zero(4, 4);
    op.sigma(0, 1) = 1.0;  // |X0> -> |g0>
    op.sigma(2, 3) = 1.0;  // |X1> -> |g1>
    op.a = MatrixXcd::Zero(4, 4);
    op.a(0, 2) = 1.0;      // |g1> -> |g0>
    op.a(1, 3) = 1.0;      // |X1> -> |X0>
    const MatrixXcd sd_a = op.sigma.adjoint() * op.a;
    op.X = sd_a + sd_a.adjoint();
    op.Y = I * (sd_a - sd_a.adjoint());
    op.Z = op.sigma.adjoint() * op.sigma - op.a.adjoint() * op.a;
    return op;
}

VectorXcd vec(const MatrixXcd& m) {
    return Eigen::Map<const VectorXcd>(m.data(), m.size());
}

struct BranchResult {
    EigenBranch branch;
    double condition = 0.0;
};

BranchResult decompose(const MatrixXcd& generator, const MatrixXcd& rho0, const DecompositionOptions& options) {
    Eigen::ComplexEigenSolver<MatrixXcd> solver(generator);
    if (solver.info() != Eigen::Success) throw ConstructionError("generator eigendecomposition failed");

    BranchResult out;
    out.branch.eigenvalues = solver.eigenvalues();
    out.branch.right = solver.eigenvectors();
    Eigen::JacobiSVD<MatrixXcd> svd(out.branch.right);
    const auto& s = svd.singularValues();
    out.condition = s(0) / s(s.size() - 1);
    out.branch.right_inv = out.branch.right.inverse();
    out.branch.initial = out.branch.right_inv * vec(rho0);

    const auto& ev = out.branch.eigenvalues;
    const double scale = generator.cwiseAbs().rowwise().sum().maxCoeff();
    const double zero_tol = options.dissipative_tolerance + 1e-12 * scale;
    int zeros = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev(k).real() > options.dissipative_tolerance) {
            throw ConstructionError("generator is not dissipative: eigenvalue with Re = "
                                    + std::to_string(ev(k).real()) + " ps^-1");
        }
        if (std::abs(ev(k)) <= zero_tol) ++zeros;
    }
    if (zeros != 1) {
        throw ConstructionError("generator has " + std::to_string(zeros) + " stationary states, expected 1");
    }
    return out;
}

double max_real(const Eigen::VectorXcd& ev) {
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ev.size(); ++k) m = std::max(m, ev(k).real());
    return m;
}

} // namespace

void validate(const QDParams& qd) {
    if (!std::isfinite(qd.omega_X_meV)) throw std::invalid_argument("qd.omega_X_meV must be finite");
    require_rate(qd.Gamma_bulk_ueV, "qd.Gamma_ueV", false);
    require_rate(qd.gamma_pd_ueV, "qd.gamma_ueV", true);
}

void validate(const SourceArchitecture& arch) {
    std::visit([](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, BareWaveguide>) {
            require_rate(a.Gamma_D_ueV, "Gamma_D_ueV", false);
            require_rate(a.Gamma_O_ueV, "Gamma_O_ueV", true);
        } else if constexpr (std::is_same_v<T, FilteredWaveguide>) {
            require_rate(a.Gamma_D_ueV, "Gamma_D_ueV", false);
            require_rate(a.Gamma_O_ueV, "Gamma_O_ueV", true);
            require_rate(a.kappa_f_ueV, "kappa_f_ueV", false);
            if (!std::isfinite(a.filter_detuning_ueV))
                throw std::invalid_argument("filter_detuning_ueV must be finite");
        } else {
            require_rate(a.g_ueV, "g_ueV", false);
            require_rate(a.kappa_c_ueV, "kappa_c_ueV", false);
            require_rate(a.Gamma_O_ueV, "Gamma_O_ueV", true);
        }
    }, arch);
}

std::string_view architecture_name(const SourceArchitecture& arch) {
    switch (arch.index()) {
    case 0: return "waveguide";
    case 1: return "filtered";
    default: return "cavity";
    }
}

double out_of_plane_rate(const SourceArchitecture& arch) {
    return std::visit([](const auto& a) { return units::from_ueV(a.Gamma_O_ueV); }, arch);
}

Eigen::MatrixXcd waveguide_generator(double Gamma_tot, double gamma) {
    MatrixXcd sigma = MatrixXcd::Zero(2, 2);
    sigma(0, 1) = 1.0;  // basis |g>, |X>
    return Gamma_tot * lindblad(sigma) + 2.0 * gamma * lindblad(sigma.adjoint() * sigma);
}

Eigen::MatrixXcd cavity_generator(double g, double g_r, double kappa_c, double Gamma_O, double gamma,
                                  const PolaronRates& rates) {
    const auto op = cavity_operators();
    const double g2 = g * g;
    MatrixXcd L = -I * commutator_super(g_r * op.X);
    L += phonon_term(op.X, op.X, rates.chi_X, g2);
    L += phonon_term(op.Y, op.Y, rates.chi_Y, g2);
    L += phonon_term(op.Y, op.Z, rates.chi_Z, g2);
    L += kappa_c * lindblad(op.a);
    L += Gamma_O * lindblad(op.sigma);
    L += 2.0 * gamma * lindblad(op.sigma.adjoint() * op.sigma);
    return L;
}

LiouvillianDecomposition build_waveguide_generator(const QDParams& qd, const SourceArchitecture& arch,
                                                   const DecompositionOptions& options) {
    validate(qd);
    validate(arch);
    if (std::holds_alternative<ResonantCavity>(arch))
        throw std::invalid_argument("build_waveguide_generator: architecture is a cavity");

    const auto rates = adiabatic_rates(qd, arch, nullptr, 1.0);
    LiouvillianDecomposition d;
    d.dimension = 2;
    d.generator = waveguide_generator(rates.Gamma_tot, rates.gamma_tot);
    d.sigma = MatrixXcd::Zero(2, 2);
    d.sigma(0, 1) = 1.0;
    d.rho0 = MatrixXcd::Zero(2, 2);
    d.rho0(1, 1) = 1.0;
    auto br = decompose(d.generator, d.rho0, options);
    d.max_real_eigenvalue = max_real(br.branch.eigenvalues);
    d.branches.push_back(std::move(br.branch));
    return d;
}

LiouvillianDecomposition build_cavity_generator(const QDParams& qd, const ResonantCavity& cavity,
                                                const PhononEnvironment& env, const PolaronRates& rates,
                                                const DecompositionOptions& options) {
    validate(qd);
    validate(SourceArchitecture{cavity});

    const double g = units::from_ueV(cavity.g_ueV);
    const double g_r = g * env.franck_condon();
    const double kappa = units::from_ueV(cavity.kappa_c_ueV);
    const double Gamma_O = units::from_ueV(cavity.Gamma_O_ueV);
    const double gamma = units::from_ueV(qd.gamma_pd_ueV);

    const auto op = cavity_operators();
    LiouvillianDecomposition d;
    d.dimension = 4;
    d.generator = cavity_generator(g, g_r, kappa, Gamma_O, gamma, rates);
    d.sigma = op.sigma;
    d.rho0 = MatrixXcd::Zero(4, 4);
    d.rho0(1, 1) = 1.0;

    auto br = decompose(d.generator, d.rho0, options);
    if (br.condition <= options.condition_limit) {
        d.max_real_eigenvalue = max_real(br.branch.eigenvalues);
        d.branches.push_back(std::move(br.branch));
        return d;
    }

    // Exceptional point: average two generators with kappa split symmetrically.
    d.confluent = true;
    d.split = options.split;
    d.max_real_eigenvalue = -std::numeric_limits<double>::infinity();
    for (double sign : {-1.0, 1.0}) {
        const MatrixXcd L = cavity_generator(g, g_r, kappa * (1.0 + sign * options.split), Gamma_O, gamma, rates);
        auto b = decompose(L, d.rho0, options);
        b.branch.weight = 0.5;
        d.max_real_eigenvalue = std::max(d.max_real_eigenvalue, max_real(b.branch.eigenvalues));
        d.branches.push_back(std::move(b.branch));
    }
    return d;
}

DipoleCorrelation::DipoleCorrelation(std::vector<CorrelationTerm> terms, bool confluent)
    : terms_(std::move(terms)), confluent_(confluent) {
    for (const auto& t : terms_) {
        auto it = std::find_if(population_.begin(), population_.end(),
                               [&](const auto& p) { return p.second == t.mu; });
        if (it == population_.end()) population_.emplace_back(t.c, t.mu);
        else it->first += t.c;
    }
}

complex DipoleCorrelation::value(double t, double tau) const {
    complex sum{};
    for (const auto& term : terms_) sum += term.c * std::exp(term.mu * t + term.lambda * tau);
    return sum;
}

complex DipoleCorrelation::population_transform(double delta) const {
    complex sum{};
    for (const auto& [p, mu] : population_) sum -= p / (mu + I * delta);
    return sum;
}

double DipoleCorrelation::slowest_rate() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) r = std::min({r, -t.mu.real(), -t.lambda.real()});
    return r;
}

DipoleCorrelation dipole_correlation(const LiouvillianDecomposition& decomp) {
    const int d = decomp.dimension;
    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const MatrixXcd s_left = kron(id, decomp.sigma);   // vec(sigma rho)
    const MatrixXcd sigma_dag = decomp.sigma.adjoint();

    std::vector<CorrelationTerm> raw;
    double leak = 0.0;
    for (const auto& br : decomp.branches) {
        const auto n = br.eigenvalues.size();
        const MatrixXcd m = br.right_inv * s_left * br.right;
        VectorXcd tr(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Map<const MatrixXcd> r(br.right.col(j).data(), d, d);
            tr(j) = (sigma_dag * r).trace();
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            if (d == 4) leak += std::abs(br.initial(k) * br.right(3 + 4 * 3, k));
            for (Eigen::Index j = 0; j < n; ++j) {
                const complex c = br.weight * br.initial(k) * m(j, k) * tr(j);
                raw.push_back({c, br.eigenvalues(k), br.eigenvalues(j)});
            }
        }
    }
    if (leak > 1e-12) {
        throw ConstructionError("cavity truncation violated: |X,1> population bound " + std::to_string(leak));
    }

    double cmax = 0.0;
    for (const auto& t : raw) cmax = std::max(cmax, std::abs(t.c));
    std::vector<CorrelationTerm> kept;
    for (const auto& t : raw) {
        if (std::abs(t.c) <= 1e-13 * cmax) continue;
        if (!(t.mu.real() < 0.0) || !(t.lambda.real() < 0.0)) {
            throw ConstructionError("dipole correlation has a non-decaying term (divergent transform)");
        }
        kept.push_back(t);
    }
    return DipoleCorrelation(std::move(kept), decomp.confluent);
}

AdiabaticRates adiabatic_rates(const QDParams& qd, const SourceArchitecture& arch, const PolaronRates* rates,
                               double franck_condon, CavityRateConvention convention) {
    AdiabaticRates out;
    const double gamma = units::from_ueV(qd.gamma_pd_ueV);
    if (const auto* c = std::get_if<ResonantCavity>(&arch)) {
        const double g = units::from_ueV(c->g_ueV);
        const double g_eff = convention == CavityRateConvention::renormalised ? g * franck_condon : g;
        out.Gamma_cav = 4.0 * g_eff * g_eff / units::from_ueV(c->kappa_c_ueV);
        out.Gamma_tot = units::from_ueV(c->Gamma_O_ueV) + out.Gamma_cav;
        if (!rates) throw std::invalid_argument("adiabatic_rates: cavity needs polaron rates");
        out.gamma_tot = gamma + rates->gamma_ph;
        return out;
    }
    std::visit([&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (!std::is_same_v<T, ResonantCavity>)
            out.Gamma_tot = units::from_ueV(a.Gamma_D_ueV) + units::from_ueV(a.Gamma_O_ueV);
    }, arch);
    out.gamma_tot = gamma;
    return out;
}

} // namespace qdsps
