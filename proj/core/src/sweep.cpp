// sweep.cpp

#include "qdsps/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qdsps {

unsigned default_thread_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

std::vector<double> sweep_grid(double lo, double hi, std::size_t n, bool linear) {
    if (n < 2) throw std::invalid_argument("sweep needs at least 2 points");
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("sweep range must satisfy 0 < lo < hi");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) / double(n - 1);
        out[i] = linear ? lo + t * (hi - lo) : lo * std::pow(hi / lo, t);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

SourceArchitecture with_kappa(const SourceArchitecture& arch, double kappa_ueV) {
    SourceArchitecture out = arch;
    if (auto* f = std::get_if<FilteredWaveguide>(&out)) f->kappa_f_ueV = kappa_ueV;
    if (auto* c = std::get_if<ResonantCavity>(&out)) c->kappa_c_ueV = kappa_ueV;
    return out;
}

std::vector<SweepRow> run_sweep(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                                const std::vector<double>& kappas_ueV, unsigned threads,
                                const MeritOptions& options) {
    auto point = [&](std::size_t i) {
        SweepRow row;
        row.kappa_ueV = kappas_ueV[i];
        row.report.architecture = std::string(architecture_name(arch));
        try {
            row.report = compute_merit(qd, with_kappa(arch, kappas_ueV[i]), env, options);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };
    if (std::holds_alternative<BareWaveguide>(arch) && !kappas_ueV.empty()) {
        // Nothing depends on kappa; evaluate once.
        const SweepRow first = point(0);
        std::vector<SweepRow> rows(kappas_ueV.size(), first);
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].kappa_ueV = kappas_ueV[i];
        return rows;
    }
    return parallel_map(kappas_ueV.size(), threads, point);
}

std::string sweep_csv_header() {
    return "kappa_ueV,Q_factor,I_full,I_analytic,eta_full,eta_analytic,B,F,"
           "flag_strong_coupling,flag_adiabatic,I_error,arch,error";
}

std::string sweep_csv_row(const SweepRow& row, double omega_c_meV) {
    std::string err = row.error;
    for (auto& c : err)
        if (c == ',' || c == '\n' || c == '"') c = ';';
    const auto& r = row.report;
    const double q = omega_c_meV * 1e3 / row.kappa_ueV;
    char buf[512];
    if (!row.error.empty()) {
        std::snprintf(buf, sizeof buf, "%.8e,%.8e,nan,nan,nan,nan,nan,nan,,,nan,%s,%s", row.kappa_ueV, q,
                      r.architecture.c_str(), err.c_str());
    } else {
        std::snprintf(buf, sizeof buf, "%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%d,%d,%.3e,%s,", row.kappa_ueV, q,
                      r.I, r.analytic_I, r.eta, r.analytic_eta, r.B, r.F, int(r.flags.strong_coupling),
                      int(r.flags.adiabatic), r.I_error, r.architecture.c_str());
    }
    return buf;
}

} // namespace qdsps
