// sweep.hpp — Deterministic parallel parameter sweeps.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "qdsps/figures_of_merit.hpp"

namespace qdsps {

unsigned default_thread_count();

// Evaluates f(0) .. f(n-1) on `threads` workers; results come back in index
// order regardless of scheduling. The first exception (by index) is rethrown.
template <class F>
auto parallel_map(std::size_t n, unsigned threads, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// n >= 2 points from lo to hi inclusive, geometric unless `linear`.
std::vector<double> sweep_grid(double lo, double hi, std::size_t n, bool linear = false);

// Copy of `arch` with its filter or cavity width set to kappa_ueV (bare
// waveguides are returned unchanged).
SourceArchitecture with_kappa(const SourceArchitecture& arch, double kappa_ueV);

struct SweepRow {
    double kappa_ueV = 0.0;
    MeritReport report;
    std::string error;  // empty on success
};

// One row per kappa. Per-point failures are recorded, not thrown.
std::vector<SweepRow> run_sweep(const QDParams& qd, const SourceArchitecture& arch, const PhononEnvironment& env,
                                const std::vector<double>& kappas_ueV, unsigned threads,
                                const MeritOptions& options = {});

// Columns kappa_ueV,Q_factor,I_full,I_analytic,eta_full,eta_analytic,B,F,
// flag_strong_coupling,flag_adiabatic,I_error,arch,error. Q uses omega_c = 1.4 eV.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row, double omega_c_meV = 1400.0);

} // namespace qdsps
