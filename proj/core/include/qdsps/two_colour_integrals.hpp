// two_colour_integrals.hpp — Quadrature of diagonal and two-colour spectra.
//
// The double integral \iint |S_D(w, v)|^2 dw dv is taken in (w, delta = v - w)
// coordinates over delta >= 0 only (Hermitian symmetry makes the two halves
// equal), with graded rules placed around every pole of the closed-form
// spectrum and a uniform window covering the phonon sideband.

#pragma once

#include "qdsps/spectra.hpp"

namespace qdsps {

struct DiagonalPowers {
    double zpl = 0.0;
    double sideband = 0.0;
    double total() const { return zpl + sideband; }
};

// \int S_D(w, w) dw split into ZPL and sideband parts.
DiagonalPowers integrate_diagonal(const DetectedSpectrum& spectrum, int order = 20);

struct BlockIntegrals {
    double zz = 0.0;     // \iint |S_ZPL|^2
    double ss = 0.0;     // \iint |S_SB|^2
    double cross = 0.0;  // \iint 2 Re[S_ZPL^* S_SB]
    double total() const { return zz + ss + cross; }
    std::size_t nodes = 0;
};

struct TwoColourRuleOptions {
    int outer_order = 15;
    int inner_order = 15;
};

BlockIntegrals two_colour_blocks(const DetectedSpectrum& spectrum, const TwoColourRuleOptions& options = {});

} // namespace qdsps
