// two_colour_integrals.cpp

#include "qdsps/two_colour_integrals.hpp"

#include <cmath>

namespace qdsps {

namespace {

std::vector<quad::Feature> delta_features(const TwoColourSpectrum& bare, const FilterResponse& filter) {
    std::vector<quad::Feature> out;
    for (const auto& [p, mu] : bare.correlation().population_terms()) {
        out.push_back({0.0, std::abs(mu.real())});
        out.push_back({std::abs(mu.imag()), std::abs(mu.real())});
    }
    const auto zpl = bare.zpl_features();
    for (const auto& a : zpl) {
        out.push_back({0.0, 2.0 * a.width});
        for (const auto& b : zpl) {
            const double d = a.centre - b.centre;
            if (d > 0.0) out.push_back({d, a.width + b.width});
        }
    }
    if (filter.kind != FilterKind::unity) out.push_back({0.0, filter.kappa});
    if (bare.has_sideband()) out.push_back({0.0, bare.sideband_scale()});
    return out;
}

} // namespace

DiagonalPowers integrate_diagonal(const DetectedSpectrum& spectrum, int order) {
    const auto rule = diagonal_rule(spectrum.bare(), spectrum.greens().filter, order);
    DiagonalPowers p;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        p.zpl += rule.weights[i] * spectrum.zpl_diagonal(rule.nodes[i]);
        p.sideband += rule.weights[i] * spectrum.sideband_diagonal(rule.nodes[i]);
    }
    return p;
}

BlockIntegrals two_colour_blocks(const DetectedSpectrum& spectrum, const TwoColourRuleOptions& options) {
    const auto& bare = spectrum.bare();
    const auto& greens = spectrum.greens();
    const auto& filter = greens.filter;
    const double p2 = greens.prefactor * greens.prefactor;

    quad::RuleOptions outer_opt;
    outer_opt.order = options.outer_order;
    const auto dfeat = delta_features(bare, filter);
    const auto outer = quad::graded_half_line_rule(0.0, dfeat, outer_opt);

    const auto zpl = bare.zpl_features();
    const bool sb = bare.has_sideband();
    const double xi = bare.sideband_scale();

    quad::RuleOptions inner_opt;
    inner_opt.order = options.inner_order;
    std::vector<quad::Feature> feats;

    BlockIntegrals out;
    for (std::size_t a = 0; a < outer.size(); ++a) {
        const double delta = outer.nodes[a];
        feats.clear();
        for (const auto& f : zpl) {
            feats.push_back(f);
            feats.push_back({f.centre - delta, f.width});
        }
        if (filter.kind != FilterKind::unity) {
            feats.push_back({filter.centre, 0.5 * filter.kappa});
            feats.push_back({filter.centre - delta, 0.5 * filter.kappa});
        }
        if (sb) {
            feats.push_back({0.0, 0.05 * xi});
            feats.push_back({-delta, 0.05 * xi});
            inner_opt.window_lo = -12.0 * xi - delta;
            inner_opt.window_hi = 12.0 * xi;
            inner_opt.max_panel = 0.25 * xi;
        }
        const auto inner = quad::graded_rule(feats, inner_opt);
        out.nodes += inner.size();

        double zz = 0.0, ss = 0.0, cr = 0.0;
        for (std::size_t b = 0; b < inner.size(); ++b) {
            const double w = inner.nodes[b];
            const double v = w + delta;
            const double g2 = p2 * filter.transmission(w) * filter.transmission(v);
            if (g2 == 0.0) continue;
            const auto h1 = bare.half(w, v);
            const auto h2 = bare.half(v, w);
            const complex z = h1.zpl + std::conj(h2.zpl);
            const complex s = h1.sideband + std::conj(h2.sideband);
            const double wt = inner.weights[b] * g2;
            zz += wt * std::norm(z);
            ss += wt * std::norm(s);
            cr += wt * 2.0 * (std::conj(z) * s).real();
        }
        out.zz += outer.weights[a] * zz;
        out.ss += outer.weights[a] * ss;
        out.cross += outer.weights[a] * cr;
    }
    out.zz *= 2.0;
    out.ss *= 2.0;
    out.cross *= 2.0;
    return out;
}

} // namespace qdsps
