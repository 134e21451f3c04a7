// quadrature.cpp — Adaptive Gauss–Kronrod driver and graded composite rules.

#include "qdsps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qdsps::quad {

namespace {

struct Interval {
    double a;
    double b;
    complex value;
    double error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

Interval kronrod21(const std::function<complex(double)>& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    complex k = f(mid) * wk[0];
    complex g{};
    for (std::size_t i = 1; i < x.size(); ++i) {
        const complex pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        k += pair * wk[i];
        // Odd Kronrod abscissae are the ten-point Gauss nodes.
        if (i % 2 == 1) g += pair * wg[i / 2];
    }
    k *= half;
    g *= half;
    return {a, b, k, std::abs(k - g)};
}

GaussLegendre make_rule(const std::vector<double>& x, const std::vector<double>& w, bool odd) {
    GaussLegendre rule;
    for (std::size_t i = x.size(); i-- > 0;) {
        if (odd && i == 0) continue;
        rule.nodes.push_back(-x[i]);
        rule.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        rule.nodes.push_back(x[i]);
        rule.weights.push_back(w[i]);
    }
    return rule;
}

template <unsigned N>
GaussLegendre tabulated() {
    using g = boost::math::quadrature::gauss<double, N>;
    std::vector<double> x(g::abscissa().begin(), g::abscissa().end());
    std::vector<double> w(g::weights().begin(), g::weights().end());
    return make_rule(x, w, N % 2 == 1);
}

void append_panel(Rule& rule, double a, double b, const GaussLegendre& gl) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        rule.nodes.push_back(mid + half * gl.nodes[i]);
        rule.weights.push_back(half * gl.weights[i]);
    }
}

// x = edge + direction * scale * (1/u - 1), u in (0, 1].
void append_tail(Rule& rule, double edge, double scale, double direction, const GaussLegendre& gl) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = 0.5 * (gl.nodes[i] + 1.0);
        const double wu = 0.5 * gl.weights[i];
        rule.nodes.push_back(edge + direction * scale * (1.0 / u - 1.0));
        rule.weights.push_back(wu * scale / (u * u));
    }
}

std::vector<double> breakpoints(std::span<const Feature> features, const RuleOptions& opt) {
    const bool windowed = opt.max_panel > 0.0 && opt.window_hi > opt.window_lo;

    // Features sharing a centre need only the ladder of the narrowest one.
    std::vector<Feature> sorted;
    for (const auto& f : features)
        if (std::abs(f.width) > 0.0 && std::isfinite(f.centre)) sorted.push_back({f.centre, std::abs(f.width)});
    std::sort(sorted.begin(), sorted.end(), [](const Feature& a, const Feature& b) { return a.centre < b.centre; });
    std::vector<Feature> merged;
    double max_width = 0.0;
    for (const auto& f : sorted) {
        max_width = std::max(max_width, f.width);
        if (!merged.empty()) {
            auto& m = merged.back();
            if (f.centre - m.centre <= opt.finest_fraction * std::min(m.width, f.width)) {
                m.width = std::min(m.width, f.width);
                continue;
            }
        }
        merged.push_back(f);
    }

    double reach = opt.reach;
    if (reach <= 0.0) reach = windowed ? 2.0 * opt.max_panel : 200.0 * max_width;

    // Between two features each ladder runs to the midpoint, so wide gaps are
    // still graded; outward-facing ladders stop at `reach`.
    std::vector<double> pts;
    for (std::size_t k = 0; k < merged.size(); ++k) {
        const auto& f = merged[k];
        const double floor = std::max(reach, 4.0 * f.width);
        const double left = k > 0 ? std::max(floor, 0.5 * (f.centre - merged[k - 1].centre)) : floor;
        const double right = k + 1 < merged.size() ? std::max(floor, 0.5 * (merged[k + 1].centre - f.centre)) : floor;
        pts.push_back(f.centre);
        for (double r = f.width * opt.finest_fraction; r <= std::max(left, right); r *= opt.grading) {
            if (r <= left) pts.push_back(f.centre - r);
            if (r <= right) pts.push_back(f.centre + r);
        }
    }
    if (windowed) {
        const auto n = static_cast<std::size_t>(std::ceil((opt.window_hi - opt.window_lo) / opt.max_panel));
        for (std::size_t i = 0; i <= n; ++i)
            pts.push_back(opt.window_lo + (opt.window_hi - opt.window_lo) * double(i) / double(n));
    }
    std::sort(pts.begin(), pts.end());

    std::vector<double> unique;
    unique.reserve(pts.size());
    for (double p : pts) {
        if (!unique.empty()) {
            const double scale = std::max(std::abs(p), max_width) * 1e-12;
            if (p - unique.back() <= scale) continue;
        }
        unique.push_back(p);
    }
    return unique;
}

} // namespace

AdaptiveResult adaptive_gauss_kronrod(const std::function<complex(double)>& f, double a, double b,
                                      const AdaptiveOptions& options) {
    AdaptiveResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::priority_queue<Interval> heap;
    const std::size_t n0 = std::max<std::size_t>(1, options.initial_panels);
    for (std::size_t i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * double(i) / double(n0);
        const double hi = a + (b - a) * double(i + 1) / double(n0);
        heap.push(kronrod21(f, lo, hi));
    }
    result.evaluations = 21 * n0;

    auto totals = [&heap]() {
        // priority_queue has no iteration; copy is fine at these sizes.
        auto copy = heap;
        complex v{};
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::pair{v, e};
    };

    complex value{};
    double error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }

    while (heap.size() < options.max_intervals) {
        const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
        if (error <= target) break;
        const Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        const Interval left = kronrod21(f, worst.a, mid);
        const Interval right = kronrod21(f, mid, worst.b);
        result.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to avoid drift from the running updates.
    auto [v, e] = totals();
    result.value = v;
    result.error_estimate = e;
    result.converged = e <= std::max(options.abs_tol, options.rel_tol * std::abs(v));
    return result;
}

const GaussLegendre& gauss_legendre(int order) {
    static const GaussLegendre g10 = tabulated<10>();
    static const GaussLegendre g15 = tabulated<15>();
    static const GaussLegendre g20 = tabulated<20>();
    static const GaussLegendre g25 = tabulated<25>();
    static const GaussLegendre g30 = tabulated<30>();
    switch (order) {
    case 10: return g10;
    case 15: return g15;
    case 20: return g20;
    case 25: return g25;
    case 30: return g30;
    default: throw std::invalid_argument("gauss_legendre: unsupported order");
    }
}

Rule graded_rule(std::span<const Feature> features, const RuleOptions& options) {
    if (features.empty()) throw std::invalid_argument("graded_rule: need at least one feature");
    const auto& gl = gauss_legendre(options.order);
    const auto pts = breakpoints(features, options);

    double cmin = std::numeric_limits<double>::infinity();
    double cmax = -cmin;
    double wmax = 0.0;
    for (const auto& f : features) {
        cmin = std::min(cmin, f.centre);
        cmax = std::max(cmax, f.centre);
        wmax = std::max(wmax, std::abs(f.width));
    }

    Rule rule;
    rule.nodes.reserve((pts.size() + 1) * gl.nodes.size());
    rule.weights.reserve(rule.nodes.capacity());
    append_tail(rule, pts.front(), std::max(cmin - pts.front(), wmax), -1.0, gl);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) append_panel(rule, pts[i], pts[i + 1], gl);
    append_tail(rule, pts.back(), std::max(pts.back() - cmax, wmax), +1.0, gl);
    return rule;
}

Rule graded_half_line_rule(double lower, std::span<const Feature> features, const RuleOptions& options) {
    const auto& gl = gauss_legendre(options.order);
    std::vector<Feature> all(features.begin(), features.end());
    double wmin = std::numeric_limits<double>::infinity();
    for (const auto& f : all) wmin = std::min(wmin, std::abs(f.width));
    if (all.empty()) throw std::invalid_argument("graded_half_line_rule: need a feature");

    auto pts = breakpoints(all, options);
    std::vector<double> kept{lower};
    for (double p : pts)
        if (p > lower + 1e-12 * std::max(std::abs(lower), wmin)) kept.push_back(p);

    double cmax = lower;
    double wmax = 0.0;
    for (const auto& f : all) {
        cmax = std::max(cmax, f.centre);
        wmax = std::max(wmax, std::abs(f.width));
    }

    Rule rule;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) append_panel(rule, kept[i], kept[i + 1], gl);
    append_tail(rule, kept.back(), std::max(kept.back() - cmax, wmax), +1.0, gl);
    return rule;
}

std::vector<double> gregory_weights(std::size_t n, double h) {
    if (n < 8) throw std::invalid_argument("gregory_weights: need at least 8 samples");
    std::vector<double> w(n, h);
    constexpr double end[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    for (std::size_t i = 0; i < 4; ++i) {
        w[i] = h * end[i];
        w[n - 1 - i] = h * end[i];
    }
    return w;
}

CubicFourierWeights cubic_fourier_weights(double t) {
    CubicFourierWeights r;
    auto& a = r.a;
    if (std::abs(t) < 0.15) {
        // Series form; the closed form cancels catastrophically here.
        const double t2 = t * t, t4 = t2 * t2, t6 = t4 * t2;
        r.W = 1.0 - 11.0 / 720.0 * t4 + 23.0 / 15120.0 * t6;
        a[0] = {-2.0 / 3.0 + t2 / 45.0 + 103.0 / 15120.0 * t4 - 169.0 / 226800.0 * t6,
                t * (2.0 / 45.0 + 2.0 / 105.0 * t2 - 8.0 / 2835.0 * t4 + 86.0 / 467775.0 * t6)};
        a[1] = {7.0 / 24.0 - 7.0 / 180.0 * t2 + 5.0 / 3456.0 * t4 - 7.0 / 259200.0 * t6,
                t * (7.0 / 72.0 - t2 / 168.0 + 11.0 / 72576.0 * t4 - 13.0 / 5987520.0 * t6)};
        a[2] = {-1.0 / 6.0 + t2 / 45.0 - 5.0 / 6048.0 * t4 + t6 / 64800.0,
                t * (-7.0 / 90.0 + t2 / 210.0 - 11.0 / 90720.0 * t4 + 13.0 / 7484400.0 * t6)};
        a[3] = {1.0 / 24.0 - t2 / 180.0 + 5.0 / 24192.0 * t4 - t6 / 259200.0,
                t * (7.0 / 360.0 - t2 / 840.0 + 11.0 / 362880.0 * t4 - 13.0 / 29937600.0 * t6)};
        return r;
    }
    const double c = std::cos(t), s = std::sin(t), c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
    const double t2 = t * t, t4 = t2 * t2, q = 6.0 + t2;
    r.W = q / (3.0 * t4) * (3.0 - 4.0 * c + c2);
    a[0] = {((-42.0 + 5.0 * t2) + q * (8.0 * c - c2)) / (6.0 * t4), ((-12.0 * t + 6.0 * t2 * t) + q * s2) / (6.0 * t4)};
    a[1] = {(14.0 * (3.0 - t2) - 7.0 * q * c) / (6.0 * t4), (30.0 * t - 5.0 * q * s) / (6.0 * t4)};
    a[2] = {(-4.0 * (3.0 - t2) + 2.0 * q * c) / (3.0 * t4), (-12.0 * t + 2.0 * q * s) / (3.0 * t4)};
    a[3] = {(2.0 * (3.0 - t2) - q * c) / (6.0 * t4), (6.0 * t - q * s) / (6.0 * t4)};
    return r;
}

} // namespace qdsps::quad
