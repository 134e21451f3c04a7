// quadrature.hpp — One-dimensional integration helpers.
//
// Three tools live here:
//  * an adaptive Gauss–Kronrod (G10/K21) integrator for complex integrands with
//    an absolute tolerance, used for the phonon correlation integrals;
//  * a fixed-rule builder that turns a list of spectral features (centre,
//    width) into a graded composite Gauss–Legendre rule over the real line,
//    used for every frequency-domain integral;
//  * Gregory end-corrected trapezoid weights for uniformly sampled data.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qdsps::quad {

using complex = std::complex<double>;

struct AdaptiveResult {
    complex value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_intervals = 20000;
    // Initial uniform split of [a, b]; useful for oscillatory integrands.
    std::size_t initial_panels = 1;
};

// Globally adaptive bisection on the interval with the largest error estimate.
AdaptiveResult adaptive_gauss_kronrod(const std::function<complex(double)>& f, double a,
                                      double b, const AdaptiveOptions& options = {});

// Symmetric Gauss–Legendre nodes/weights on [-1, 1]. Supported orders: 10, 15,
// 20, 25, 30; others throw std::invalid_argument.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// A spectral feature: something peaked at `centre` with half-width `width`.
struct Feature {
    double centre = 0.0;
    double width = 1.0;
};

struct RuleOptions {
    int order = 15;             // Gauss–Legendre points per panel
    double grading = 2.0;       // geometric growth of panel size away from a feature
    double finest_fraction = 0.125;  // first panel edge at width * finest_fraction
    // Ladders extend to |x - centre| <= reach. 0 picks 2 * max_panel when a
    // window is set and 200 * widest feature otherwise.
    double reach = 0.0;
    // Optional broadband window [lo, hi] subdivided into panels of at most `max_panel`.
    double window_lo = 0.0;
    double window_hi = 0.0;
    double max_panel = 0.0;
};

// Nodes and weights for integrating over the whole real line (or a half line).
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const -> decltype(f(0.0)) {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

// Composite rule on (-inf, inf) graded around every feature. The two
// unbounded ends use the map x = c + s / u, which integrates 1/x^2 tails exactly.
Rule graded_rule(std::span<const Feature> features, const RuleOptions& options);

// Same construction restricted to [lower, inf).
Rule graded_half_line_rule(double lower, std::span<const Feature> features,
                           const RuleOptions& options);

// Gregory (fourth order) end-corrected trapezoid weights for n uniformly spaced
// samples with spacing h. Requires n >= 8.
std::vector<double> gregory_weights(std::size_t n, double h);

// Attenuation factors for Fourier integrals of cubic-interpolated samples:
//   \int_0^{L} g(t) e^{i w t} dt ~ h [W S + sum_j a_j g_j + e^{i w L} sum_j conj(a_j) g_{M-j}],
// S the plain sum over all M + 1 samples, theta = w h. Accurate to O(h^4)
// whatever theta is, which Gregory weights are not once theta ~ 0.1.
struct CubicFourierWeights {
    double W = 1.0;
    std::array<complex, 4> a{};
};
CubicFourierWeights cubic_fourier_weights(double theta);

} // namespace qdsps::quad
