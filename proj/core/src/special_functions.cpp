// special_functions.cpp

#include "qdsps/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdsps::special {

using complex = std::complex<double>;

complex expint_e1(complex z) {
    constexpr double euler_gamma = 0.57721566490153286061;
    constexpr double eps = 1e-16;
    if (z == complex{}) throw std::domain_error("expint_e1: pole at z = 0");
    if (z.real() < 0.0) throw std::domain_error("expint_e1: requires Re z >= 0");

    if (std::abs(z) <= 2.0) {
        // Power series.
        complex sum{};
        complex term{1.0, 0.0};
        for (int k = 1; k < 200; ++k) {
            term *= -z / double(k);
            const complex add = term / double(k);
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -euler_gamma - std::log(z) - sum;
    }

    // Modified Lentz continued fraction.
    const double tiny = std::numeric_limits<double>::min() / eps;
    complex b = z + 1.0;
    complex c = 1.0 / tiny;
    complex d = 1.0 / b;
    complex h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const complex del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h * std::exp(-z);
}

complex inverse_square_laplace_tail(complex s, double a) {
    if (!(a > 0.0)) throw std::domain_error("inverse_square_laplace_tail: a must be > 0");
    if (s == complex{}) return {1.0 / a, 0.0};
    const complex z = s * a;
    // E2(z) = e^{-z} - z E1(z)
    return (std::exp(-z) - z * expint_e1(z)) / a;
}

complex inverse_square_tail_transform(double omega, double a) {
    return inverse_square_laplace_tail(complex{0.0, omega}, a);
}

} // namespace qdsps::special
