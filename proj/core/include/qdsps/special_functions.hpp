// special_functions.hpp — Exponential integrals used for algebraic correlation tails.

#pragma once

#include <complex>

namespace qdsps::special {

// E1(z) = \int_1^inf e^{-z t} / t dt for Re z >= 0, z != 0.
std::complex<double> expint_e1(std::complex<double> z);

// \int_a^inf exp(-s t) / t^2 dt for a > 0, Re s >= 0.
std::complex<double> inverse_square_laplace_tail(std::complex<double> s, double a);

// \int_a^inf exp(-i w t) / t^2 dt for a > 0 (any real w).
std::complex<double> inverse_square_tail_transform(double omega, double a);

} // namespace qdsps::special
