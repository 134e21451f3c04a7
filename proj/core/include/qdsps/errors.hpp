// errors.hpp — Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace qdsps {

// A quadrature or grid refinement did not reach its tolerance.
class NumericalToleranceError : public std::runtime_error {
public:
    NumericalToleranceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Numerical set-up (grids, truncations) cannot support the requested evaluation.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A generator came out non-dissipative or otherwise unphysical.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qdsps
