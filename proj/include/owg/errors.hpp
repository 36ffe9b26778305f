#pragma once

#include <stdexcept>
#include <string>

namespace owg {

// A type invariant on the inputs was violated. `field` names the offending
// parameter so callers (and the CLI) can report it precisely.
class invalid_parameter : public std::invalid_argument {
public:
    invalid_parameter(std::string field, std::string reason)
        : std::invalid_argument(field + ": " + reason),
          field(std::move(field)), reason(std::move(reason)) {}
    std::string field;
    std::string reason;
};

// An exponent exceeds the representable range even after rescaling
// (e.g. 2*z1*T > 700), so the constant cannot be evaluated in double.
class overflow_error : public std::range_error {
public:
    explicit overflow_error(std::string field)
        : std::range_error("overflow evaluating " + field), field(std::move(field)) {}
    std::string field;
};

class grid_too_coarse : public std::invalid_argument {
public:
    explicit grid_too_coarse(int m)
        : std::invalid_argument("grid has " + std::to_string(m) + " steps, need at least 8") {}
};

// The per-player quadratic form failed to factor. Should be impossible for
// the exponential kernel; signals a kernel assembly bug.
class singular_system : public std::runtime_error {
public:
    singular_system() : std::runtime_error("discrete best-response system is not positive definite") {}
};

class not_converged : public std::runtime_error {
public:
    not_converged(int iterations, double residual)
        : std::runtime_error("best-response iteration did not converge after "
                             + std::to_string(iterations) + " iterations (residual "
                             + std::to_string(residual) + ")"),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

} // namespace owg
