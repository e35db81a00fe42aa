#pragma once

#include <stdexcept>
#include <string>

namespace wged {

/// Thrown when an adaptive quadrature or series summation exhausts its
/// budget before reaching the requested tolerance. Carries the best
/// estimate obtained so far and the associated error bound.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// A computed quantity violated a hard mathematical bound (e.g. a
/// reliability outside [0,1] by more than round-off). Raised instead of
/// clamping so that quadrature failures cannot pass silently.
class NumericalIntegrityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed external input (scheme strings, data files, configs).
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wged
