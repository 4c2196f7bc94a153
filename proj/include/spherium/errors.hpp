#pragma once

#include <stdexcept>
#include <string>

namespace spherium {

/// Argument outside the mathematical domain of an operation (d < 3, u > 2R, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or iteration did not converge within its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_term)
        : std::runtime_error(what), last_term_(last_term) {}

    double last_term() const noexcept { return last_term_; }

private:
    double last_term_;
};

/// The quantization condition for (d, n) has no admissible (real, positive) energy.
class EmptySpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Any other numerical breakdown (degenerate nodes, inconsistent node count).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace spherium
