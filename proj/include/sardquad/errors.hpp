#pragma once

#include <stdexcept>
#include <string>

namespace sardquad {

/// Bad arguments or precondition violations (maps to CLI exit code 1).
class invalid_argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Any failure of the numerical machinery (maps to CLI exit code 2).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact-arithmetic request outside the supported range.
class capacity_error : public invalid_argument_error {
public:
    using invalid_argument_error::invalid_argument_error;
};

/// A structural assumption failed (root count, degree collapse, repeated root).
class structural_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// A root is too close to the unit circle to classify as inside/outside.
class classification_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// A computed quantity violates its accuracy contract (residuals, imaginary
/// parts, sign constraints).
class precision_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Linear system singular or estimated condition number beyond the guard.
class conditioning_error : public numerical_error {
public:
    conditioning_error(const std::string& what, double condition_estimate)
        : numerical_error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Convolution input window too small; carries the minimal usable half-width.
class window_error : public invalid_argument_error {
public:
    window_error(const std::string& what, long required_half_width)
        : invalid_argument_error(what), required_half_width_(required_half_width) {}

    long required_half_width() const noexcept { return required_half_width_; }

private:
    long required_half_width_;
};

}  // namespace sardquad
