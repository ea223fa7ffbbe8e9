#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "scalar.hpp"

namespace sardquad {

/// Order m >= 1 of the space W_2^(m,m-1)(0,1).
struct space_order {
    explicit space_order(int m) : value(m) {
        if (m < 1) throw invalid_argument_error("space_order: m must be >= 1, got " + std::to_string(m));
    }
    int value;
};

/// Fundamental solution of d^{2m}/dx^{2m} - d^{2m-2}/dx^{2m-2}:
///   G(x) = sign(x)/2 (sinh x - sum_{k=1}^{m-1} x^{2k-1}/(2k-1)!)
/// Even in x; the power sum is empty for m = 1.
template <typename Real>
Real green_kernel(const Real& x, space_order order) {
    using std::abs;
    using std::sinh;
    if (x == Real(0)) return Real(0);
    const Real ax = abs(x);
    const Real ax2 = ax * ax;
    Real sum(0);
    Real term = ax;  // x^{2k-1}/(2k-1)! starting at k = 1
    for (int k = 1; k < order.value; ++k) {
        sum += term;
        term *= ax2 / Real((2 * k) * (2 * k + 1));
    }
    return (sinh(ax) - sum) / Real(2);
}

namespace detail {

/// f_m by its closed form, valid for any real argument:
///   f_m(t) = sinh^2(t/2) + sinh^2((1-t)/2)
///            - sum_{k=1}^{m-1} (t^{2k} + (1-t)^{2k}) / (2 (2k)!)
/// The sinh^2 form is (e^t + e^{-t} + e^{1-t} + e^{t-1} - 4)/4 without the
/// small-t cancellation.
template <typename Real>
Real moment_formula(const Real& t, space_order order) {
    using std::sinh;
    const Real u = sinh(t / Real(2));
    const Real s = Real(1) - t;
    const Real v = sinh(s / Real(2));
    Real result = u * u + v * v;
    const Real t2 = t * t;
    const Real s2 = s * s;
    Real pt = t2, ps = s2;  // t^{2k}, (1-t)^{2k} starting at k = 1
    Real fac(2);            // (2k)!
    for (int k = 1; k < order.value; ++k) {
        result -= (pt + ps) / (Real(2) * fac);
        pt *= t2;
        ps *= s2;
        fac *= Real((2 * k + 1) * (2 * k + 2));
    }
    return result;
}

}  // namespace detail

/// Moment of the kernel over the unit interval, f_m(t) = int_0^1 G(x-t) dx,
/// evaluated in closed form. Arguments outside [0,1] are rejected.
template <typename Real>
Real rhs_moment(const Real& t, space_order order) {
    if (t < Real(0) || t > Real(1))
        throw invalid_argument_error("rhs_moment: t must lie in [0,1]");
    return detail::moment_formula(t, order);
}

/// Closed-form continuation of f_m to all real arguments; needed when the
/// moment function is convolved as a grid function over the whole line.
template <typename Real>
Real rhs_moment_extended(const Real& t, space_order order) {
    return detail::moment_formula(t, order);
}

}  // namespace sardquad
