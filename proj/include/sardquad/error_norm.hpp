#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "scalar.hpp"
#include "solver.hpp"

namespace sardquad {

template <typename Real>
struct error_report {
    Real norm_sq{0};
    Real norm{0};
    int m = 1;
    int N = 1;
    std::optional<Real> bound_factor;  // last seminorm * norm computed from this report
};

namespace detail {

template <typename Real>
bool is_uniform_grid(const quadrature_rule<Real>& rule) {
    for (int b = 0; b <= rule.N; ++b)
        if (rule.nodes[b] != rule.h * Real(b)) return false;
    return true;
}

}  // namespace detail

/// Squared norm of the error functional,
///   ||l||^2 = (-1)^m [ sum sum C_b C_g G(x_b - x_g)
///                      - 2 sum C_b f_m(x_b) + const_m ],
///   const_m = (e^2 - 2e - 1)/(2e) - sum_{k=1}^{m-1} 1/(2k+1)!.
/// The double sum cancels almost completely, so the summation is compensated
/// and the practical cap is N <= 1e4; on a uniform grid the kernel values are
/// tabulated by node distance.
template <typename Real>
error_report<Real> norm_squared(const quadrature_rule<Real>& rule) {
    using std::exp;
    using std::sqrt;
    const space_order order(rule.m);
    const int N = rule.N;
    const std::vector<Real>& c = rule.coeffs;

    compensated_sum<Real> acc;
    if (detail::is_uniform_grid(rule)) {
        std::vector<Real> gtab(N + 1);
        for (int j = 0; j <= N; ++j) gtab[j] = green_kernel(Real(rule.h * Real(j)), order);
        for (int b = 0; b <= N; ++b)
            for (int g = 0; g <= N; ++g) acc.add(c[b] * c[g] * gtab[b >= g ? b - g : g - b]);
    } else {
        for (int b = 0; b <= N; ++b)
            for (int g = 0; g <= N; ++g) acc.add(c[b] * c[g] * green_kernel(Real(rule.nodes[b] - rule.nodes[g]), order));
    }
    for (int b = 0; b <= N; ++b)
        acc.add(Real(-2) * c[b] * rhs_moment(rule.nodes[b], order));

    const Real e1 = exp(Real(1));
    Real constant = (e1 * e1 - Real(2) * e1 - Real(1)) / (Real(2) * e1);
    for (int k = 1; k < rule.m; ++k) constant -= from_rational<Real>(rational(1, factorial_int(2 * k + 1)));
    acc.add(constant);

    Real value = acc.value();
    if (rule.m % 2 != 0) value = -value;
    if (!(value > Real(0)))
        throw precision_error("norm_squared: nonpositive value; coefficients or kernel are inconsistent");

    error_report<Real> report;
    report.norm_sq = value;
    report.norm = sqrt(value);
    report.m = rule.m;
    report.N = N;
    return report;
}

/// Cauchy-Schwarz bound |R(phi)| <= ||phi|| * ||l|| for a caller-supplied
/// seminorm of the integrand.
template <typename Real>
Real error_bound(const error_report<Real>& report, const Real& seminorm) {
    if (seminorm < Real(0)) throw invalid_argument_error("error_bound: seminorm must be nonnegative");
    return seminorm * report.norm;
}

}  // namespace sardquad
