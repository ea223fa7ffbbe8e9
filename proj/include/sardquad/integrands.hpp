#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace sardquad {

/// Built-in test integrands with exact integrals over [0,1] and closed-form
/// seminorms int_0^1 (phi^(m) + phi^(m-1))^2 dx per order m (derivations in
/// the project README).
template <typename Real>
struct builtin_integrand {
    std::string name;
    std::function<Real(const Real&)> eval;
    Real exact_integral{0};
    std::function<Real(int)> seminorm;  // seminorm for order m
};

namespace detail {

/// Seminorm of x^k in W_2^(m,m-1): zero for k <= m-2, (m-1)! for k = m-1,
/// otherwise sqrt(a^2/(2p+1) + a b/(p+1) + b^2/(2p+3)) with p = k-m,
/// a = k!/(k-m)!, b = k!/(k-m+1)!.
template <typename Real>
Real monomial_seminorm(int k, int m) {
    using std::sqrt;
    if (k <= m - 2) return Real(0);
    if (k == m - 1) return from_bigint<Real>(factorial_int(m - 1));
    const int p = k - m;
    const rational a(factorial_int(k), factorial_int(k - m));
    const rational b(factorial_int(k), factorial_int(k - m + 1));
    const rational sq = a * a / rational(2 * p + 1) + a * b / rational(p + 1) + b * b / rational(2 * p + 3);
    return sqrt(from_rational<Real>(sq));
}

}  // namespace detail

/// Look up a built-in integrand: exp_neg, sin, cos, exp, or poly:k.
template <typename Real>
builtin_integrand<Real> make_integrand(const std::string& name) {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    builtin_integrand<Real> fn;
    fn.name = name;
    const Real one(1);
    const Real s2 = sin(one) * sin(one);  // int_0^1 sin(2x) dx = sin^2(1)

    if (name == "exp_neg") {
        fn.eval = [](const Real& x) { return exp(-x); };
        fn.exact_integral = Real(1) - exp(Real(-1));
        fn.seminorm = [](int) { return Real(0); };
    } else if (name == "sin") {
        fn.eval = [](const Real& x) { return sin(x); };
        fn.exact_integral = Real(1) - cos(one);
        fn.seminorm = [s2](int m) { return sqrt(m % 2 != 0 ? Real(1) + s2 : Real(1) - s2); };
    } else if (name == "cos") {
        fn.eval = [](const Real& x) { return cos(x); };
        fn.exact_integral = sin(one);
        fn.seminorm = [s2](int m) { return sqrt(m % 2 != 0 ? Real(1) - s2 : Real(1) + s2); };
    } else if (name == "exp") {
        fn.eval = [](const Real& x) { return exp(x); };
        fn.exact_integral = exp(one) - Real(1);
        fn.seminorm = [](int) { return sqrt(Real(2) * (exp(Real(2)) - Real(1))); };
    } else if (name.rfind("poly:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(name.substr(5));
        } catch (const std::exception&) {
            throw invalid_argument_error("make_integrand: bad monomial degree in '" + name + "'");
        }
        if (k < 0) throw invalid_argument_error("make_integrand: monomial degree must be >= 0");
        fn.eval = [k](const Real& x) { return pow_int(x, static_cast<unsigned long>(k)); };
        fn.exact_integral = Real(1) / Real(k + 1);
        fn.seminorm = [k](int m) { return detail::monomial_seminorm<Real>(k, m); };
    } else {
        throw invalid_argument_error("make_integrand: unknown integrand '" + name +
                                     "' (expected exp_neg, sin, cos, exp, poly:k)");
    }
    return fn;
}

}  // namespace sardquad
