#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <limits>

namespace sardquad {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// Default high-precision scalar for the production pipeline. Fifty decimal
/// digits absorb the worst cancellation on the supported (m, N) range while
/// leaving a wide correctness margin.
using mp_real = boost::multiprecision::cpp_bin_float_50;
using mp_complex = boost::multiprecision::cpp_complex_50;

template <typename Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    using complex_type = std::complex<double>;
    static double from_rational(const rational& q) { return q.convert_to<double>(); }
    static double to_double(double x) { return x; }
};

template <>
struct scalar_traits<long double> {
    using complex_type = std::complex<long double>;
    static long double from_rational(const rational& q) { return q.convert_to<long double>(); }
    static double to_double(long double x) { return static_cast<double>(x); }
};

template <>
struct scalar_traits<mp_real> {
    using complex_type = mp_complex;
    static mp_real from_rational(const rational& q) { return q.convert_to<mp_real>(); }
    static double to_double(const mp_real& x) { return x.convert_to<double>(); }
};

template <typename Real>
using complex_t = typename scalar_traits<Real>::complex_type;

template <typename Real>
Real from_rational(const rational& q) {
    return scalar_traits<Real>::from_rational(q);
}

template <typename Real>
double to_double(const Real& x) {
    return scalar_traits<Real>::to_double(x);
}

template <typename Real>
Real from_bigint(const bigint& n) {
    return from_rational<Real>(rational(n));
}

template <typename Real>
Real real_epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

/// Integer power by repeated squaring; keeps |z|^n stable for n up to a few
/// hundred without drift from incremental products.
template <typename Scalar>
Scalar pow_int(Scalar base, unsigned long exponent) {
    Scalar result(1);
    while (exponent != 0) {
        if (exponent & 1UL) result *= base;
        base *= base;
        exponent >>= 1UL;
    }
    return result;
}

/// Neumaier-compensated accumulator; with multiprecision scalars the
/// compensation is effectively free insurance, with double it matters.
template <typename Real>
class compensated_sum {
public:
    void add(const Real& x) {
        using std::abs;
        const Real t = sum_ + x;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    Real value() const { return sum_ + comp_; }

private:
    Real sum_{0};
    Real comp_{0};
};

}  // namespace sardquad
