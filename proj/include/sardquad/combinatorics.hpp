#pragma once

#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace sardquad {

/// Supported exact-arithmetic range: orders up to m = 10 need Bernoulli
/// numbers through B_18 and Euler-Frobenius polynomials through degree 16.
inline constexpr unsigned max_bernoulli_index = 18;
inline constexpr unsigned max_euler_frobenius_degree = 16;

inline bigint factorial_int(unsigned n) {
    bigint r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline bigint binomial_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    bigint r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

/// Bernoulli number B_n in the convention with B_1 = -1/2, i.e. the one under
/// which sum_{g=0}^{b-1} g^k = sum_j k! B_{k+1-j} / (j! (k+1-j)!) b^j holds.
/// Exact rational arithmetic; n beyond the supported range is refused.
inline rational bernoulli(unsigned n) {
    if (n > max_bernoulli_index)
        throw capacity_error("bernoulli: index " + std::to_string(n) + " exceeds supported range " +
                             std::to_string(max_bernoulli_index));
    static const std::vector<rational> table = [] {
        std::vector<rational> b;
        b.emplace_back(1);
        for (unsigned i = 1; i <= max_bernoulli_index; ++i) {
            // sum_{k=0}^{i} C(i+1,k) B_k = 0
            rational acc = 0;
            for (unsigned k = 0; k < i; ++k) acc += rational(binomial_int(i + 1, k)) * b[k];
            b.push_back(-acc / rational(i + 1));
        }
        return b;
    }();
    return table[n];
}

/// Forward difference of powers at zero, Delta^i 0^k.
inline bigint forward_diff_zero(unsigned i, unsigned k) {
    if (i == 0) return k == 0 ? 1 : 0;
    if (i > k) return 0;
    bigint acc = 0;
    for (unsigned l = 1; l <= i; ++l) {
        bigint term = binomial_int(i, l) * pow(bigint(l), k);
        if ((i - l) % 2 != 0)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

/// Euler-Frobenius polynomial E_{2k} of the given even degree, with the
/// classical coefficients e_s = sum_j (-1)^j C(2k+2, j) (s+1-j)^{2k+1}.
/// Coefficients are positive integers and the vector is palindromic.
inline polynomial<bigint> euler_frobenius(unsigned degree) {
    if (degree % 2 != 0)
        throw invalid_argument_error("euler_frobenius: degree must be even, got " + std::to_string(degree));
    if (degree > max_euler_frobenius_degree)
        throw capacity_error("euler_frobenius: degree " + std::to_string(degree) +
                             " exceeds supported range " + std::to_string(max_euler_frobenius_degree));
    if (degree == 0) return polynomial<bigint>{bigint(1)};
    const unsigned k = degree / 2;
    std::vector<bigint> e(degree + 1);
    for (unsigned s = 0; s <= degree; ++s) {
        bigint acc = 0;
        for (unsigned j = 0; j <= s; ++j) {
            bigint term = binomial_int(2 * k + 2, j) * pow(bigint(s + 1 - j), 2 * k + 1);
            if (j % 2 != 0)
                acc -= term;
            else
                acc += term;
        }
        e[s] = acc;
    }
    return polynomial<bigint>(std::move(e));
}

}  // namespace sardquad
