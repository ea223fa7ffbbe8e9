#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace sardquad {

namespace detail {

/// Exact lambda-coefficients of the characteristic polynomial in the basis
/// {1, e^h, e^{2h}}: each entry is a triple of rational polynomials in h.
///
/// P(l) = (1 - e^{2h})(1-l)^{2m-2}
///        - 2 (l (e^{2h}+1) - e^h (l^2+1)) B(l),
/// B(l) = sum_{j=1}^{m-1} h^{2j-1}/(2j-1)! (1-l)^{2m-2-2j} E_{2j-2}(l).
struct charpoly_symbolic {
    // index: lambda power s; parts[0..2]: coefficient of e^{0h}, e^{h}, e^{2h}
    std::vector<std::array<polynomial<rational>, 3>> coeffs;
};

inline charpoly_symbolic charpoly_exact(space_order order) {
    const int m = order.value;
    const unsigned deg = 2 * m - 2;

    // b[s] = rational polynomial in h, the lambda^s coefficient of B.
    std::vector<polynomial<rational>> b(deg + 1);
    for (int j = 1; j <= m - 1; ++j) {
        // (1-l)^{2m-2-2j} E_{2j-2}(l) with rational coefficients
        const polynomial<bigint> ef = euler_frobenius(2 * j - 2);
        std::vector<rational> ef_q(ef.coeffs().size());
        for (std::size_t i = 0; i < ef_q.size(); ++i) ef_q[i] = rational(ef.coeffs()[i]);
        const polynomial<rational> shape =
            polynomial<rational>::one_minus_x_pow(deg - 2 * j) * polynomial<rational>(std::move(ef_q));
        // h^{2j-1}/(2j-1)! as a polynomial in h
        std::vector<rational> hp(2 * j, rational(0));
        hp.back() = rational(1, factorial_int(2 * j - 1));
        const polynomial<rational> hfactor(std::move(hp));
        for (std::size_t s = 0; s < shape.coeffs().size(); ++s)
            b[s] = b[s] + hfactor * shape.coeffs()[s];
    }

    auto b_at = [&](long s) -> polynomial<rational> {
        if (s < 0 || s > static_cast<long>(deg)) return polynomial<rational>();
        return b[static_cast<std::size_t>(s)];
    };

    charpoly_symbolic sym;
    sym.coeffs.resize(deg + 1);
    for (long s = 0; s <= static_cast<long>(deg); ++s) {
        const rational binom = rational(binomial_int(deg, static_cast<unsigned>(s))) * (s % 2 != 0 ? -1 : 1);
        const polynomial<rational> binom_p{binom};
        const polynomial<rational> two_bm1 = b_at(s - 1) * rational(2);
        const polynomial<rational> ring = (b_at(s) + b_at(s - 2)) * rational(2);
        sym.coeffs[s][0] = binom_p - two_bm1;   // e^{0h}
        sym.coeffs[s][1] = ring;                // e^{h}
        sym.coeffs[s][2] = (binom_p * rational(-1)) - two_bm1;  // e^{2h}
    }
    return sym;
}

}  // namespace detail

/// Characteristic polynomial P_{2m-2}(lambda) whose stable roots parameterize
/// the boundary layers of the optimal coefficients. Assembled exactly over
/// rationals in the basis {1, e^h, e^{2h}}; the numeric substitution groups
/// each coefficient as u + v t + w t^2 with t = expm1(h), so the O(1)
/// cancellations happen in exact arithmetic and the remaining small-h
/// cancellation is carried by the scalar's precision.
template <typename Real>
polynomial<Real> char_poly(space_order order, const Real& h) {
    using std::abs;
    using std::expm1;
    const int m = order.value;
    if (m < 2)
        throw invalid_argument_error("char_poly: requires m >= 2 (m = 1 has a closed form without roots)");
    if (!(h > Real(0))) throw invalid_argument_error("char_poly: h must be positive");

    const detail::charpoly_symbolic sym = detail::charpoly_exact(order);
    const Real t = expm1(h);

    std::vector<Real> coeffs(sym.coeffs.size());
    for (std::size_t s = 0; s < sym.coeffs.size(); ++s) {
        const auto& parts = sym.coeffs[s];
        // alpha + beta e^h + gamma e^{2h} == u + v t + w t^2 with
        // u = alpha+beta+gamma, v = beta+2 gamma, w = gamma, all exact.
        const polynomial<rational> u = parts[0] + parts[1] + parts[2];
        const polynomial<rational> v = parts[1] + parts[2] * rational(2);
        const polynomial<rational>& w = parts[2];
        auto eval_h = [&](const polynomial<rational>& p) -> Real {
            Real acc(0);
            for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * h + from_rational<Real>(p.coeffs()[i]);
            return acc;
        };
        coeffs[s] = eval_h(u) + t * (eval_h(v) + t * eval_h(w));
    }

    Real maxc(0);
    for (const Real& c : coeffs) maxc = std::max(maxc, Real(abs(c)));
    if (!(abs(coeffs.back()) > Real(16) * real_epsilon<Real>() * maxc))
        throw structural_error("char_poly: leading coefficient collapsed at this precision (m = " +
                               std::to_string(m) + "); a wider scalar type is required");

    return polynomial<Real>(std::move(coeffs));
}

}  // namespace sardquad
