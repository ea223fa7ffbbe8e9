#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "linalg.hpp"
#include "solver.hpp"

namespace sardquad {

template <typename Real>
struct oracle_solution {
    std::vector<Real> coeffs;
    std::vector<Real> multipliers;  // lambda_0 .. lambda_{m-1}
    Real condition_estimate{0};
    bool condition_warning = false;
    Real residual{0};
};

/// Ground-truth solve of the saddle system
///   [ G   S^T ] [ C ]   [ f_m(x_beta) ]
///   [ S    0  ] [ l ] = [ moments     ]
/// with G_{bg} = G(x_b - x_g), monomial constraint rows x^alpha
/// (alpha = 0..m-2, none for m = 1) and the e^{-x} row. Dense LU with row
/// equilibration, partial pivoting and one step of iterative refinement.
template <typename Real>
oracle_solution<Real> solve_full_system(space_order order, const std::vector<Real>& nodes) {
    using std::abs;
    using std::exp;
    const int m = order.value;
    const std::size_t n = nodes.size();
    if (static_cast<int>(n) < m)
        throw invalid_argument_error("solve_full_system: need at least m nodes");
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes[i] < Real(0) || nodes[i] > Real(1))
            throw invalid_argument_error("solve_full_system: nodes must lie in [0,1]");
        for (std::size_t j = 0; j < i; ++j)
            if (nodes[i] == nodes[j])
                throw invalid_argument_error("solve_full_system: nodes must be distinct");
    }

    const std::size_t dim = n + static_cast<std::size_t>(m);
    dense_matrix<Real> a(dim, dim);
    std::vector<Real> rhs(dim, Real(0));

    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t g = 0; g < n; ++g) a(b, g) = green_kernel(Real(nodes[b] - nodes[g]), order);
        for (int al = 0; al < m - 1; ++al) {
            const Real v = pow_int(nodes[b], static_cast<unsigned long>(al));
            a(b, n + al) = v;
            a(n + al, b) = v;
        }
        const Real ev = exp(-nodes[b]);
        a(b, n + m - 1) = ev;
        a(n + m - 1, b) = ev;
        rhs[b] = rhs_moment(nodes[b], order);
    }
    for (int al = 0; al < m - 1; ++al) rhs[n + al] = Real(1) / Real(al + 1);
    rhs[n + m - 1] = Real(1) - exp(Real(-1));

    // row equilibration by max-abs
    dense_matrix<Real> eq = a;
    std::vector<Real> rhs_eq = rhs;
    std::vector<Real> row_scale(dim, Real(1));
    for (std::size_t i = 0; i < dim; ++i) {
        Real s(0);
        for (std::size_t j = 0; j < dim; ++j) s = std::max(s, Real(abs(eq(i, j))));
        if (s == Real(0)) throw conditioning_error("solve_full_system: zero row", 0.0);
        row_scale[i] = s;
        for (std::size_t j = 0; j < dim; ++j) eq(i, j) /= s;
        rhs_eq[i] /= s;
    }

    lu_decomposition<Real> lu(eq);
    if (lu.singular()) throw conditioning_error("solve_full_system: saddle matrix is singular", 0.0);

    std::vector<Real> x = lu.solve(rhs_eq);
    // one step of iterative refinement against the unequilibrated system
    {
        std::vector<Real> res = matvec(a, x);
        for (std::size_t i = 0; i < dim; ++i) res[i] = (rhs[i] - res[i]) / row_scale[i];
        const std::vector<Real> dx = lu.solve(res);
        for (std::size_t i = 0; i < dim; ++i) x[i] += dx[i];
    }

    oracle_solution<Real> sol;
    sol.condition_estimate = condition_estimate_1(eq, lu);
    sol.condition_warning = sol.condition_estimate > Real(1e12);

    std::vector<Real> res = matvec(a, x);
    Real rnorm(0), bnorm(0);
    for (std::size_t i = 0; i < dim; ++i) {
        rnorm = std::max(rnorm, Real(abs(res[i] - rhs[i])));
        bnorm = std::max(bnorm, Real(abs(rhs[i])));
    }
    sol.residual = rnorm;
    if (!(rnorm <= Real(1e-9) * bnorm))
        throw precision_error("solve_full_system: residual " + std::to_string(to_double<Real>(rnorm)) +
                              " exceeds 1e-9 * ||rhs||");

    sol.coeffs.assign(x.begin(), x.begin() + n);
    sol.multipliers.assign(x.begin() + n, x.end());
    return sol;
}

/// Oracle rule on the uniform grid, packaged like the closed-form rules.
template <typename Real>
quadrature_rule<Real> oracle_rule(space_order order, int N) {
    if (N < 1 || N + 1 < order.value)
        throw invalid_argument_error("oracle_rule: need N + 1 >= m and N >= 1");
    const Real h = Real(1) / Real(N);
    const std::vector<Real> nodes = detail::uniform_nodes(N, h);
    oracle_solution<Real> sol = solve_full_system(order, nodes);
    quadrature_rule<Real> rule;
    rule.m = order.value;
    rule.N = N;
    rule.h = h;
    rule.nodes = nodes;
    rule.coeffs = std::move(sol.coeffs);
    rule.method = rule_method::oracle;
    return rule;
}

}  // namespace sardquad
