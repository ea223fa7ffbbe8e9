#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "linalg.hpp"
#include "roots.hpp"
#include "scalar.hpp"

namespace sardquad {

enum class rule_method { closed_form_m1, closed_form_m2, theorem_4_6, oracle };

inline const char* to_string(rule_method m) {
    switch (m) {
        case rule_method::closed_form_m1: return "closed_form_m1";
        case rule_method::closed_form_m2: return "closed_form_m2";
        case rule_method::theorem_4_6: return "theorem_4_6";
        case rule_method::oracle: return "oracle";
    }
    return "unknown";
}

/// Quadrature rule on [0,1]: nodes x_beta with weights C_beta, beta = 0..N.
template <typename Real>
struct quadrature_rule {
    int m = 1;
    int N = 1;
    Real h{0};
    std::vector<Real> nodes;
    std::vector<Real> coeffs;
    rule_method method = rule_method::oracle;
};

/// Boundary-layer amplitudes of the general coefficient form
/// C_beta = h + sum_k (a_k lambda_k^beta + b_k lambda_k^{N-beta}).
template <typename Real>
struct ab_solution {
    std::vector<complex_t<Real>> a;
    std::vector<complex_t<Real>> b;
    stable_root_set<Real> roots;
};

template <typename Real>
struct ab_system {
    dense_matrix<complex_t<Real>> matrix;
    std::vector<complex_t<Real>> rhs;
    int N = 0;
};

namespace detail {

template <typename Real>
std::vector<Real> uniform_nodes(int N, const Real& h) {
    std::vector<Real> nodes(N + 1);
    for (int b = 0; b <= N; ++b) nodes[b] = h * Real(b);
    return nodes;
}

}  // namespace detail

/// Optimal rule in W_2^(1,0): equal weights 2(e^h-1)/(e^h+1) inside and half
/// that at both endpoints.
template <typename Real>
quadrature_rule<Real> closed_form_m1(int N) {
    using std::exp;
    if (N < 1) throw invalid_argument_error("closed_form_m1: N must be >= 1");
    const Real h = Real(1) / Real(N);
    const Real E = exp(h);
    const Real edge = (E - Real(1)) / (E + Real(1));
    quadrature_rule<Real> rule;
    rule.m = 1;
    rule.N = N;
    rule.h = h;
    rule.method = rule_method::closed_form_m1;
    rule.nodes = detail::uniform_nodes(N, h);
    rule.coeffs.assign(N + 1, Real(2) * edge);
    rule.coeffs.front() = edge;
    rule.coeffs.back() = edge;
    return rule;
}

/// Optimal rule in W_2^(2,1). The stable quadratic root is evaluated from the
/// discriminant 4h(e^h-1)^2(e^h+1)[h(e^h+1) - 2(e^h-1)] of P_2, i.e. with
/// 2h(1-e^{2h}) as the last term under the radical.
template <typename Real>
quadrature_rule<Real> closed_form_m2(int N) {
    using std::exp;
    using std::expm1;
    using std::sqrt;
    if (N < 2) throw invalid_argument_error("closed_form_m2: N must be >= 2");
    const Real h = Real(1) / Real(N);
    const Real E = exp(h);
    const Real t = expm1(h);  // e^h - 1
    const Real radicand = h * h * (E + Real(1)) * (E + Real(1)) - Real(2) * h * t * (E + Real(1));
    const Real lambda1 = (h * (E * E + Real(1)) - E * E + Real(1) - t * sqrt(radicand)) /
                         (Real(1) - E * E + Real(2) * h * E);
    const Real lam_pow_n = pow_int(lambda1, static_cast<unsigned long>(N));
    const Real K = (Real(2) * E - Real(2) - h * E - h) * (lambda1 - Real(1)) /
                   (Real(2) * t * t * (lambda1 + lam_pow_n * lambda1));
    quadrature_rule<Real> rule;
    rule.m = 2;
    rule.N = N;
    rule.h = h;
    rule.method = rule_method::closed_form_m2;
    rule.nodes = detail::uniform_nodes(N, h);
    rule.coeffs.resize(N + 1);
    rule.coeffs[0] = Real(1) - h / t - K * (lambda1 - lam_pow_n);
    rule.coeffs[N] = Real(-1) + E * h / t - K * (lambda1 - lam_pow_n) * E;
    for (int b = 1; b < N; ++b)
        rule.coeffs[b] = h + K * ((E - lambda1) * pow_int(lambda1, static_cast<unsigned long>(b)) +
                                  (Real(1) - lambda1 * E) * pow_int(lambda1, static_cast<unsigned long>(N - b)));
    return rule;
}

/// Assemble the 2m-2 system for the boundary-layer amplitudes a_k, b_k.
/// Row order: the two exponential-matching rows, the even family
/// j = 2..floor(m/2), the odd family j = 1..floor((m-1)/2) with Bernoulli
/// right-hand sides, then the moment family j = 1..m-2.
template <typename Real>
ab_system<Real> assemble_system(space_order order, int N, const stable_root_set<Real>& roots) {
    using std::exp;
    using Complex = complex_t<Real>;
    const int m = order.value;
    if (m < 2) throw invalid_argument_error("assemble_system: requires m >= 2");
    if (N < m) throw invalid_argument_error("assemble_system: requires N >= m");
    const int n = 2 * m - 2;
    const Real h = Real(1) / Real(N);
    const Real E = exp(h);

    ab_system<Real> sys;
    sys.N = N;
    sys.matrix = dense_matrix<Complex>(n, n);
    sys.rhs.assign(n, Complex(0));

    const std::vector<Complex>& lam = roots.roots;
    auto lam_pow = [&](int k, long p) { return pow_int(lam[k], static_cast<unsigned long>(p)); };
    int row = 0;

    // exponential rows
    {
        const Real r = (h - Real(2)) / (Real(2) * (E - Real(1))) + h / ((E - Real(1)) * (E - Real(1)));
        for (int k = 0; k < m - 1; ++k) {
            const Complex denom_a = (lam[k] - Real(1)) * (lam[k] - E);
            const Complex denom_b = (lam[k] - Real(1)) * (lam[k] * E - Real(1));
            sys.matrix(0, k) = lam[k] / denom_a;
            sys.matrix(0, m - 1 + k) = lam_pow(k, N + 1) / denom_b;
            sys.matrix(1, k) = lam_pow(k, N + 1) / denom_a;
            sys.matrix(1, m - 1 + k) = lam[k] / denom_b;
        }
        sys.rhs[0] = Complex(r);
        sys.rhs[1] = Complex(r);
        row = 2;
    }

    auto fdz = [](int i, int k) { return from_bigint<Real>(forward_diff_zero(i, k)); };
    auto inv_fact = [](int n_) { return from_rational<Real>(rational(1, factorial_int(n_))); };

    // even family
    for (int j = 2; j <= m / 2; ++j, ++row) {
        for (int k = 0; k < m - 1; ++k) {
            Complex sa(0), sb(0);
            for (int l = 2; l <= j; ++l) {
                const Real factor = pow_int(h, 2 * l - 2) * inv_fact(2 * l - 2);
                Complex ta(0), tb(0);
                for (int i = 1; i <= 2 * l - 2; ++i) {
                    const Real d = fdz(i, 2 * l - 2);
                    ta += lam[k] * d / pow_int(lam[k] - Real(1), i + 1);
                    tb += lam_pow(k, N + i) * d / pow_int(Real(1) - lam[k], i + 1);
                }
                sa += factor * ta;
                sb += factor * tb;
            }
            sys.matrix(row, k) = sa;
            sys.matrix(row, m - 1 + k) = sb;
        }
        sys.rhs[row] = Complex(0);
    }

    // odd family (Bernoulli right-hand sides)
    for (int j = 1; j <= (m - 1) / 2; ++j, ++row) {
        for (int k = 0; k < m - 1; ++k) {
            Complex sa(0), sb(0);
            for (int l = 1; l <= j; ++l) {
                const Real factor = pow_int(h, 2 * l - 1) * inv_fact(2 * l - 1);
                Complex ta(0), tb(0);
                for (int i = 1; i <= 2 * l - 1; ++i) {
                    const Real d = fdz(i, 2 * l - 1);
                    ta += lam[k] * d / pow_int(lam[k] - Real(1), i + 1);
                    tb += lam_pow(k, N + i) * d / pow_int(Real(1) - lam[k], i + 1);
                }
                sa += factor * ta;
                sb += factor * tb;
            }
            sys.matrix(row, k) = sa;
            sys.matrix(row, m - 1 + k) = sb;
        }
        Real r(0);
        for (int l = 1; l <= j; ++l)
            r += pow_int(h, 2 * l) * from_rational<Real>(bernoulli(2 * l) / rational(factorial_int(2 * l)));
        sys.rhs[row] = Complex(r);
    }

    // moment family
    for (int j = 1; j <= m - 2; ++j, ++row) {
        for (int k = 0; k < m - 1; ++k) {
            Complex sa(0), sb(0);
            for (int l = 1; l <= j; ++l) {
                const Real factor = pow_int(h, l) * from_bigint<Real>(binomial_int(j, l));
                Complex ta(0), tb(0);
                for (int i = 1; i <= l; ++i) {
                    const Real d = fdz(i, l);
                    ta += lam_pow(k, N + i) * d / pow_int(Real(1) - lam[k], i + 1);
                    tb += lam[k] * d / pow_int(lam[k] - Real(1), i + 1);
                }
                sa += factor * ta;
                sb += factor * tb;
            }
            const Real hj = pow_int(h, j);
            for (int i = 1; i <= j; ++i) {
                const Real d = fdz(i, j);
                sa -= hj * lam_pow(k, i) * d / pow_int(Real(1) - lam[k], i + 1);
                sb -= hj * lam_pow(k, N + 1) * d / pow_int(lam[k] - Real(1), i + 1);
            }
            sys.matrix(row, k) = sa;
            sys.matrix(row, m - 1 + k) = sb;
        }
        Real r(0);
        for (int l = 1; l <= j - 1; ++l)
            r += from_rational<Real>(rational(factorial_int(j)) * bernoulli(j + 1 - l) /
                                     rational(factorial_int(l) * factorial_int(j + 1 - l))) *
                 pow_int(h, j + 1 - l);
        sys.rhs[row] = Complex(r);
    }

    if (row != n) throw structural_error("assemble_system: row count mismatch");
    return sys;
}

/// The specialized 4x4 (m=3) and 6x6 (m=4) systems written out row by row;
/// kept as an independent cross-check of the general assembly.
template <typename Real>
ab_system<Real> assemble_specialized_system(space_order order, int N, const stable_root_set<Real>& roots) {
    using std::exp;
    using Complex = complex_t<Real>;
    const int m = order.value;
    if (m != 3 && m != 4)
        throw invalid_argument_error("assemble_specialized_system: specialized systems exist for m = 3, 4 only");
    if (N < m) throw invalid_argument_error("assemble_specialized_system: requires N >= m");
    const int n = 2 * m - 2;
    const Real h = Real(1) / Real(N);
    const Real E = exp(h);
    const std::vector<Complex>& lam = roots.roots;

    ab_system<Real> sys;
    sys.N = N;
    sys.matrix = dense_matrix<Complex>(n, n);
    sys.rhs.assign(n, Complex(0));
    auto lp = [&](int k, long p) { return pow_int(lam[k], static_cast<unsigned long>(p)); };

    const Real r_exp = (h - Real(2)) / (Real(2) * (E - Real(1))) + h / ((E - Real(1)) * (E - Real(1)));
    for (int k = 0; k < m - 1; ++k) {
        const Complex da = (lam[k] - Real(1)) * (lam[k] - E);
        const Complex db = (lam[k] - Real(1)) * (lam[k] * E - Real(1));
        const Complex sq = pow_int(lam[k] - Real(1), 2);
        sys.matrix(0, k) = lam[k] / da;
        sys.matrix(0, m - 1 + k) = lp(k, N + 1) / db;
        sys.matrix(1, k) = lp(k, N + 1) / da;
        sys.matrix(1, m - 1 + k) = lam[k] / db;
        sys.matrix(2, k) = lam[k] / sq;
        sys.matrix(2, m - 1 + k) = lp(k, N + 1) / sq;
        sys.matrix(3, k) = lp(k, N + 1) / sq;
        sys.matrix(3, m - 1 + k) = lam[k] / sq;
        if (m == 4) {
            const Complex cb_m = pow_int(lam[k] - Real(1), 3);
            const Complex cb_p = pow_int(Real(1) - lam[k], 3);
            sys.matrix(4, k) = lam[k] / cb_m;
            sys.matrix(4, m - 1 + k) = lp(k, N + 2) / cb_p;
            sys.matrix(5, k) = (lp(k, 2) - lp(k, N + 2)) / cb_p;
            sys.matrix(5, m - 1 + k) = (lp(k, N + 1) - lam[k]) / cb_m;
        }
    }
    sys.rhs[0] = Complex(r_exp);
    sys.rhs[1] = Complex(r_exp);
    sys.rhs[2] = Complex(h / Real(12));
    sys.rhs[3] = Complex(h / Real(12));
    if (m == 4) {
        sys.rhs[4] = Complex(-h / Real(24));
        sys.rhs[5] = Complex(0);
    }
    return sys;
}

/// Solve the assembled system by complex LU with partial pivoting. Rows and
/// columns are equilibrated first: the lambda_k^{N+i} factors spread the raw
/// entries over hundreds of orders of magnitude, and the guard should measure
/// the intrinsic conditioning, not that scaling.
template <typename Real>
ab_solution<Real> solve_ab(const ab_system<Real>& sys, const stable_root_set<Real>& roots) {
    using std::abs;
    using Complex = complex_t<Real>;
    const std::size_t n = sys.matrix.rows();

    dense_matrix<Complex> eq = sys.matrix;
    std::vector<Real> row_scale(n, Real(1)), col_scale(n, Real(1));
    for (std::size_t i = 0; i < n; ++i) {
        Real s(0);
        for (std::size_t j = 0; j < n; ++j) s = std::max(s, Real(abs(eq(i, j))));
        if (s == Real(0)) throw conditioning_error("solve_ab: zero row", 0.0);
        row_scale[i] = s;
        for (std::size_t j = 0; j < n; ++j) eq(i, j) /= s;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Real s(0);
        for (std::size_t i = 0; i < n; ++i) s = std::max(s, Real(abs(eq(i, j))));
        if (s == Real(0)) throw conditioning_error("solve_ab: zero column", 0.0);
        col_scale[j] = s;
        for (std::size_t i = 0; i < n; ++i) eq(i, j) /= s;
    }

    lu_decomposition<Complex> lu(eq);
    if (lu.singular()) throw conditioning_error("solve_ab: system is singular", 0.0);
    const Real cond = condition_estimate_dense<Complex, Real>(eq, lu);
    if (cond > Real(1e12))
        throw conditioning_error("solve_ab: condition estimate exceeds 1e12", to_double<Real>(cond));

    std::vector<Complex> scaled_rhs(n);
    for (std::size_t i = 0; i < n; ++i) scaled_rhs[i] = sys.rhs[i] / row_scale[i];
    std::vector<Complex> x = lu.solve(scaled_rhs);
    for (std::size_t j = 0; j < n; ++j) x[j] /= col_scale[j];

    std::vector<Complex> res = matvec(sys.matrix, x);
    Real rnorm(0), scale(0);
    for (std::size_t i = 0; i < n; ++i) {
        rnorm = std::max(rnorm, Real(abs(res[i] - sys.rhs[i])));
        scale = std::max(scale, Real(abs(sys.rhs[i])));
    }
    Real anorm = norm_1<Complex, Real>(sys.matrix);
    Real xnorm = max_abs<Complex, Real>(x);
    if (!(rnorm <= Real(1e-10) * (anorm * xnorm + scale)))
        throw precision_error("solve_ab: residual exceeds the 1e-10 relative contract");

    ab_solution<Real> sol;
    sol.roots = roots;
    const int half = static_cast<int>(n) / 2;
    sol.a.assign(x.begin(), x.begin() + half);
    sol.b.assign(x.begin() + half, x.end());
    return sol;
}

namespace detail {

/// C_0, C_N and the interior formula assembled from the a_k, b_k amplitudes.
template <typename Real>
quadrature_rule<Real> rule_from_ab(space_order order, int N, const ab_solution<Real>& sol) {
    using std::abs;
    using std::exp;
    using Complex = complex_t<Real>;
    const int m = order.value;
    const Real h = Real(1) / Real(N);
    const Real E = exp(h);
    const Real e1 = exp(Real(1));
    const std::vector<Complex>& lam = sol.roots.roots;

    auto lp = [&](int k, long p) { return pow_int(lam[k], static_cast<unsigned long>(p)); };
    const Real denom_guard = Real(1e-14);

    Complex c0(((E - Real(1) - h) / (E - Real(1))));
    Complex cn(((E * h + Real(1) - E) / (E - Real(1))));
    for (int k = 0; k < m - 1; ++k) {
        const Complex d0a = (e1 - Real(1)) * (Real(1) - lam[k]) * (E - lam[k]);
        const Complex d0b = (e1 - Real(1)) * (lam[k] - Real(1)) * (lam[k] * E - Real(1));
        const Complex dna = d0a;
        const Complex dnb = (e1 - Real(1)) * (Real(1) - lam[k]) * (Real(1) - lam[k] * E);
        for (const Complex& d : {d0a, d0b, dnb})
            if (abs(d) < denom_guard)
                throw structural_error("coefficients: endpoint denominator below guard; "
                                       "root classification is suspect");
        c0 += sol.a[k] * (lam[k] * (E - e1) + lp(k, 2) * (e1 - Real(1)) + lp(k, N + 1) * (Real(1) - E)) / d0a +
              sol.b[k] * (lp(k, N + 1) * (E - e1) + lp(k, N) * (e1 - Real(1)) + lam[k] * (Real(1) - E)) / d0b;
        cn += sol.a[k] * (lam[k] * (e1 - E * e1) + lp(k, N) * (E * e1 - E) + lp(k, N + 1) * (E - e1)) / dna +
              sol.b[k] * (lp(k, N + 1) * (e1 - E * e1) + lp(k, 2) * (E * e1 - E) + lam[k] * (E - e1)) / dnb;
    }

    quadrature_rule<Real> rule;
    rule.m = m;
    rule.N = N;
    rule.h = h;
    rule.method = rule_method::theorem_4_6;
    rule.nodes = uniform_nodes(N, h);
    rule.coeffs.resize(N + 1);

    const Real imag_tol = Real(1e-10);
    auto realize = [&](const Complex& z) -> Real {
        if (!(abs(z.imag()) <= imag_tol * std::max(Real(1), Real(abs(z)))))
            throw precision_error("coefficients: imaginary residue above 1e-10");
        return z.real();
    };
    rule.coeffs[0] = realize(c0);
    rule.coeffs[N] = realize(cn);
    for (int b = 1; b < N; ++b) {
        Complex v(h);
        for (int k = 0; k < m - 1; ++k) v += sol.a[k] * lp(k, b) + sol.b[k] * lp(k, N - b);
        rule.coeffs[b] = realize(v);
    }
    return rule;
}

}  // namespace detail

/// Full pipeline for m >= 2 regardless of the closed forms; the production
/// entry point coefficients() dispatches here for m >= 3.
template <typename Real>
quadrature_rule<Real> coefficients_general(space_order order, int N) {
    if (order.value < 2) throw invalid_argument_error("coefficients_general: requires m >= 2");
    if (N < order.value) throw invalid_argument_error("coefficients_general: requires N >= m");
    const Real h = Real(1) / Real(N);
    const stable_root_set<Real> roots = stable_roots_for(order, h);
    const ab_system<Real> sys = assemble_system(order, N, roots);
    const ab_solution<Real> sol = solve_ab(sys, roots);
    return detail::rule_from_ab(order, N, sol);
}

/// Optimal coefficients for equally spaced nodes: closed forms for m = 1, 2,
/// the general pipeline above for m >= 3.
template <typename Real>
quadrature_rule<Real> coefficients(space_order order, int N) {
    const int m = order.value;
    if (m == 1) {
        if (N < 1) throw invalid_argument_error("coefficients: requires N >= 1 for m = 1");
        return closed_form_m1<Real>(N);
    }
    if (N < m) throw invalid_argument_error("coefficients: requires N >= m, got N = " + std::to_string(N) +
                                            ", m = " + std::to_string(m));
    if (m == 2) return closed_form_m2<Real>(N);
    return coefficients_general<Real>(order, N);
}

/// Apply the rule to samples phi(x_beta) with compensated summation.
template <typename Real>
Real integrate(const quadrature_rule<Real>& rule, const std::vector<Real>& samples) {
    if (samples.size() != rule.coeffs.size())
        throw invalid_argument_error("integrate: expected " + std::to_string(rule.coeffs.size()) +
                                     " samples, got " + std::to_string(samples.size()));
    compensated_sum<Real> acc;
    for (std::size_t i = 0; i < samples.size(); ++i) acc.add(rule.coeffs[i] * samples[i]);
    return acc.value();
}

}  // namespace sardquad
