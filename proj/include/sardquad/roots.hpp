#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "charpoly.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace sardquad {

/// Tolerance separating roots strictly inside the unit disc from ones too
/// close to classify; interiority is guaranteed by the theory, so a near-unit
/// modulus signals precision loss rather than a borderline case.
inline constexpr double unit_circle_margin = 1e-9;

/// The m-1 roots of P_{2m-2} with modulus < 1. Non-real roots are stored as
/// exact conjugate pairs; empty for m = 1.
template <typename Real>
struct stable_root_set {
    std::vector<complex_t<Real>> roots;
    Real h{0};
    int m{1};

    Real max_modulus() const {
        using std::abs;
        Real q(0);
        for (const auto& z : roots) q = std::max(q, Real(abs(z)));
        return q;
    }
};

namespace detail {

/// Parlett-Reinsch style balancing: scale row/column pairs by powers of two
/// until the off-diagonal 1-norms stop improving.
inline void balance_companion(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd off = a;
    off.diagonal().setZero();
    const double gamma = 0.9;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            const double row_norm = off.row(i).template lpNorm<1>();
            const double col_norm = off.col(i).template lpNorm<1>();
            if (row_norm == 0.0 || col_norm == 0.0) continue;
            int exponent = 0;
            std::frexp(row_norm / col_norm, &exponent);
            exponent /= 2;
            if (exponent != 0) {
                const double scaled_col = std::ldexp(col_norm, exponent);
                const double scaled_row = std::ldexp(row_norm, -exponent);
                if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
                    changed = true;
                    off.row(i) *= std::ldexp(1.0, -exponent);
                    off.col(i) *= std::ldexp(1.0, exponent);
                }
            }
        }
    }
    off.diagonal() = a.diagonal();
    a = off;
}

/// All roots of p as double-precision seeds via the balanced companion matrix.
template <typename Real>
std::vector<std::complex<double>> companion_seeds(const polynomial<Real>& p) {
    using std::abs;
    const int degree = static_cast<int>(p.degree());
    Real scale(0);
    for (const Real& c : p.coeffs()) scale = std::max(scale, Real(abs(c)));
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    const double lead = to_double<Real>(Real(p.coeffs()[degree] / scale));
    for (int i = 0; i < degree; ++i)
        companion(i, degree - 1) = -to_double<Real>(Real(p.coeffs()[i] / scale)) / lead;
    balance_companion(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw structural_error("companion_seeds: eigenvalue iteration failed");
    std::vector<std::complex<double>> seeds(degree);
    for (int i = 0; i < degree; ++i) seeds[i] = solver.eigenvalues()[i];
    return seeds;
}

}  // namespace detail

/// Extract the m-1 stable roots of the characteristic polynomial. Seeds come
/// from the balanced companion matrix in double precision and are polished by
/// Newton steps on p in the target precision; residuals are then checked
/// against 1e-13 * max|coeff|.
template <typename Real>
stable_root_set<Real> stable_roots(const polynomial<Real>& p, space_order order, const Real& h) {
    using std::abs;
    using Complex = complex_t<Real>;
    const int m = order.value;
    if (static_cast<int>(p.degree()) != 2 * m - 2)
        throw invalid_argument_error("stable_roots: polynomial degree does not match 2m-2");

    Real scale(0);
    for (const Real& c : p.coeffs()) scale = std::max(scale, Real(abs(c)));
    const polynomial<Real> dp = p.derivative();

    const Real imag_cutoff = Real(1000) * real_epsilon<Real>();
    std::vector<Complex> polished;
    for (const std::complex<double>& seed : detail::companion_seeds(p)) {
        Complex z(Real(seed.real()), Real(seed.imag()));
        for (int it = 0; it < 6; ++it) {
            const Complex pz = p(z);
            if (it >= 2 && abs(pz) <= Real(1e-13) * scale) break;
            const Complex dz = dp(z);
            if (abs(dz) == Real(0)) break;
            z -= pz / dz;
        }
        if (abs(z.imag()) <= imag_cutoff * (Real(1) + abs(z.real()))) z = Complex(z.real(), Real(0));
        polished.push_back(z);
    }

    const Real margin = Real(unit_circle_margin);
    std::vector<Complex> inside;
    for (const Complex& z : polished) {
        const Real dist = Real(1) - abs(z);
        if (abs(dist) <= margin) {
            std::ostringstream os;
            os << "stable_roots: root with |lambda| = " << abs(z)
               << " is within " << unit_circle_margin << " of the unit circle";
            throw classification_error(os.str());
        }
        if (dist > Real(0)) inside.push_back(z);
    }

    if (static_cast<int>(inside.size()) != m - 1) {
        std::ostringstream os;
        os << "stable_roots: expected " << m - 1 << " roots inside the unit disc, found "
           << inside.size() << "; all roots (re, im, modulus):";
        for (const Complex& z : polished)
            os << " (" << z.real() << ", " << z.imag() << ", " << abs(z) << ")";
        throw structural_error(os.str());
    }

    // Enforce exact conjugate pairing: keep one representative per pair and
    // emit its mirror by conjugation instead of an independent solve.
    std::vector<Complex> paired;
    std::vector<Complex> pending;
    for (const Complex& z : inside) {
        if (z.imag() == Real(0)) {
            paired.push_back(z);
            continue;
        }
        bool matched = false;
        for (auto it = pending.begin(); it != pending.end(); ++it) {
            if (abs(*it - conj(z)) <= Real(1e-6) * (Real(1) + abs(z))) {
                const Complex rep = it->imag() > Real(0) ? *it : z;
                paired.push_back(rep);
                paired.push_back(conj(rep));
                pending.erase(it);
                matched = true;
                break;
            }
        }
        if (!matched) pending.push_back(z);
    }
    if (!pending.empty())
        throw structural_error("stable_roots: complex roots do not close under conjugation");

    for (const Complex& z : paired) {
        const Real residual = abs(p(z));
        if (!(residual <= Real(1e-13) * scale)) {
            std::ostringstream os;
            os << "stable_roots: residual " << residual << " exceeds 1e-13 * max|coeff| = "
               << Real(1e-13) * scale;
            throw precision_error(os.str());
        }
    }

    std::sort(paired.begin(), paired.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    stable_root_set<Real> set;
    set.roots = std::move(paired);
    set.h = h;
    set.m = m;
    return set;
}

/// Convenience builder: empty set for m = 1, otherwise char_poly + stable_roots.
template <typename Real>
stable_root_set<Real> stable_roots_for(space_order order, const Real& h) {
    if (order.value == 1) {
        stable_root_set<Real> set;
        set.h = h;
        set.m = 1;
        return set;
    }
    return stable_roots(char_poly(order, h), order, h);
}

}  // namespace sardquad
