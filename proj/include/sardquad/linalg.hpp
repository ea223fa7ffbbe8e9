#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace sardquad {

template <typename T>
class dense_matrix {
public:
    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
std::vector<T> matvec(const dense_matrix<T>& a, const std::vector<T>& x) {
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc(0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

/// LU factorization with partial pivoting; T may be real or complex.
template <typename T>
class lu_decomposition {
public:
    explicit lu_decomposition(dense_matrix<T> a) : lu_(std::move(a)), perm_(lu_.rows()) {
        using std::abs;
        const std::size_t n = lu_.rows();
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pivot = k;
            auto best = abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                auto cand = abs(lu_(i, k));
                if (cand > best) {
                    best = cand;
                    pivot = i;
                }
            }
            if (!(best > decltype(best)(0))) {
                singular_ = true;
                return;
            }
            if (pivot != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
                std::swap(perm_[k], perm_[pivot]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu_(i, k) /= lu_(k, k);
                const T factor = lu_(i, k);
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
            }
        }
    }

    bool singular() const { return singular_; }

    std::vector<T> solve(const std::vector<T>& b) const {
        const std::size_t n = lu_.rows();
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] /= lu_(i, i);
        }
        return x;
    }

    /// Solve A^T x = b (same factorization, reversed sweeps).
    std::vector<T> solve_transposed(const std::vector<T>& b) const {
        const std::size_t n = lu_.rows();
        std::vector<T> y(b);
        // U^T w = b (lower triangular with U's diagonal)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(j, i) * y[j];
            y[i] /= lu_(i, i);
        }
        // L^T v = w (unit upper triangular)
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu_(j, i) * y[j];
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
        return x;
    }

private:
    dense_matrix<T> lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

template <typename T, typename Real>
Real max_abs(const std::vector<T>& v) {
    using std::abs;
    Real r(0);
    for (const T& x : v) r = std::max(r, Real(abs(x)));
    return r;
}

template <typename T, typename Real>
Real norm_1(const dense_matrix<T>& a) {
    using std::abs;
    Real best(0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Real col(0);
        for (std::size_t i = 0; i < a.rows(); ++i) col += abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

/// Hager-style 1-norm condition estimate for a factored real matrix.
template <typename Real>
Real condition_estimate_1(const dense_matrix<Real>& a, const lu_decomposition<Real>& lu) {
    using std::abs;
    const std::size_t n = a.rows();
    std::vector<Real> x(n, Real(1) / Real(static_cast<long>(n)));
    Real est(0);
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<Real> y = lu.solve(x);
        Real norm_y(0);
        for (const Real& v : y) norm_y += abs(v);
        est = std::max(est, norm_y);
        std::vector<Real> xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= Real(0) ? Real(1) : Real(-1);
        std::vector<Real> z = lu.solve_transposed(xi);
        std::size_t jmax = 0;
        Real zmax(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (abs(z[i]) > zmax) {
                zmax = abs(z[i]);
                jmax = i;
            }
        }
        Real ztx(0);
        for (std::size_t i = 0; i < n; ++i) ztx += z[i] * x[i];
        if (!(zmax > ztx)) break;
        std::fill(x.begin(), x.end(), Real(0));
        x[jmax] = Real(1);
    }
    return est * norm_1<Real, Real>(a);
}

/// Condition estimate via the explicit inverse; intended for the tiny complex
/// systems where n is at most a couple dozen.
template <typename T, typename Real>
Real condition_estimate_dense(const dense_matrix<T>& a, const lu_decomposition<T>& lu) {
    using std::abs;
    const std::size_t n = a.rows();
    Real inv_norm(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<T> e(n, T(0));
        e[j] = T(1);
        std::vector<T> col = lu.solve(e);
        Real colsum(0);
        for (const T& v : col) colsum += abs(v);
        inv_norm = std::max(inv_norm, colsum);
    }
    return inv_norm * norm_1<T, Real>(a);
}

}  // namespace sardquad
