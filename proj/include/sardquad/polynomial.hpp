#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace sardquad {

/// Dense polynomial with ascending coefficients: coeffs()[s] multiplies x^s.
/// Trailing zeros are trimmed so degree() is well-defined; the zero polynomial
/// is stored as a single zero coefficient of degree 0.
template <typename T>
class polynomial {
public:
    polynomial() : coeffs_{T(0)} {}
    polynomial(std::initializer_list<T> cs) : coeffs_(cs) { trim(); }
    explicit polynomial(std::vector<T> cs) : coeffs_(std::move(cs)) { trim(); }

    std::size_t degree() const { return coeffs_.size() - 1; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& leading() const { return coeffs_.back(); }

    /// Coefficient of x^s; zero beyond the stored degree.
    T operator[](std::size_t s) const {
        return s < coeffs_.size() ? coeffs_[s] : T(0);
    }

    bool operator==(const polynomial& other) const { return coeffs_ == other.coeffs_; }

    polynomial operator+(const polynomial& other) const {
        std::vector<T> r(std::max(coeffs_.size(), other.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) r[i] += other.coeffs_[i];
        return polynomial(std::move(r));
    }

    polynomial operator-(const polynomial& other) const {
        std::vector<T> r(std::max(coeffs_.size(), other.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) r[i] -= other.coeffs_[i];
        return polynomial(std::move(r));
    }

    polynomial operator*(const polynomial& other) const {
        std::vector<T> r(coeffs_.size() + other.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
                r[i + j] += coeffs_[i] * other.coeffs_[j];
        return polynomial(std::move(r));
    }

    polynomial operator*(const T& scale) const {
        std::vector<T> r(coeffs_);
        for (auto& c : r) c *= scale;
        return polynomial(std::move(r));
    }

    /// Horner evaluation; X may be a wider scalar than T (complex, higher
    /// precision) as long as X supports X*X and X += T.
    template <typename X>
    X operator()(const X& x) const {
        X acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x;
            acc += X(coeffs_[i]);
        }
        return acc;
    }

    polynomial derivative() const {
        if (coeffs_.size() == 1) return polynomial();
        std::vector<T> r(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * T(static_cast<long>(i));
        return polynomial(std::move(r));
    }

    /// (1 - x)^n
    static polynomial one_minus_x_pow(unsigned n) {
        polynomial r{T(1)};
        const polynomial f{T(1), T(-1)};
        for (unsigned i = 0; i < n; ++i) r = r * f;
        return r;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == T(0)) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(T(0));
    }

    std::vector<T> coeffs_;
};

}  // namespace sardquad
