#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "charpoly.hpp"
#include "errors.hpp"
#include "roots.hpp"
#include "scalar.hpp"

namespace sardquad {

/// Discrete analogue D_m(h beta) of d^{2m}/dx^{2m} - d^{2m-2}/dx^{2m-2} on the
/// step-h grid. Values are even in beta and follow the three-branch form
///   D(0)      = (2C + sum_k A_k/lambda_k) / p
///   D(+-h)    = (-2 e^h + sum_k A_k) / p
///   D(h beta) = sum_k A_k lambda_k^{|beta|-1} / p,  |beta| >= 2
/// with p the leading coefficient of P_{2m-2}. Stored up to the window W; the
/// geometric tail is available through value() and bounds the truncation of
/// convolutions.
template <typename Real>
struct discrete_operator {
    int m = 2;
    Real h{0};
    int window = 0;
    std::vector<Real> values;  // index |beta| = 0..window
    std::vector<complex_t<Real>> tail_coeffs;  // A_k
    stable_root_set<Real> roots;
    Real p_lead{0};
    Real p_next{0};
    Real center_const{0};  // C

    Real value(long beta) const {
        using std::abs;
        const long ab = beta >= 0 ? beta : -beta;
        if (ab <= window) return values[static_cast<std::size_t>(ab)];
        complex_t<Real> acc(0);
        for (std::size_t k = 0; k < tail_coeffs.size(); ++k)
            acc += tail_coeffs[k] * pow_int(roots.roots[k], static_cast<unsigned long>(ab - 1));
        return acc.real() / p_lead;
    }

    Real decay_rate() const { return roots.max_modulus(); }

    /// sum_k |A_k| / |p|; the prefactor of the geometric tail envelope.
    Real amplitude() const {
        using std::abs;
        Real s(0);
        for (const auto& ak : tail_coeffs) s += abs(ak);
        return s / Real(abs(p_lead));
    }

    /// Upper bound on sum_{|gamma| > W} |D(h gamma)|.
    Real tail_mass() const {
        const Real q = decay_rate();
        return Real(2) * amplitude() * pow_int(q, static_cast<unsigned long>(window)) / (Real(1) - q);
    }
};

/// Default window: geometric tail at most 1e-14 relative to the operator's
/// amplitude, but never fewer than 50 points.
template <typename Real>
int default_window(const Real& decay_rate) {
    using std::ceil;
    using std::log;
    const double q = to_double<Real>(decay_rate);
    const int w = static_cast<int>(std::ceil(std::log(1e-14) / std::log(q)));
    return std::max(50, w);
}

template <typename Real>
discrete_operator<Real> build_discrete_operator(space_order order, const Real& h,
                                                std::optional<int> window = std::nullopt) {
    using std::abs;
    using std::exp;
    using Complex = complex_t<Real>;
    const int m = order.value;
    if (m < 2) throw invalid_argument_error("build_discrete_operator: requires m >= 2");
    if (window && *window < 2) throw invalid_argument_error("build_discrete_operator: window must be >= 2");

    const polynomial<Real> p = char_poly(order, h);
    const stable_root_set<Real> roots = stable_roots(p, order, h);
    const polynomial<Real> dp = p.derivative();
    const Real E = exp(h);

    discrete_operator<Real> op;
    op.m = m;
    op.h = h;
    op.roots = roots;
    op.p_lead = p.coeffs()[2 * m - 2];
    op.p_next = p.coeffs()[2 * m - 3];
    op.window = window ? *window : default_window(roots.max_modulus());

    Real pscale(0);
    for (const Real& c : p.coeffs()) pscale = std::max(pscale, Real(abs(c)));
    op.tail_coeffs.reserve(m - 1);
    for (const Complex& lam : roots.roots) {
        const Complex dval = dp(lam);
        if (!(abs(dval) > Real(1e-12) * pscale))
            throw structural_error("build_discrete_operator: P' vanishes at a stable root "
                                   "(repeated root); the three-branch form is invalid");
        const Complex bracket = lam * (E * E + Real(1)) - E * (lam * lam + Real(1));
        op.tail_coeffs.push_back(Real(2) * pow_int(Complex(Real(1) - lam), 2 * m - 2) * bracket * op.p_lead /
                                 (lam * dval));
    }

    op.center_const = Real(1) + Real(2 * m - 2) * E + E * E + E * op.p_next / op.p_lead;

    Complex at0(Real(2) * op.center_const);
    Complex at1(Real(-2) * E);
    for (std::size_t k = 0; k < op.tail_coeffs.size(); ++k) {
        at0 += op.tail_coeffs[k] / roots.roots[k];
        at1 += op.tail_coeffs[k];
    }

    op.values.resize(op.window + 1);
    Real value_scale(0);
    auto realize = [&](const Complex& z) -> Real {
        value_scale = std::max(value_scale, Real(abs(z)));
        return z.real();
    };
    op.values[0] = realize(at0) / op.p_lead;
    op.values[1] = realize(at1) / op.p_lead;
    std::vector<Complex> powers(roots.roots.begin(), roots.roots.end());
    for (int b = 2; b <= op.window; ++b) {
        Complex acc(0);
        for (std::size_t k = 0; k < op.tail_coeffs.size(); ++k) {
            acc += op.tail_coeffs[k] * powers[k];
            powers[k] *= roots.roots[k];
        }
        op.values[static_cast<std::size_t>(b)] = realize(acc) / op.p_lead;
    }

    // imaginary residue check on the assembled numerators
    Real max_imag(0);
    {
        Complex acc(0);
        std::vector<Complex> pw(roots.roots.begin(), roots.roots.end());
        for (int b = 2; b <= op.window; ++b) {
            acc = Complex(0);
            for (std::size_t k = 0; k < op.tail_coeffs.size(); ++k) {
                acc += op.tail_coeffs[k] * pw[k];
                pw[k] *= roots.roots[k];
            }
            max_imag = std::max(max_imag, Real(abs(acc.imag())));
        }
    }
    if (!(max_imag <= Real(1e-12) * std::max(Real(1), value_scale)))
        throw precision_error("build_discrete_operator: imaginary residue above 1e-12 of the value scale");

    return op;
}

template <typename Real>
struct convolution_result {
    std::vector<Real> values;  // output index 0 corresponds to beta = -reach
    long reach = 0;            // outputs cover |beta| <= reach
    Real truncation_bound{0};

    const Real& at(long beta) const { return values[static_cast<std::size_t>(beta + reach)]; }
};

/// Discrete convolution (D * f)(h beta) = sum_gamma D(h beta - h gamma) f(h gamma)
/// over the stored window. `f` must be sampled on a centered odd-length grid
/// beta = -M..M; outputs cover |beta| <= M - W. The attached truncation bound
/// is tail_mass() * max|f|, the geometric-tail model of the omitted terms.
template <typename Real>
convolution_result<Real> convolve(const discrete_operator<Real>& op, const std::vector<Real>& f) {
    using std::abs;
    if (f.size() % 2 == 0) throw invalid_argument_error("convolve: samples must cover a centered odd grid");
    const long half = static_cast<long>(f.size() / 2);
    const long reach = half - op.window;
    if (reach < 0)
        throw window_error("convolve: sample half-width " + std::to_string(half) +
                               " is smaller than the operator window " + std::to_string(op.window),
                           op.window);

    Real fmax(0);
    for (const Real& v : f) fmax = std::max(fmax, Real(abs(v)));

    convolution_result<Real> out;
    out.reach = reach;
    out.truncation_bound = op.tail_mass() * fmax;
    out.values.resize(static_cast<std::size_t>(2 * reach + 1));
    for (long beta = -reach; beta <= reach; ++beta) {
        compensated_sum<Real> acc;
        for (long gamma = beta - op.window; gamma <= beta + op.window; ++gamma)
            acc.add(op.value(beta - gamma) * f[static_cast<std::size_t>(gamma + half)]);
        out.values[static_cast<std::size_t>(beta + reach)] = acc.value();
    }
    return out;
}

}  // namespace sardquad
