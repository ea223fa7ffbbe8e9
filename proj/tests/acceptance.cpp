// Acceptance suite: exercises the end-to-end contracts of the library at
// their stated tolerances and prints one PASS/FAIL line per criterion.
// Returns the number of failed criteria as the exit code.

#include <sardquad/sardquad.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace sardquad;
using R = mp_real;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

struct reference_cell {
    int m;
    int N;
    double norm;
};

const reference_cell table5[] = {
    {1, 10, 0.02886},   {1, 50, 0.00577},    {1, 100, 0.00289},
    {2, 10, 0.000424},  {2, 50, 0.00001534}, {2, 100, 0.37802e-5},
    {3, 10, 0.0000108}, {3, 50, 0.5643e-7},  {3, 100, 0.6435e-8},
    {4, 10, 0.5051e-6}, {4, 50, 0.3854e-9},  {4, 100, 0.1821e-10},
};

std::map<std::pair<int, int>, quadrature_rule<R>> rule_cache;

const quadrature_rule<R>& rule_for(int m, int N) {
    auto key = std::make_pair(m, N);
    auto it = rule_cache.find(key);
    if (it == rule_cache.end()) it = rule_cache.emplace(key, coefficients<R>(space_order(m), N)).first;
    return it->second;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void criterion_1_table_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (const auto& cell : table5) {
        const double norm = to_double(norm_squared(rule_for(cell.m, cell.N)).norm);
        worst = std::max(worst, std::abs(norm - cell.norm) / cell.norm);
    }
    const double seconds =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count() /
        1000.0;
    report(1, "norm table reproduction at <= 1% relative deviation", worst <= 0.01 && seconds < 5.0,
           "worst deviation " + fmt(worst) + ", " + fmt(seconds) + " s");
}

void criterion_2_oracle_equivalence() {
    double worst_coeff = 0, worst_norm = 0;
    for (int m = 1; m <= 4; ++m) {
        for (int N : {5, 10, 20, 50}) {
            if (N < m) continue;
            const auto& rule = rule_for(m, N);
            const auto oracle = oracle_rule<R>(space_order(m), N);
            R dev(0);
            for (int b = 0; b <= N; ++b) dev = std::max(dev, R(abs(rule.coeffs[b] - oracle.coeffs[b])));
            worst_coeff = std::max(worst_coeff, to_double(dev));
            const R n1 = norm_squared(rule).norm;
            const R n2 = norm_squared(oracle).norm;
            worst_norm = std::max(worst_norm, to_double(R(abs(n1 - n2) / n1)));
        }
    }
    report(2, "construction matches the dense saddle solve", worst_coeff <= 1e-8 && worst_norm <= 1e-10,
           "worst coefficient deviation " + fmt(worst_coeff) + ", worst norm deviation " + fmt(worst_norm));
}

void criterion_3_exactness() {
    double worst_exp = 0, worst_mono = 0;
    auto probe = [&](const quadrature_rule<R>& rule) {
        compensated_sum<R> acc;
        for (int b = 0; b <= rule.N; ++b) acc.add(rule.coeffs[b] * exp(-rule.nodes[b]));
        worst_exp = std::max(worst_exp, to_double(R(abs(acc.value() - (R(1) - exp(R(-1)))))));
        for (int alpha = 0; alpha <= rule.m - 2; ++alpha) {
            compensated_sum<R> macc;
            for (int b = 0; b <= rule.N; ++b)
                macc.add(rule.coeffs[b] * pow_int(rule.nodes[b], static_cast<unsigned long>(alpha)));
            worst_mono = std::max(worst_mono, to_double(R(abs(macc.value() - R(1) / (alpha + 1)))));
        }
    };
    for (int m = 1; m <= 4; ++m)
        for (int N : {5, 10, 20, 50, 100})
            if (N >= m) probe(rule_for(m, N));
    report(3, "every rule is exact on e^{-x} and low monomials", worst_exp <= 1e-12 && worst_mono <= 1e-11,
           "worst e^{-x} residual " + fmt(worst_exp) + ", worst monomial residual " + fmt(worst_mono));
}

void criterion_4_discrete_operator_identities() {
    bool ok = true;
    double worst_ratio = 0;  // error / (10 * truncation bound)
    std::ostringstream note;
    for (int m : {2, 3, 4}) {
        const R h = R(1) / 10;
        const auto op = build_discrete_operator(space_order(m), h);
        const long reach = op.window / 2;
        const long half = op.window + reach;
        const R E = exp(h);

        auto samples = [&](auto&& f) {
            std::vector<R> v(2 * half + 1);
            for (long b = -half; b <= half; ++b) v[static_cast<std::size_t>(b + half)] = f(b);
            return v;
        };
        auto check_conv = [&](const std::vector<R>& f, auto&& expected) {
            const auto conv = convolve(op, f);
            const R allowance = R(10) * conv.truncation_bound;
            for (long b = -reach; b <= reach; ++b) {
                const R err = abs(conv.at(b) - expected(b));
                worst_ratio = std::max(worst_ratio, to_double(R(err / allowance)));
                if (!(err <= allowance)) ok = false;
            }
        };

        auto zero = [](long) { return R(0); };
        check_conv(samples([&](long b) {
                       return pow_int(E, static_cast<unsigned long>(half)) /
                              pow_int(E, static_cast<unsigned long>(half - b));
                   }),
                   zero);
        check_conv(samples([&](long b) {
                       return pow_int(E, static_cast<unsigned long>(half - b)) /
                              pow_int(E, static_cast<unsigned long>(half));
                   }),
                   zero);
        for (int n = 0; n <= 2 * m - 3; ++n)
            check_conv(samples([&](long b) {
                           R v(1);
                           const R x = h * R(b);
                           for (int i = 0; i < n; ++i) v *= x;
                           return v;
                       }),
                       zero);
        check_conv(samples([&](long b) { return green_kernel(R(h * R(b)), space_order(m)); }),
                   [](long b) { return b == 0 ? R(1) : R(0); });
        check_conv(samples([&](long b) { return rhs_moment_extended(R(h * R(b)), space_order(m)); }),
                   [&](long) { return h; });
    }
    report(4, "discrete operator annihilation, delta and moment identities", ok,
           "worst error at " + fmt(worst_ratio) + " of the allowance");
}

void criterion_5_closed_form_cross_checks() {
    double worst_m2 = 0;
    for (int N : {10, 50, 100}) {
        const auto cf = closed_form_m2<R>(N);
        const auto pipeline = coefficients_general<R>(space_order(2), N);
        for (int b = 0; b <= N; ++b)
            worst_m2 = std::max(worst_m2, to_double(R(abs(cf.coeffs[b] - pipeline.coeffs[b]))));
    }
    double worst_cor = 0;
    for (int m : {3, 4}) {
        for (int N : {10, 50, 100}) {
            const R h = R(1) / N;
            const auto roots = stable_roots_for(space_order(m), h);
            const auto general = solve_ab(assemble_system(space_order(m), N, roots), roots);
            const auto special = solve_ab(assemble_specialized_system(space_order(m), N, roots), roots);
            const auto rule_a = detail::rule_from_ab(space_order(m), N, general);
            const auto rule_b = detail::rule_from_ab(space_order(m), N, special);
            for (int b = 0; b <= N; ++b)
                worst_cor = std::max(worst_cor, to_double(R(abs(rule_a.coeffs[b] - rule_b.coeffs[b]))));
        }
    }
    report(5, "closed forms and specialized systems agree with the general assembly",
           worst_m2 <= 1e-11 && worst_cor <= 1e-11,
           "m=2 route deviation " + fmt(worst_m2) + ", specialized-system deviation " + fmt(worst_cor));
}

void criterion_6_bound_validity() {
    bool ok = true;
    double worst_margin = 0;  // error / bound
    for (int m = 1; m <= 4; ++m) {
        for (int N : {10, 50, 100}) {
            const auto& rule = rule_for(m, N);
            const auto rep = norm_squared(rule);
            for (const std::string& name : {std::string("sin"), std::string("cos"), std::string("exp"),
                                            std::string("poly:") + std::to_string(m)}) {
                const auto fn = make_integrand<R>(name);
                std::vector<R> samples(rule.nodes.size());
                for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = fn.eval(rule.nodes[i]);
                const R err = abs(integrate(rule, samples) - fn.exact_integral);
                const R bound = error_bound(rep, fn.seminorm(m));
                if (!(err <= bound)) ok = false;
                worst_margin = std::max(worst_margin, to_double(R(err / bound)));
            }
        }
    }
    report(6, "quadrature errors never exceed the Cauchy-Schwarz bound", ok,
           "worst error/bound ratio " + fmt(worst_margin));
}

void criterion_7_norm_decay_ratios() {
    double worst = 0;
    for (int m = 1; m <= 4; ++m) {
        double ref10 = 0, ref100 = 0;
        for (const auto& cell : table5) {
            if (cell.m == m && cell.N == 10) ref10 = cell.norm;
            if (cell.m == m && cell.N == 100) ref100 = cell.norm;
        }
        const double computed =
            to_double(R(norm_squared(rule_for(m, 10)).norm / norm_squared(rule_for(m, 100)).norm));
        worst = std::max(worst, std::abs(computed - ref10 / ref100) / (ref10 / ref100));
    }
    report(7, "norm decay ratios N=10 to N=100 match the reference table", worst <= 0.05,
           "worst ratio deviation " + fmt(worst));
}

}  // namespace

int main() {
    try {
        criterion_1_table_reproduction();
        criterion_2_oracle_equivalence();
        criterion_3_exactness();
        criterion_4_discrete_operator_identities();
        criterion_5_closed_form_cross_checks();
        criterion_6_bound_validity();
        criterion_7_norm_decay_ratios();
    } catch (const std::exception& ex) {
        std::printf("[FAIL] acceptance aborted: %s\n", ex.what());
        return failures + 1;
    }
    std::printf("%d of 7 criteria passed\n", 7 - failures);
    return failures;
}
