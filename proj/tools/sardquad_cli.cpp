// Command-line front end: construct optimal rules, evaluate error-functional
// norms, integrate built-in test functions, verify closed forms against the
// dense saddle-system solve, and dump the discrete operator.
//
// All numerics run in 50-digit floats; outputs are reported as doubles.
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <CLI11.hpp>

#include <sardquad/sardquad.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using sardquad::mp_real;
using sardquad::space_order;

constexpr const char* version_string = "sardquad 1.0.0";

struct reference_norm {
    int m;
    int N;
    double value;
};

// Reference values for ||l|| on the (m, N) grid.
constexpr reference_norm reference_norms[] = {
    {1, 10, 0.02886},   {1, 50, 0.00577},     {1, 100, 0.00289},
    {2, 10, 0.000424},  {2, 50, 0.00001534},  {2, 100, 0.37802e-5},
    {3, 10, 0.0000108}, {3, 50, 0.5643e-7},   {3, 100, 0.6435e-8},
    {4, 10, 0.5051e-6}, {4, 50, 0.3854e-9},   {4, 100, 0.1821e-10},
};

sardquad::quadrature_rule<double> to_double_rule(const sardquad::quadrature_rule<mp_real>& rule) {
    sardquad::quadrature_rule<double> out;
    out.m = rule.m;
    out.N = rule.N;
    out.h = sardquad::to_double(rule.h);
    out.method = rule.method;
    out.nodes.reserve(rule.nodes.size());
    out.coeffs.reserve(rule.coeffs.size());
    for (const auto& x : rule.nodes) out.nodes.push_back(sardquad::to_double(x));
    for (const auto& c : rule.coeffs) out.coeffs.push_back(sardquad::to_double(c));
    return out;
}

int cmd_rule(int m, int N, const std::string& format, std::string out_path) {
    const auto rule = sardquad::coefficients<mp_real>(space_order(m), N);
    const auto report = sardquad::norm_squared(rule);
    const double norm = sardquad::to_double(report.norm);
    const auto drule = to_double_rule(rule);

    if (out_path.empty())
        out_path = "rule_m" + std::to_string(m) + "_N" + std::to_string(N) + (format == "csv" ? ".csv" : ".json");
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return 1;
    }
    if (format == "csv") {
        sardquad::rule_to_csv(os, drule);
    } else {
        os << sardquad::rule_to_json(drule, norm).dump(2) << '\n';
    }
    std::printf("norm = %.17g\n", norm);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_table5() {
    std::printf("%3s %5s %14s %14s %12s\n", "m", "N", "computed", "reference", "rel.dev");
    bool all_ok = true;
    for (const auto& ref : reference_norms) {
        const auto rule = sardquad::coefficients<mp_real>(space_order(ref.m), ref.N);
        const double norm = sardquad::to_double(sardquad::norm_squared(rule).norm);
        const double dev = std::abs(norm - ref.value) / ref.value;
        all_ok = all_ok && dev <= 0.01;
        std::printf("%3d %5d %14.6e %14.6e %12.2e\n", ref.m, ref.N, norm, ref.value, dev);
    }
    if (!all_ok) {
        std::cerr << "error: a computed norm deviates more than 1% from its reference value\n";
        return 2;
    }
    return 0;
}

int cmd_verify(int m, int N) {
    if (m > 6 || N > 200) {
        std::cerr << "error: verify supports m <= 6 and N <= 200\n";
        return 1;
    }
    const auto rule = sardquad::coefficients<mp_real>(space_order(m), N);
    const mp_real h = mp_real(1) / N;
    std::vector<mp_real> nodes(N + 1);
    for (int b = 0; b <= N; ++b) nodes[b] = h * b;
    const auto oracle = sardquad::solve_full_system(space_order(m), nodes);
    if (oracle.condition_warning)
        std::printf("WARN condition estimate %.3e exceeds 1e12; oracle digits are degraded\n",
                    sardquad::to_double(oracle.condition_estimate));

    mp_real dev(0);
    for (int b = 0; b <= N; ++b) dev = std::max(dev, mp_real(abs(rule.coeffs[b] - oracle.coeffs[b])));

    sardquad::quadrature_rule<mp_real> orule = rule;
    orule.coeffs = oracle.coeffs;
    orule.method = sardquad::rule_method::oracle;
    const double norm_closed = sardquad::to_double(sardquad::norm_squared(rule).norm);
    const double norm_oracle = sardquad::to_double(sardquad::norm_squared(orule).norm);

    const bool pass = dev <= mp_real(1e-8);
    std::printf("max |C_closed - C_oracle| = %.3e\n", sardquad::to_double(dev));
    std::printf("norm (closed) = %.12e\n", norm_closed);
    std::printf("norm (oracle) = %.12e\n", norm_oracle);
    std::printf("%s (threshold 1e-8)\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 2;
}

int cmd_integrate(int m, int N, const std::string& fn_name) {
    const auto fn = sardquad::make_integrand<mp_real>(fn_name);
    const auto rule = sardquad::coefficients<mp_real>(space_order(m), N);
    auto report = sardquad::norm_squared(rule);

    std::vector<mp_real> samples(rule.nodes.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = fn.eval(rule.nodes[i]);
    const mp_real approx = sardquad::integrate(rule, samples);
    const mp_real actual_error = abs(approx - fn.exact_integral);
    const mp_real bound = sardquad::error_bound(report, fn.seminorm(m));
    report.bound_factor = bound;

    std::printf("approximation = %.17g\n", sardquad::to_double(approx));
    std::printf("exact value   = %.17g\n", sardquad::to_double(fn.exact_integral));
    std::printf("actual error  = %.6e\n", sardquad::to_double(actual_error));
    std::printf("error bound   = %.6e\n", sardquad::to_double(bound));
    // members of the exactness set carry a zero bound; allow the stated
    // 1e-12 exactness budget on top of it
    if (actual_error > bound + mp_real(1e-12)) {
        std::cerr << "error: actual error exceeds the Cauchy-Schwarz bound\n";
        return 2;
    }
    return 0;
}

int cmd_dop(int m, int N, std::optional<int> window, const std::string& out_path) {
    const mp_real h = mp_real(1) / N;
    const auto op = sardquad::build_discrete_operator(space_order(m), h, window);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return 1;
        }
        os = &file;
    }
    (*os) << "beta,value\n";
    char buf[64];
    for (long beta = -op.window; beta <= op.window; ++beta) {
        std::snprintf(buf, sizeof buf, "%.17g", sardquad::to_double(op.value(beta)));
        (*os) << beta << ',' << buf << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal quadrature rules on [0,1] for the space W2^(m,m-1)"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    int m = 1, N = 10, window_arg = 0;
    std::string format = "json", out_path, fn_name;

    auto* rule = app.add_subcommand("rule", "construct a rule and write it to a file");
    rule->add_option("--m", m, "space order m >= 1")->required();
    rule->add_option("--N", N, "number of subintervals")->required();
    rule->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    rule->add_option("--out", out_path, "output path (default rule_m{m}_N{N}.{ext})");

    auto* table5 = app.add_subcommand("table5", "norm table for m = 1..4, N = 10, 50, 100");

    auto* verify = app.add_subcommand("verify", "compare a constructed rule against the dense solve");
    verify->add_option("--m", m, "space order m in 1..6")->required();
    verify->add_option("--N", N, "number of subintervals, N <= 200")->required();

    auto* integrate = app.add_subcommand("integrate", "integrate a built-in function and check the bound");
    integrate->add_option("--m", m, "space order")->required();
    integrate->add_option("--N", N, "number of subintervals")->required();
    integrate->add_option("--fn", fn_name, "exp_neg, sin, cos, exp, or poly:k")->required();

    auto* dop = app.add_subcommand("dop", "dump discrete operator values as CSV");
    dop->add_option("--m", m, "space order m >= 2")->required();
    dop->add_option("--N", N, "grid refinement, h = 1/N")->required();
    dop->add_option("--window", window_arg, "window half-width (default from decay rate)");
    dop->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rule->parsed()) return cmd_rule(m, N, format, out_path);
        if (table5->parsed()) return cmd_table5();
        if (verify->parsed()) return cmd_verify(m, N);
        if (integrate->parsed()) return cmd_integrate(m, N, fn_name);
        if (dop->parsed())
            return cmd_dop(m, N, window_arg > 0 ? std::optional<int>(window_arg) : std::nullopt, out_path);
    } catch (const sardquad::invalid_argument_error& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    } catch (const sardquad::numerical_error& ex) {
        std::cerr << "numerical failure: " << ex.what() << '\n';
        return 2;
    }
    return 1;
}
