#include <catch_amalgamated.hpp>

#include <sardquad/error_norm.hpp>
#include <sardquad/oracle.hpp>
#include <sardquad/solver.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace sardquad;

TEST_CASE("oracle matches the closed forms on uniform nodes") {
    SECTION("m = 1 vs the equal-weight rule") {
        const auto oracle = oracle_rule<mp_real>(space_order(1), 10);
        const auto closed = closed_form_m1<mp_real>(10);
        for (int b = 0; b <= 10; ++b)
            CHECK(abs(oracle.coeffs[b] - closed.coeffs[b]) <= mp_real(1e-10));
    }
    SECTION("m = 2 vs the boundary-layer closed form") {
        const auto oracle = oracle_rule<mp_real>(space_order(2), 10);
        const auto closed = closed_form_m2<mp_real>(10);
        for (int b = 0; b <= 10; ++b)
            CHECK(abs(oracle.coeffs[b] - closed.coeffs[b]) <= mp_real(1e-9));
    }
}

TEST_CASE("oracle solutions satisfy the constraint rows tightly") {
    const int N = 10, m = 3;
    const auto rule = oracle_rule<mp_real>(space_order(m), N);
    for (int alpha = 0; alpha <= m - 2; ++alpha) {
        compensated_sum<mp_real> acc;
        for (int b = 0; b <= N; ++b)
            acc.add(rule.coeffs[b] * pow_int(rule.nodes[b], static_cast<unsigned long>(alpha)));
        CHECK(abs(acc.value() - mp_real(1) / (alpha + 1)) <= mp_real(1e-11));
    }
    compensated_sum<mp_real> acc;
    for (int b = 0; b <= N; ++b) acc.add(rule.coeffs[b] * exp(-rule.nodes[b]));
    CHECK(abs(acc.value() - (mp_real(1) - exp(mp_real(-1)))) <= mp_real(1e-12));
}

TEST_CASE("oracle input validation") {
    CHECK_THROWS_AS(solve_full_system(space_order(3), std::vector<mp_real>{mp_real(0), mp_real(1)}),
                    invalid_argument_error);
    CHECK_THROWS_AS(solve_full_system(space_order(1), std::vector<mp_real>{mp_real(0), mp_real("1.2")}),
                    invalid_argument_error);
    CHECK_THROWS_AS(
        solve_full_system(space_order(1), std::vector<mp_real>{mp_real(0), mp_real("0.5"), mp_real("0.5")}),
        invalid_argument_error);
}

TEST_CASE("permuting the nodes permutes the coefficients") {
    std::vector<mp_real> nodes;
    for (int i = 0; i <= 12; ++i) nodes.push_back(mp_real(i) / 12);
    const auto base = solve_full_system(space_order(2), nodes);

    std::vector<std::size_t> perm(nodes.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937 rng(20260809);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<mp_real> shuffled(nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = nodes[perm[i]];
    const auto permuted = solve_full_system(space_order(2), shuffled);
    for (std::size_t i = 0; i < perm.size(); ++i)
        CHECK(abs(permuted.coeffs[i] - base.coeffs[perm[i]]) <= mp_real(1e-30));
}

TEST_CASE("oracle solution minimizes the norm over feasible perturbations") {
    const int N = 10, m = 2;
    auto rule = oracle_rule<mp_real>(space_order(m), N);
    const mp_real base = norm_squared(rule).norm_sq;

    // orthonormal basis of the constraint row space (x^0 .. x^{m-2}, e^{-x})
    std::vector<std::vector<mp_real>> rows;
    for (int alpha = 0; alpha <= m - 2; ++alpha) {
        std::vector<mp_real> r(N + 1);
        for (int b = 0; b <= N; ++b) r[b] = pow_int(rule.nodes[b], static_cast<unsigned long>(alpha));
        rows.push_back(std::move(r));
    }
    {
        std::vector<mp_real> r(N + 1);
        for (int b = 0; b <= N; ++b) r[b] = exp(-rule.nodes[b]);
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            mp_real dot(0);
            for (int b = 0; b <= N; ++b) dot += rows[i][b] * rows[j][b];
            for (int b = 0; b <= N; ++b) rows[i][b] -= dot * rows[j][b];
        }
        mp_real nrm(0);
        for (int b = 0; b <= N; ++b) nrm += rows[i][b] * rows[i][b];
        nrm = sqrt(nrm);
        for (int b = 0; b <= N; ++b) rows[i][b] /= nrm;
    }

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const std::vector<mp_real> optimal = rule.coeffs;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<mp_real> v(N + 1);
        for (auto& x : v) x = mp_real(uni(rng));
        // project onto the feasible directions (null space of the constraints)
        for (const auto& r : rows) {
            mp_real dot(0);
            for (int b = 0; b <= N; ++b) dot += v[b] * r[b];
            for (int b = 0; b <= N; ++b) v[b] -= dot * r[b];
        }
        mp_real vmax(0);
        for (const auto& x : v) vmax = std::max(vmax, mp_real(abs(x)));
        if (vmax == mp_real(0)) continue;
        for (int b = 0; b <= N; ++b) rule.coeffs[b] = optimal[b] + mp_real(1e-3) * v[b] / vmax;
        CHECK(norm_squared(rule).norm_sq >= base);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("condition estimate is reported") {
    std::vector<mp_real> nodes;
    for (int i = 0; i <= 20; ++i) nodes.push_back(mp_real(i) / 20);
    const auto sol = solve_full_system(space_order(3), nodes);
    CHECK(sol.condition_estimate > mp_real(1));
    CHECK(sol.residual >= mp_real(0));
    CHECK(sol.multipliers.size() == 3);
}
