#include <catch_amalgamated.hpp>

#include <sardquad/discrete_operator.hpp>
#include <sardquad/kernel.hpp>

#include <vector>

using namespace sardquad;

namespace {

/// Samples of f over the centered grid beta = -half..half.
template <typename F>
std::vector<mp_real> sample(long half, F&& f) {
    std::vector<mp_real> v(2 * half + 1);
    for (long b = -half; b <= half; ++b) v[static_cast<std::size_t>(b + half)] = f(b);
    return v;
}

}  // namespace

TEST_CASE("operator values are even and follow the geometric tail") {
    const mp_real h = mp_real(1) / 10;
    for (int m : {2, 3, 4}) {
        const auto op = build_discrete_operator(space_order(m), h);
        CHECK(op.window >= 50);
        for (long b : {0L, 1L, 5L, 20L, static_cast<long>(op.window) + 7L})
            CHECK(op.value(b) == op.value(-b));

        const mp_real amp = op.amplitude();
        const mp_real q = op.decay_rate();
        for (long b = 2; b <= op.window; ++b)
            CHECK(abs(op.value(b)) <=
                  amp * pow_int(q, static_cast<unsigned long>(b - 1)) * (mp_real(1) + mp_real(1e-30)));

        // stored values equal the tail formula from |beta| >= 2 on
        for (long b = 2; b <= op.window; b += 11) {
            mp_complex acc(0);
            for (std::size_t k = 0; k < op.tail_coeffs.size(); ++k)
                acc += op.tail_coeffs[k] * pow_int(op.roots.roots[k], static_cast<unsigned long>(b - 1));
            CHECK(abs(acc.imag()) <= mp_real(1e-12) * (mp_real(1) + abs(acc)));
            CHECK(abs(acc.real() / op.p_lead - op.value(b)) <= mp_real(1e-40) * (mp_real(1) + abs(op.value(b))));
        }
    }
}

TEST_CASE("build_discrete_operator rejects m = 1 and tiny windows") {
    CHECK_THROWS_AS(build_discrete_operator(space_order(1), mp_real(1) / 10), invalid_argument_error);
    CHECK_THROWS_AS(build_discrete_operator(space_order(3), mp_real(1) / 10, 1), invalid_argument_error);
}

TEST_CASE("annihilation and delta identities") {
    const mp_real h = mp_real(1) / 10;
    for (int m : {2, 3, 4}) {
        const auto op = build_discrete_operator(space_order(m), h);
        const long reach = op.window / 2;
        const long half = op.window + reach;
        const mp_real E = exp(h);

        SECTION("m = " + std::to_string(m)) {
            auto check_zero = [&](const std::vector<mp_real>& f) {
                const auto conv = convolve(op, f);
                REQUIRE(conv.reach == reach);
                for (long b = -reach; b <= reach; ++b)
                    CHECK(abs(conv.at(b)) <= mp_real(10) * conv.truncation_bound);
            };

            check_zero(sample(half, [&](long b) { return pow_int(E, static_cast<unsigned long>(half)) /
                                                          pow_int(E, static_cast<unsigned long>(half - b)); }));
            check_zero(sample(half, [&](long b) { return pow_int(E, static_cast<unsigned long>(half - b)) /
                                                          pow_int(E, static_cast<unsigned long>(half)); }));
            for (int n = 0; n <= 2 * m - 3; ++n)
                check_zero(sample(half, [&](long b) {
                    const mp_real x = h * mp_real(b);
                    mp_real v(1);
                    for (int i = 0; i < n; ++i) v *= x;
                    return v;
                }));

            const auto delta = convolve(op, sample(half, [&](long b) {
                                            return green_kernel(mp_real(h * mp_real(b)), space_order(m));
                                        }));
            for (long b = -reach; b <= reach; ++b) {
                const mp_real expected = b == 0 ? mp_real(1) : mp_real(0);
                CHECK(abs(delta.at(b) - expected) <= mp_real(10) * delta.truncation_bound);
            }

            const auto tval = convolve(op, sample(half, [&](long b) {
                                           return rhs_moment_extended(mp_real(h * mp_real(b)), space_order(m));
                                       }));
            for (long b = -reach; b <= reach; ++b)
                CHECK(abs(tval.at(b) - h) <= mp_real(10) * tval.truncation_bound);
        }
    }
}

TEST_CASE("convolve refuses an insufficient window") {
    const auto op = build_discrete_operator(space_order(2), mp_real(1) / 10);
    std::vector<mp_real> narrow(2 * (op.window - 3) + 1, mp_real(1));
    try {
        convolve(op, narrow);
        FAIL("expected window_error");
    } catch (const window_error& ex) {
        CHECK(ex.required_half_width() == op.window);
    }
    std::vector<mp_real> even_sized(10, mp_real(1));
    CHECK_THROWS_AS(convolve(op, even_sized), invalid_argument_error);
}
