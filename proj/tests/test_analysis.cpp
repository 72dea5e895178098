#include <doctest.h>

#include "blockortho/analysis.hpp"
#include "blockortho/errors.hpp"
#include "helpers.hpp"

using namespace bop;

namespace {

const Measure hermite1 = Measure::gaussian(1);
const Measure hermite2 = Measure::gaussian(2);
const Measure laguerre1 = Measure::gamma(1, 1);
const Measure laguerre2 = Measure::gamma(2, 1);

bool all_pass(const std::vector<IntegralReport>& r) {
    for (const auto& x : r)
        if (!x.pass || x.rel_err > kIntegralTolerance) return false;
    return !r.empty();
}

}  // namespace

TEST_CASE("Gauss rules are exact to degree 2n-1") {
    for (const auto& m : {hermite1, laguerre2, Measure::gamma(1, Rational(5, 2))}) {
        const auto rule = gauss_rule(m, 6);
        const auto mu = m.moments(11);
        for (std::size_t k = 0; k <= 11; ++k) {
            double s = 0;
            for (std::size_t j = 0; j < rule.size(); ++j) s += rule.weights[j] * std::pow(rule.nodes[j], static_cast<double>(k));
            CHECK(std::abs(s - mu.mu[k]) <= 1e-12 * std::max(1.0, mu.mu[k]));
        }
    }
}

TEST_CASE("determinant integrals") {
    for (const auto& [m1, m2] : {std::pair{hermite1, hermite2}, {laguerre1, laguerre2}}) {
        for (auto [i, n] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 2}}) {
            const auto s = build_sbo<Rational>(m1, m2, i, 5);
            const auto z = verify_Z_integral(s, n, n + 1);
            CHECK(all_pass(z));
            if (i == 0) CHECK(z.size() == 3);
        }
    }
}

TEST_CASE("polynomial integrals") {
    SUBCASE("Hermite pair known values") {
        const auto s12 = build_sbo<Rational>(hermite1, hermite2, 1, 4);
        const auto r12 = verify_P_integral(s12, 2, 4);
        CHECK(r12.max_coeff_err <= 1e-10);
        CHECK(r12.integral.coeff(0) == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(std::abs(r12.integral.coeff(1)) <= 1e-12);
        const auto s23 = build_sbo<Rational>(hermite1, hermite2, 2, 4);
        const auto r23 = verify_P_integral(s23, 3, 5);
        CHECK(r23.integral.coeff(1) == doctest::Approx(-1.5).epsilon(1e-12));
        CHECK(all_pass(r23.checks));
    }
    SUBCASE("first measure only") {
        const auto s = build_sbo<Rational>(laguerre1, laguerre2, 0, 3);
        const auto r = verify_P_integral(s, 1, 3);
        CHECK(r.integral.coeff(0) == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(all_pass(r.checks));
        CHECK(r.checks.size() == 3);
    }
    SUBCASE("Laguerre pair") {
        for (auto [i, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {1, 3}, {2, 3}}) {
            const auto s = build_sbo<double>(laguerre1, laguerre2, i, 5);
            CHECK(all_pass(verify_P_integral(s, n, n + 2).checks));
        }
    }
}

TEST_CASE("node count is enough: doubling changes nothing") {
    const auto s = build_sbo<Rational>(laguerre1, laguerre2, 1, 4);
    const auto a = verify_Z_integral(s, 3, 4);
    const auto b = verify_Z_integral(s, 3, 8);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k].lhs - b[k].lhs) <= 1e-12 * std::abs(b[k].lhs));
}

TEST_CASE("integral guards") {
    const auto s = build_sbo<Rational>(hermite1, hermite2, 0, 6);
    CHECK_THROWS_AS(verify_Z_integral(s, 4, 6), DimensionCap);
    CHECK_THROWS_AS(verify_Z_integral(s, 2, 2), InsufficientNodes);
    const auto s3 = build_sbo<Rational>(hermite1, hermite2, 3, 6);
    CHECK_THROWS_AS(verify_P_integral(s3, 4, 6), DimensionCap);
}

TEST_CASE("zeros") {
    SUBCASE("derived quadratic and quartic") {
        const auto l = build_sbo<Rational>(laguerre1, laguerre2, 1, 3);
        const auto z = zero_report(l, 2);
        CHECK(z.count == 2);
        CHECK(z.satisfies_theorem);
        CHECK(z.brackets[0].lo == doctest::Approx((2.5 - std::sqrt(4.25)) / 2).epsilon(1e-9));
        const auto h = build_sbo<Rational>(hermite1, hermite2, 2, 5);
        CHECK(zero_report(h, 4).count == 4);
    }
    SUBCASE("property: at least first sign changes, exactly n next to the diagonal") {
        for (const auto& [m1, m2] : {std::pair{hermite1, hermite2}, {laguerre1, laguerre2}})
            for (std::size_t i = 0; i < 9; ++i) {
                const auto s = build_sbo<Rational>(m1, m2, i, 9);
                for (std::size_t n = std::max<std::size_t>(i, 1); n < 9; ++n) {
                    const auto z = zero_report(s, n);
                    CHECK(z.satisfies_theorem);
                    CHECK(z.count >= i);
                    if (i == n || i + 1 == n) CHECK(z.count == n);
                }
            }
    }
}
