#include <doctest.h>

#include "blockortho/errors.hpp"
#include "blockortho/standard_ortho.hpp"
#include "helpers.hpp"

using namespace bop;

TEST_CASE("monic Hermite and Laguerre polynomials") {
    const auto h = build_standard<Rational>(Measure::gaussian(1), 4);
    CHECK(h.polys[0] == rpoly({"1"}));
    CHECK(h.polys[1] == rpoly({"0", "1"}));
    CHECK(h.polys[2] == rpoly({"-1/2", "0", "1"}));
    CHECK(h.polys[3] == rpoly({"0", "-3/2", "0", "1"}));
    const auto l = build_standard<Rational>(Measure::gamma(1, 1), 3);
    CHECK(l.polys[2] == rpoly({"2", "-4", "1"}));
    const auto one = build_standard<Rational>(Measure::gamma(2, 3), 1);
    CHECK(one.polys[0] == rpoly({"1"}));
    CHECK(one.norms[0] == 1);
    CHECK(one.absolute_norm(0) == doctest::Approx(one.c0()));
}

TEST_CASE("agrees with the independent linear-solve oracle") {
    for (const auto& [m, mu] : {std::pair{Measure::gaussian(Rational(3, 2)), oracle::gaussian_moments(Rational(3, 2), 20)},
                                {Measure::gamma(2, Rational(1, 2)), oracle::gamma_moments(2, Rational(1, 2), 20)}}) {
        const auto b = build_standard<Rational>(m, 10);
        for (std::size_t n = 0; n < 10; ++n) CHECK(oracle::same(coeffs_of(b.polys[n]), oracle::monic_orthogonal(mu, n)));
    }
}

TEST_CASE("recurrence coefficients") {
    const auto h = build_standard<Rational>(Measure::gaussian(1), 6);
    const auto rec = recurrence_coeffs(h);
    for (std::size_t n = 0; n < rec.size(); ++n) {
        CHECK(rec[n].scale == 1);
        CHECK(rec[n].shift == 0);
        CHECK(rec[n].lag == Rational(static_cast<long>(n)) / 2);
    }
    const auto l = build_standard<Rational>(Measure::gamma(1, 1), 3);
    CHECK(recurrence_coeffs(l)[1].shift == -3);
    CHECK(recurrence_coeffs(l)[0].lag == 0);
    for (std::size_t n = 0; n + 1 < 6; ++n) CHECK(recurrence_residual(h, n).is_zero());
}

TEST_CASE("three-term rebuild equals the Hankel build") {
    for (const auto& m : {Measure::gaussian(1), Measure::gamma(1, 2), Measure::gamma(2, Rational(1, 3))}) {
        const auto b = build_standard<Rational>(m, 8);
        const auto r = build_by_recurrence<Rational>(m, 8);
        for (std::size_t n = 0; n < 8; ++n) CHECK(r[n] == b.polys[n]);
    }
    CHECK(build_by_recurrence<Rational>(Measure::gaussian(1), 1) == std::vector<Polynomial<Rational>>{rpoly({"1"})});
}

TEST_CASE("parity split build") {
    const auto g1 = parity_split_build<Rational>(Measure::gaussian(1), 3);
    CHECK(g1.polys[2] == rpoly({"-1/2", "0", "1"}));
    CHECK(g1.polys[1] == rpoly({"0", "1"}));
    const auto g2 = parity_split_build<Rational>(Measure::gaussian(2), 4);
    CHECK(g2.polys[3] == rpoly({"0", "-3/4", "0", "1"}));
    for (auto mode : {Normalization::Monic, Normalization::DetNormalized}) {
        const auto full = build_standard<Rational>(Measure::gaussian(2), 8, mode);
        const auto split = parity_split_build<Rational>(Measure::gaussian(2), 8, mode);
        CHECK(full.polys == split.polys);
        CHECK(full.gram_dets == split.gram_dets);
    }
    CHECK_THROWS_AS(parity_split_build<Rational>(Measure::gamma(1, 1), 3), NotSymmetric);
}

TEST_CASE("determinant oracle for standard polynomials") {
    for (auto mode : {Normalization::Monic, Normalization::DetNormalized}) {
        const auto b = build_standard<Rational>(Measure::gamma(1, 3), 7, mode);
        for (std::size_t n = 0; n < 7; ++n) {
            const auto o = standard_determinant_oracle(b, n);
            CHECK(o.poly == b.polys[n]);
            CHECK(o.norm == b.norms[n]);
            for (std::size_t m = 0; m <= n; ++m) {
                CHECK(o.to_monomial[m] == b.to_monomial(m, n));
                CHECK(o.from_monomial[m] == b.from_monomial(m, n));
            }
        }
    }
}

TEST_CASE("normalizations") {
    const auto det = build_standard<Rational>(Measure::gaussian(1), 5, Normalization::DetNormalized);
    for (std::size_t n = 0; n < 5; ++n) CHECK(det.leading[n] == det.gram_dets[n]);
    CHECK_THROWS_AS(build_standard<Rational>(Measure::gaussian(1), 4, Normalization::Orthonormal), NotRepresentable);
    const auto on = build_standard<double>(Measure::gaussian(1), 12, Normalization::Orthonormal);
    for (std::size_t n = 0; n < 12; ++n) {
        CHECK(on.norms[n] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(inner_product<double>(Measure::gaussian(1), on.polys[n], on.polys[n]) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(parse_normalization("det-normalized") == Normalization::DetNormalized);
    CHECK_THROWS_AS(parse_normalization("weird"), ParseError);
}

TEST_CASE("float orthogonality residual") {
    const auto b = build_standard<double>(Measure::gaussian(1), 12);
    double hmax = 0, worst = 0;
    for (double h : b.norms) hmax = std::max(hmax, h);
    for (std::size_t j = 0; j < 12; ++j)
        for (std::size_t k = 0; k < j; ++k)
            worst = std::max(worst, std::abs(inner_product<double>(Measure::gaussian(1), b.polys[j], b.polys[k])));
    CHECK(worst <= 1e-10 * hmax);
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(build_standard<double>(Measure::gaussian(1), 21), ConditioningError);
    CHECK_NOTHROW(build_standard<Rational>(Measure::gaussian(1), 21));
    CHECK_THROWS_AS(build_standard<Rational>(Measure::gaussian(1), 0), IndexOutOfRange);
}

TEST_CASE("classical leading coefficients") {
    CHECK(hermite_leading(3) == 8);
    CHECK(laguerre_leading(3) == Rational(-1, 6));
    const auto h = build_standard<Rational>(Measure::gaussian(1), 4);
    // H_3 = 8x^3 - 12x.
    CHECK(with_leading(h.monic(3), hermite_leading(3)) == rpoly({"0", "-12", "0", "8"}));
}
