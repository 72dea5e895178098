#include <doctest.h>

#include "blockortho/errors.hpp"
#include "blockortho/multiblock.hpp"
#include "helpers.hpp"

using namespace bop;
using RP = Polynomial<Rational>;

namespace {

// The 2x2 system for (a02, a12) written out with Pochhammer moments, for
// third block x^2 + a12 x + a02 and second block x + a01.
std::pair<std::size_t, std::size_t> direct_ranks(const Rational& a01, const Rational& z23, const Rational& z13) {
    std::vector<std::vector<Rational>> g{{1, z13}, {z23 + a01, z23 * (z23 + 1 + a01)}};
    std::vector<Rational> v{-z13 * (z13 + 1), -z23 * (z23 + 1) * (z23 + 2 + a01)};
    auto aug = g;
    for (std::size_t r = 0; r < 2; ++r) aug[r].push_back(v[r]);
    return {oracle::rank(g), oracle::rank(aug)};
}

void check_block_orthogonality(const ThreeSubspaceProblem<Rational>& p, const ThirdSubspaceSolution<Rational>& s,
                               const RP& candidate) {
    for (std::size_t j = 0; j < p.n1; ++j) CHECK(inner_product(p.inner_13, s.constraint_basis[j], candidate) == 0);
    for (std::size_t j = p.n1; j < p.n1 + p.n2; ++j) CHECK(inner_product(p.inner_23, s.constraint_basis[j], candidate) == 0);
}

}  // namespace

TEST_CASE("gamma-weight generic and degenerate cases") {
    const auto u = laguerre_three_subspace(Rational(1), Rational(2), Rational(3));
    CHECK(u.solution.classification == Solvability::Unique);
    CHECK(u.second_block_constant == -1);
    CHECK(u.solution.basis[0] == rpoly({"6", "-6", "1"}));
    const auto none = laguerre_three_subspace(Rational(1), Rational(2), Rational(4));
    CHECK(none.solution.classification == Solvability::NoSolution);
    CHECK(none.solution.rank_g == 1);
    CHECK(none.solution.rank_augmented == std::vector<std::size_t>{2});
    CHECK(none.solution.label() == "NoSolution");
}

TEST_CASE("mixed case gives a one-parameter family") {
    for (Rational z13 : {Rational(3), Rational(5, 2), Rational(7)}) {
        const auto f = laguerre_three_subspace(std::nullopt, z13 - 1, z13);
        REQUIRE(f.solution.classification == Solvability::Family);
        CHECK(f.solution.free_parameters == 1);
        CHECK(f.solution.label() == "Family(1)");
        CHECK(f.second_block_constant == 0);
        CHECK(f.singular_consistent_possible);
        const RP& part = f.solution.basis[0];
        const RP& dir = f.solution.kernel[0];
        // part = x^2 - z13 (z13 + 1) + c (x - z13) and dir is a multiple of x - z13.
        const RP target = RP::monomial(2) - RP::constant(z13 * (z13 + 1));
        const RP diff = part - target;
        CHECK(diff.degree() <= 1);
        CHECK(diff(z13) == 0);
        CHECK(dir.degree() == 1);
        CHECK(dir(z13) == 0);
    }
}

TEST_CASE("agrees with the written-out system") {
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 5; ++c) {
                const auto r = laguerre_three_subspace(Rational(a), Rational(b), Rational(c));
                const auto [rg, ra] = direct_ranks(-Rational(a), b, c);
                CHECK(r.solution.rank_g == rg);
                CHECK(r.solution.rank_augmented[0] == ra);
                const Solvability expected =
                    ra > rg ? Solvability::NoSolution : (rg == 2 ? Solvability::Unique : Solvability::Family);
                CHECK(r.solution.classification == expected);
                // A consistent singular case needs the second block constant to vanish.
                CHECK_FALSE(r.singular_consistent_possible);
                CHECK(r.solution.classification != Solvability::Family);
            }
}

TEST_CASE("three symmetric products give a unique solution") {
    const Measure g1 = Measure::gaussian(1), g2 = Measure::gaussian(2), g3 = Measure::gaussian(3);
    ThreeSubspaceProblem<Rational> p{1, 1, 3, {RP::monomial(0), RP::monomial(1), RP::monomial(2)}, g2, g3, g1};
    const auto s = solve_third_subspace(p);
    REQUIRE(s.classification == Solvability::Unique);
    CHECK(s.constraint_basis[1] == RP::monomial(1));
    const auto mu = g2.moments(2).exact_mu;
    CHECK(s.basis[0] == RP::monomial(2) - RP::constant(mu[2]));
    check_block_orthogonality(p, s, s.basis[0]);
}

TEST_CASE("property: solutions satisfy both constraint blocks") {
    const Measure a = Measure::gamma(1, 2), b = Measure::gamma(2, 3), c = Measure::gaussian(1);
    ThreeSubspaceProblem<Rational> p{2, 1, 6, {}, a, b, c};
    for (std::size_t k = 0; k < 6; ++k) p.basis.push_back(RP::monomial(k));
    const auto s = solve_third_subspace(p);
    CHECK(s.rank_g >= 2);
    if (s.classification == Solvability::Unique)
        for (const auto& e : s.basis) check_block_orthogonality(p, s, e);

    const auto f = laguerre_three_subspace(std::nullopt, Rational(2), Rational(3));
    ThreeSubspaceProblem<Rational> pf{1, 1, 3, {RP::monomial(0), RP::monomial(1), RP::monomial(2)}, Measure::gamma(1, 3),
                                      Measure::gamma(1, 2), Measure::gaussian(1)};
    for (int t = -3; t <= 3; ++t) check_block_orthogonality(pf, f.solution, f.solution.basis[0] + f.solution.kernel[0] * Rational(t));
}

TEST_CASE("classification is invariant under rescaling the basis") {
    for (Rational k : {Rational(2), Rational(-1, 3)}) {
        for (auto [z12, z23, z13] : {std::tuple{1, 2, 3}, {1, 2, 4}}) {
            ThreeSubspaceProblem<Rational> p{1, 1, 3, {RP::monomial(0) * k, RP::monomial(1), RP::monomial(2) * k},
                                             Measure::gamma(1, z13), Measure::gamma(1, z23), Measure::gamma(1, z12)};
            const auto ref = laguerre_three_subspace(Rational(z12), Rational(z23), Rational(z13));
            CHECK(solve_third_subspace(p).classification == ref.solution.classification);
        }
    }
}

TEST_CASE("float backend reports the singular-value gap") {
    ThreeSubspaceProblem<double> p{1, 1, 3, {Polynomial<double>::monomial(0), Polynomial<double>::monomial(1), Polynomial<double>::monomial(2)},
                                   Measure::gamma(1, 4), Measure::gamma(1, 2), Measure::gamma(1, 1)};
    const auto s = solve_third_subspace(p);
    CHECK(s.classification == Solvability::NoSolution);
    CHECK(s.gap > 1e6);
    CHECK(s.singular_values.size() == 2);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(laguerre_three_subspace(Rational(0), Rational(1), Rational(1)), NonPositiveParameter);
    CHECK_THROWS_AS(laguerre_three_subspace(std::nullopt, Rational(-1), Rational(1)), NonPositiveParameter);
    ThreeSubspaceProblem<Rational> dep{1, 1, 3, {RP::monomial(0), RP::monomial(1), RP::monomial(1)},
                                       Measure::gamma(1, 1), Measure::gamma(1, 2)};
    CHECK_THROWS_AS(solve_third_subspace(dep), DependentBasis);
}

TEST_CASE("common orthogonal complement") {
    const std::vector<RP> one{RP::monomial(0)};
    SUBCASE("same measure twice") {
        const auto c = common_orthogonal_complement(one, Measure::gaussian(1), Measure::gaussian(1), 4);
        CHECK(c.rank == 0);
        CHECK(c.dimension == 3);
    }
    SUBCASE("two symmetric measures") {
        const auto c = common_orthogonal_complement(one, Measure::gaussian(1), Measure::gaussian(2), 3);
        CHECK(c.rank == 1);
        REQUIRE(c.dimension == 1);
        CHECK(c.basis[0].monic() == RP::monomial(1));
    }
    SUBCASE("asymmetric pair leaves nothing") {
        const auto c = common_orthogonal_complement(one, Measure::gamma(1, 1), Measure::gamma(2, 1), 2);
        CHECK(c.rank == 1);
        CHECK(c.dimension == 0);
    }
    SUBCASE("property: dimension formula and double orthogonality") {
        const std::vector<RP> sub{rpoly({"1", "1"}), RP::monomial(2)};
        const Measure a = Measure::gamma(1, 2), b = Measure::gamma(3, 1);
        const auto c = common_orthogonal_complement(sub, a, b, 6);
        CHECK(c.rank <= 2);
        CHECK(c.dimension == 6 - 2 - c.rank);
        for (const auto& p : c.basis)
            for (const auto& s : sub) {
                CHECK(inner_product(a, s, p) == 0);
                CHECK(inner_product(b, s, p) == 0);
            }
    }
}
