#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blockortho/measures.hpp"
#include "blockortho/polynomial.hpp"

namespace bop {

// basis[0..n1) spans the first block, basis[n1..n1+n2) the second, the rest
// completes the space. The third block must be orthogonal to the first under
// inner_13 and to the second under inner_23. When inner_12 is set, the
// second block is first made orthogonal to the first one under it.
template <Scalar T>
struct ThreeSubspaceProblem {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t dim = 0;
    std::vector<Polynomial<T>> basis;
    Measure inner_13;
    Measure inner_23;
    std::optional<Measure> inner_12{};
};

enum class Solvability { Unique, NoSolution, Family };

// Relative singular-value threshold for float rank decisions.
inline constexpr double kRankTolerance = 1e-10;

template <Scalar T>
struct ThirdSubspaceSolution {
    Solvability classification = Solvability::Unique;
    std::size_t free_parameters = 0;
    std::size_t rank_g = 0;
    std::vector<std::size_t> rank_augmented;    // one per third-block vector
    std::vector<Polynomial<T>> constraint_basis;  // first and second blocks as used
    std::vector<Polynomial<T>> basis;           // unique basis, or particular solutions (free parameters at 0)
    std::vector<Polynomial<T>> kernel;          // directions of the family, shared by every basis vector
    std::vector<double> singular_values;        // float only, relative to the largest
    double gap = 0;                             // float only: smallest kept over largest dropped singular value

    std::string label() const;
};

template <Scalar T>
ThirdSubspaceSolution<T> solve_third_subspace(const ThreeSubspaceProblem<T>& problem);

// N1 = N2 = 1, N = 3 with monomials 1, x, x^2 and weights exp(-x) x^(z-1) on
// [0, inf). Without z12 the first-second product is the symmetric Gaussian,
// which forces the constant term of the second block to vanish.
struct LaguerreThreeSubspace {
    ThirdSubspaceSolution<Rational> solution;
    Rational second_block_constant;  // a: second block is x + a
    // The consistent singular case needs z23 = z13 - 1 together with a = 0.
    bool singular_consistent_possible = false;
    std::string note;
};

LaguerreThreeSubspace laguerre_three_subspace(std::optional<Rational> z12, const Rational& z23, const Rational& z13);

template <Scalar T>
struct CommonComplement {
    std::size_t dimension = 0;
    std::vector<Polynomial<T>> basis;
    std::size_t rank = 0;  // rank of the components of the second complement inside the subspace
};

// Polynomials of degree < dim orthogonal to the subspace under both measures.
template <Scalar T>
CommonComplement<T> common_orthogonal_complement(const std::vector<Polynomial<T>>& subspace, const Measure& measure_a,
                                                 const Measure& measure_b, std::size_t dim);

}  // namespace bop
