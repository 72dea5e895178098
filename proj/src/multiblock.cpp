#include "blockortho/multiblock.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <limits>

#include "blockortho/block_ortho.hpp"
#include "blockortho/errors.hpp"
#include "blockortho/matrix.hpp"

namespace bop {

namespace {

template <Scalar T>
Polynomial<T> combine(const std::vector<Polynomial<T>>& polys, const std::vector<T>& coeffs, std::size_t count) {
    Polynomial<T> out;
    for (std::size_t k = 0; k < count; ++k)
        if (coeffs[k] != T(0)) out.add_scaled(polys[k], coeffs[k]);
    return out;
}

template <Scalar T>
std::size_t coefficient_rank(const std::vector<Polynomial<T>>& polys) {
    long top = 0;
    for (const auto& p : polys) top = std::max<long>(top, p.degree());
    Matrix<T> m(polys.size(), static_cast<std::size_t>(top) + 1);
    for (std::size_t r = 0; r < polys.size(); ++r)
        for (std::size_t c = 0; c <= static_cast<std::size_t>(top); ++c) m(r, c) = polys[r].coeff(c);
    return rref(m).rank();
}

struct SvdRank {
    std::size_t rank = 0;
    std::vector<double> relative;
    double gap = std::numeric_limits<double>::infinity();
};

SvdRank svd_rank(const Matrix<double>& m) {
    SvdRank out;
    if (m.rows() == 0 || m.cols() == 0) return out;
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& s = svd.singularValues();
    const double top = s.size() ? s(0) : 0.0;
    if (top == 0) {
        out.relative.assign(s.size(), 0.0);
        return out;
    }
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        out.relative.push_back(s(k) / top);
        if (s(k) / top > kRankTolerance) ++out.rank;
    }
    if (out.rank < out.relative.size())
        out.gap = out.relative[out.rank - 1] / std::max(out.relative[out.rank], std::numeric_limits<double>::min());
    return out;
}

template <Scalar T>
std::size_t matrix_rank(const Matrix<T>& m, SvdRank* info = nullptr) {
    if constexpr (ScalarTraits<T>::exact) {
        (void)info;
        return rref(m).rank();
    } else {
        SvdRank r = svd_rank(m);
        if (info) *info = r;
        return r.rank;
    }
}

}  // namespace

template <Scalar T>
std::string ThirdSubspaceSolution<T>::label() const {
    switch (classification) {
        case Solvability::Unique: return "Unique";
        case Solvability::NoSolution: return "NoSolution";
        case Solvability::Family: return "Family(" + std::to_string(free_parameters) + ")";
    }
    return "";
}

template <Scalar T>
ThirdSubspaceSolution<T> solve_third_subspace(const ThreeSubspaceProblem<T>& problem) {
    const std::size_t n1 = problem.n1, n2 = problem.n2, dim = problem.dim;
    const std::size_t lead = n1 + n2;
    if (lead >= dim) throw DimensionCap("first two blocks must leave room for a third: n1 + n2 < dim");
    if (problem.basis.size() != dim)
        throw DependentBasis("basis has " + std::to_string(problem.basis.size()) + " polynomials, expected " +
                             std::to_string(dim));
    if (coefficient_rank(problem.basis) != dim) throw DependentBasis("basis polynomials are linearly dependent");

    std::vector<Polynomial<T>> e = problem.basis;
    if (problem.inner_12) {
        // Make the second block orthogonal to the first under inner_12.
        Matrix<T> g(n1, n1);
        for (std::size_t j = 0; j < n1; ++j)
            for (std::size_t k = 0; k < n1; ++k) g(j, k) = inner_product(*problem.inner_12, e[j], e[k]);
        for (std::size_t s = n1; s < lead; ++s) {
            Matrix<T> aug(n1, n1 + 1);
            for (std::size_t j = 0; j < n1; ++j) {
                for (std::size_t k = 0; k < n1; ++k) aug(j, k) = g(j, k);
                aug(j, n1) = inner_product(*problem.inner_12, e[j], e[s]);
            }
            RowEchelon<T> ech = rref(aug);
            if (ech.rank() != n1 || (n1 && ech.pivot_cols.back() == n1))
                throw DependentBasis("first block is degenerate under the first-second product");
            for (std::size_t r = 0; r < n1; ++r) e[s].add_scaled(e[ech.pivot_cols[r]], -ech.reduced(r, n1));
        }
    }

    auto row_product = [&](std::size_t row, const Polynomial<T>& p) {
        return row < n1 ? inner_product(problem.inner_13, e[row], p) : inner_product(problem.inner_23, e[row], p);
    };

    Matrix<T> g(lead, lead);
    for (std::size_t j = 0; j < lead; ++j)
        for (std::size_t k = 0; k < lead; ++k) g(j, k) = row_product(j, e[k]);

    ThirdSubspaceSolution<T> out;
    out.constraint_basis.assign(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(lead));
    SvdRank info;
    out.rank_g = matrix_rank(g, &info);
    if constexpr (!ScalarTraits<T>::exact) {
        out.singular_values = info.relative;
        out.gap = info.gap;
    }
    if (out.rank_g < std::max(n1, n2) || out.rank_g > lead)
        throw DependentBasis("rank of the stacked constraint matrix " + std::to_string(out.rank_g) +
                             " violates the bound max(n1, n2) <= rank <= n1 + n2");

    bool consistent = true;
    std::vector<std::vector<T>> particular;
    for (std::size_t n = lead; n < dim; ++n) {
        Matrix<T> aug(lead, lead + 1);
        for (std::size_t j = 0; j < lead; ++j) {
            for (std::size_t k = 0; k < lead; ++k) aug(j, k) = g(j, k);
            aug(j, lead) = -row_product(j, e[n]);
        }
        const std::size_t r = matrix_rank(aug);
        out.rank_augmented.push_back(r);
        if (r > out.rank_g) {
            consistent = false;
            continue;
        }
        RowEchelon<T> ech = rref(aug);
        std::vector<T> c(lead, T(0));
        for (std::size_t row = 0; row < ech.rank(); ++row)
            if (ech.pivot_cols[row] < lead) c[ech.pivot_cols[row]] = ech.reduced(row, lead);
        particular.push_back(std::move(c));
    }

    if (!consistent) {
        out.classification = Solvability::NoSolution;
        return out;
    }
    for (std::size_t n = lead; n < dim; ++n) {
        Polynomial<T> p = combine(e, particular[n - lead], lead);
        p += e[n];
        out.basis.push_back(std::move(p));
    }
    out.free_parameters = lead - out.rank_g;
    if (out.free_parameters == 0) {
        out.classification = Solvability::Unique;
        return out;
    }
    out.classification = Solvability::Family;
    for (const auto& v : nullspace_basis(rref(g))) out.kernel.push_back(combine(e, v, lead));
    return out;
}

LaguerreThreeSubspace laguerre_three_subspace(std::optional<Rational> z12, const Rational& z23, const Rational& z13) {
    if ((z12 && *z12 <= 0) || z23 <= 0 || z13 <= 0)
        throw NonPositiveParameter("shape parameters must be positive");
    ThreeSubspaceProblem<Rational> problem{
        .n1 = 1,
        .n2 = 1,
        .dim = 3,
        .basis = {Polynomial<Rational>::monomial(0), Polynomial<Rational>::monomial(1),
                  Polynomial<Rational>::monomial(2)},
        .inner_13 = Measure::gamma(1, z13),
        .inner_23 = Measure::gamma(1, z23),
        .inner_12 = z12 ? Measure::gamma(1, *z12) : Measure::gaussian(1),
    };
    LaguerreThreeSubspace out;
    out.solution = solve_third_subspace(problem);
    out.second_block_constant = out.solution.constraint_basis[1].coeff(0);
    out.singular_consistent_possible = (z23 == z13 - 1) && out.second_block_constant == 0;
    switch (out.solution.classification) {
        case Solvability::Unique: out.note = "2x2 system is regular"; break;
        case Solvability::NoSolution: out.note = "2x2 system is singular and its augmented matrix has rank 2"; break;
        case Solvability::Family: out.note = "2x2 system is singular and consistent"; break;
    }
    return out;
}

template <Scalar T>
CommonComplement<T> common_orthogonal_complement(const std::vector<Polynomial<T>>& subspace, const Measure& measure_a,
                                                 const Measure& measure_b, std::size_t dim) {
    const std::size_t n1 = subspace.size();
    if (n1 >= dim) throw DimensionCap("subspace dimension must be below dim");
    const auto comp_b = build_general_bo<T>(measure_b, measure_b, subspace, dim).complement;

    // Components of the second complement inside the subspace, via the first measure.
    Matrix<T> gram(n1, n1);
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n1; ++k) gram(j, k) = inner_product(measure_a, subspace[j], subspace[k]);
    const std::size_t m = comp_b.size();
    Matrix<T> aug(n1, n1 + m);
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t k = 0; k < n1; ++k) aug(j, k) = gram(j, k);
        for (std::size_t c = 0; c < m; ++c) aug(j, n1 + c) = inner_product(measure_a, subspace[j], comp_b[c]);
    }
    RowEchelon<T> ech = rref(aug);
    if (ech.rank() != n1 || (n1 && ech.pivot_cols.back() >= n1))
        throw DependentBasis("subspace is degenerate under the first measure");
    Matrix<T> components(n1, m);  // column c: coordinates of u_c in the subspace basis
    for (std::size_t r = 0; r < n1; ++r)
        for (std::size_t c = 0; c < m; ++c) components(ech.pivot_cols[r], c) = ech.reduced(r, n1 + c);

    CommonComplement<T> out;
    RowEchelon<T> comp_ech = rref(components);
    out.rank = matrix_rank(components);
    if (out.rank > std::min(n1, dim - n1))
        throw DependentBasis("component rank exceeds min(n1, dim - n1)");
    if constexpr (ScalarTraits<T>::exact) {
        for (const auto& v : nullspace_basis(comp_ech)) out.basis.push_back(combine(comp_b, v, m));
    } else {
        // Null space from the SVD so the float rank and basis agree.
        Eigen::MatrixXd e(n1, m);
        for (std::size_t r = 0; r < n1; ++r)
            for (std::size_t c = 0; c < m; ++c) e(r, c) = components(r, c);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
        const auto& v = svd.matrixV();
        for (std::size_t k = out.rank; k < m; ++k) {
            std::vector<double> col(m);
            for (std::size_t c = 0; c < m; ++c) col[c] = v(c, k);
            out.basis.push_back(combine(comp_b, col, m));
        }
    }
    out.dimension = out.basis.size();
    return out;
}

#define BOP_INSTANTIATE(T)                                                                                          \
    template std::string ThirdSubspaceSolution<T>::label() const;                                                   \
    template ThirdSubspaceSolution<T> solve_third_subspace<T>(const ThreeSubspaceProblem<T>&);                      \
    template CommonComplement<T> common_orthogonal_complement<T>(const std::vector<Polynomial<T>>&, const Measure&, \
                                                                 const Measure&, std::size_t);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
