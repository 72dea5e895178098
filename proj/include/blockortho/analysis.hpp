#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blockortho/block_ortho.hpp"

namespace bop {

// Gauss rule for a normalized measure: weights sum to 1, exact for
// polynomials of degree < 2 * size().
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string descriptor;

    std::size_t size() const { return nodes.size(); }
};

// Nodes are eigenvalues of the Jacobi matrix built from the measure's own
// three-term recurrence; weights are squared first eigenvector components.
QuadratureRule gauss_rule(const Measure& measure, std::size_t points);

// Tensor product of per-axis rules.
struct QuadratureGrid {
    std::vector<QuadratureRule> axes;

    std::size_t dimension() const { return axes.size(); }
    std::size_t min_points() const;
    std::string descriptor() const;
};

// Largest number of integration variables accepted by the checks below.
inline constexpr std::size_t kMaxBlockDimension = 3;
inline constexpr std::size_t kMaxConstraintDimension = 2;
inline constexpr double kIntegralTolerance = 1e-10;

struct IntegralReport {
    std::string check;
    std::size_t i = 0;
    std::size_t n = 0;
    double lhs = 0;
    double rhs = 0;
    double rel_err = 0;
    bool pass = false;
};

// Gram block determinant through Q_n against the symmetrized integral of the
// squared alternant of Q_first..Q_n over n - first + 1 copies of the second
// measure. With first = 0 it adds the monomial Hankel form and the relation
// between the two determinants.
template <Scalar T>
std::vector<IntegralReport> verify_Z_integral(const SboBasis<T>& sbo, std::size_t n, std::size_t points_per_axis);

template <Scalar T>
std::vector<IntegralReport> verify_Z_integral(const SboBasis<T>& sbo, std::size_t n, const QuadratureGrid& grid);

struct PIntegralReport {
    Polynomial<double> integral;
    Polynomial<double> reference;
    double max_coeff_err = 0;
    std::vector<IntegralReport> checks;
};

// Monic P_n rebuilt coefficient by coefficient from the mixed integral: the
// first `first` variables under the first measure, the rest under the second.
// With first = 0 it also evaluates the symmetrized and classical forms.
template <Scalar T>
PIntegralReport verify_P_integral(const SboBasis<T>& sbo, std::size_t n, std::size_t points_per_axis);

struct ZeroReport {
    std::size_t count = 0;
    std::vector<Bracket> brackets;
    bool satisfies_theorem = false;
};

// Sign changes of P_n on the first measure's support: at least `first`, and
// exactly n when first = n - 1.
template <Scalar T>
ZeroReport zero_report(const SboBasis<T>& sbo, std::size_t n, std::size_t resolution = 4096);

}  // namespace bop
