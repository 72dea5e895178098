#pragma once

#include <optional>
#include <utility>

#include "blockortho/block_ortho.hpp"

namespace bop {

enum class ProjectorKind { OntoConstraint, OntoComplement };

const char* projector_kind_name(ProjectorKind k);

// Orthogonal projector acting on monomial coefficient columns of polynomials
// of degree < N.
template <Scalar T>
struct ProjectorMatrix {
    Matrix<T> entries;
    ProjectorKind label = ProjectorKind::OntoConstraint;

    Polynomial<T> apply(const Polynomial<T>& p) const;
};

// Projectors onto the polynomials of degree < first and onto their
// complement, both orthogonal for the first measure, from its own basis.
template <Scalar T>
std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_q(const StandardBasis<T>& q_basis, std::size_t first);

// Same projectors expanded through the orthogonal basis of the second
// measure and the triangular maps between the two bases.
template <Scalar T>
std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_second(const Measure& measure1, const Measure& measure2,
                                                                         std::size_t first, std::size_t dim);

// Composite product: constraint components paired under `constraint_measure`
// (default: the first measure), complement components under the second one.
template <Scalar T>
T inner0(const Polynomial<T>& p, const Polynomial<T>& q, const SboBasis<T>& sbo,
         const std::optional<Measure>& constraint_measure = std::nullopt);

}  // namespace bop
