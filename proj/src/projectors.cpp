#include "blockortho/projectors.hpp"

#include <string>

namespace bop {

const char* projector_kind_name(ProjectorKind k) {
    return k == ProjectorKind::OntoConstraint ? "onto-constraint" : "onto-complement";
}

template <Scalar T>
Polynomial<T> ProjectorMatrix<T>::apply(const Polynomial<T>& p) const {
    if (p.degree() >= static_cast<long>(entries.cols())) throw DegreeError("polynomial degree exceeds projector size");
    std::vector<T> out(entries.rows(), T(0));
    for (std::size_t r = 0; r < entries.rows(); ++r)
        for (std::size_t c = 0; c < p.coeffs().size(); ++c) out[r] += entries(r, c) * p.coeffs()[c];
    return Polynomial<T>(std::move(out));
}

namespace {

template <Scalar T>
std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> complete(Matrix<T> onto) {
    const std::size_t n = onto.rows();
    Matrix<T> rest = Matrix<T>::identity(n) - onto;
    return {ProjectorMatrix<T>{std::move(onto), ProjectorKind::OntoConstraint},
            ProjectorMatrix<T>{std::move(rest), ProjectorKind::OntoComplement}};
}

}  // namespace

template <Scalar T>
std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_q(const StandardBasis<T>& q, std::size_t first) {
    const std::size_t dim = q.dim;
    if (first > dim) throw IndexOutOfRange("projector rank exceeds dimension");
    Matrix<T> onto(dim, dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t n = 0; n < first; ++n) {
            const T weight = moment_functional(q.moments, q.polys[n], c) / q.norms[n];
            for (std::size_t l = 0; l <= n; ++l) onto(l, c) += q.to_monomial(l, n) * weight;
        }
    return complete(std::move(onto));
}

template <Scalar T>
std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_second(const Measure& measure1, const Measure& measure2,
                                                                         std::size_t first, std::size_t dim) {
    if (first > dim) throw IndexOutOfRange("projector rank exceeds dimension");
    // The unconstrained block basis is the second measure's own orthogonal basis.
    const SboBasis<T> full = build_sbo<T>(measure1, measure2, 0, dim);
    const Matrix<T> mono = monomial_connection(full);
    // kernel(j, k) = sum_{n < first} b(j, n) a(n, k).
    Matrix<T> kernel(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t n = j; n < first && n <= k; ++n) kernel(j, k) += full.b(j, n) * full.a(n, k);
    Matrix<T> pair(dim, dim);  // (P_k, x^c) under the second measure over its norm
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t c = 0; c < dim; ++c)
            pair(k, c) = moment_functional(full.second_moments, full.poly(k), c) / full.norm(k);
    return complete(mono * kernel * pair);
}

template <Scalar T>
T inner0(const Polynomial<T>& p, const Polynomial<T>& q, const SboBasis<T>& sbo,
         const std::optional<Measure>& constraint_measure) {
    const auto [onto, rest] = projectors_from_q(*sbo.q_basis, sbo.first);
    const Polynomial<T> p1 = onto.apply(p), q1 = onto.apply(q);
    const Polynomial<T> p2 = rest.apply(p), q2 = rest.apply(q);
    const T constraint_part = constraint_measure ? inner_product(*constraint_measure, p1, q1)
                                                 : inner_product(sbo.q_basis->moments, p1, q1);
    return constraint_part + inner_product(sbo.second_moments, p2, q2);
}

template struct ProjectorMatrix<Rational>;
template struct ProjectorMatrix<double>;

#define BOP_INSTANTIATE(T)                                                                                           \
    template std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_q<T>(const StandardBasis<T>&,         \
                                                                                    std::size_t);                    \
    template std::pair<ProjectorMatrix<T>, ProjectorMatrix<T>> projectors_from_second<T>(                            \
        const Measure&, const Measure&, std::size_t, std::size_t);                                                   \
    template T inner0<T>(const Polynomial<T>&, const Polynomial<T>&, const SboBasis<T>&, const std::optional<Measure>&);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
