#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "blockortho/gso.hpp"
#include "blockortho/measures.hpp"
#include "blockortho/standard_ortho.hpp"

namespace bop {

// Polynomials P_n, n = first..dim-1, of exact degree n that are orthogonal to
// every polynomial of degree < first under the first measure and mutually
// orthogonal under the second one. Built in two passes: the first measure's
// orthogonal basis Q, then Gram-Schmidt of Q_first..Q_{dim-1} under the
// second measure.
//
// Matrices are indexed locally: entry (m - first, n - first). Use the
// accessors for global indices. "monic" quantities refer to the monic P and
// monic Q.
template <Scalar T>
struct SboBasis {
    std::size_t first = 0;  // dimension of the constraint space
    std::size_t dim = 0;
    Measure measure1;
    Measure measure2;
    Normalization normalization = Normalization::Monic;
    std::shared_ptr<const StandardBasis<T>> q_basis{};
    MomentSequence second_moments{};

    GramMatrix<T> second_gram{};        // (Q_j, Q_k) under the second measure
    std::vector<T> block_dets{};        // entry n - first + 1: det of the Gram block up to Q_n; entry 0 is 1
    std::vector<Polynomial<T>> polys{};
    std::vector<T> norms{};
    std::vector<T> monic_norms{};
    std::vector<T> leading{};
    std::vector<T> monic_subleading{};
    std::vector<T> monic_subsubleading{};
    Matrix<T> to_q{};         // P_n = sum_m Q_m to_q(m, n)
    Matrix<T> from_q{};       // Q_n = sum_m P_m from_q(m, n)
    Matrix<T> monic_to_q{};   // same relations between monic P and monic Q
    Matrix<T> monic_from_q{};

    std::size_t size() const { return dim - first; }
    const Polynomial<T>& poly(std::size_t n) const { return polys.at(n - first); }
    Polynomial<T> monic(std::size_t n) const { return poly(n) * (T(1) / leading.at(n - first)); }
    const T& norm(std::size_t n) const { return norms.at(n - first); }
    const T& monic_norm(std::size_t n) const { return monic_norms.at(n - first); }
    const T& lead(std::size_t n) const { return leading.at(n - first); }
    // Determinant of the Gram block through Q_n; n = first - 1 gives 1.
    const T& block_det(long n) const { return block_dets.at(static_cast<std::size_t>(n + 1 - static_cast<long>(first))); }
    const T& a(std::size_t m, std::size_t n) const { return to_q(m - first, n - first); }
    const T& b(std::size_t m, std::size_t n) const { return from_q(m - first, n - first); }
    const T& a_hat(std::size_t m, std::size_t n) const { return monic_to_q(m - first, n - first); }
    const T& b_hat(std::size_t m, std::size_t n) const { return monic_from_q(m - first, n - first); }
};

// Gram matrix of Q_first..Q_{dim-1} under the second measure.
template <Scalar T>
GramMatrix<T> gamma_matrix(const StandardBasis<T>& q_basis, const MomentSequence& second_moments, std::size_t first);

template <Scalar T>
GramMatrix<T> gamma_matrix(const StandardBasis<T>& q_basis, const Measure& measure2, std::size_t first);

template <Scalar T>
SboBasis<T> build_sbo(const Measure& measure1, const Measure& measure2, std::size_t first, std::size_t dim,
                      Normalization normalization = Normalization::Monic);

// Reuses an existing first-stage basis; several builds may share it.
template <Scalar T>
SboBasis<T> build_sbo(std::shared_ptr<const StandardBasis<T>> q_basis, const Measure& measure2, std::size_t first,
                      Normalization normalization = Normalization::Monic);

// Rescales every element from the monic data.
template <Scalar T>
SboBasis<T> normalize_sbo(const SboBasis<T>& sbo, Normalization normalization);

// Determinant-formula counterpart of one element: the bordered Gram
// determinant with last row Q_first..Q_n, divided by the previous block
// determinant and by the leading coefficient of Q_n.
template <Scalar T>
struct SboOracle {
    Polynomial<T> poly;             // monic
    T block_det;                    // det of the block through Q_n
    T monic_norm;
    std::vector<T> monic_to_q;      // entries m = first..n
    std::vector<T> monic_from_q;    // column n of the inverse relation, entries m = first..n
};

template <Scalar T>
SboOracle<T> sbo_determinant_oracle(const StandardBasis<T>& q_basis, const GramMatrix<T>& gamma, std::size_t first,
                                    std::size_t n);

// Symmetric pairs: even and odd degrees from separate Gram blocks. Block
// determinants come from the checkerboard factorization.
template <Scalar T>
SboBasis<T> sbo_parity_build(const Measure& measure1, const Measure& measure2, std::size_t first, std::size_t dim,
                             Normalization normalization = Normalization::Monic);

// Complement of an arbitrary constraint subspace, orthogonalized under the
// second measure. Polynomials are monic in their own leading degree.
template <Scalar T>
struct GeneralBoBasis {
    std::vector<Polynomial<T>> complement;  // reduced echelon basis, ascending degree
    std::vector<Polynomial<T>> polys;
    std::vector<T> norms;
    std::vector<std::size_t> degrees;
    std::vector<std::size_t> completion;  // monomial degrees appended to the constraint basis
};

// completion_order lists candidate monomial degrees; default 0..dim-1.
template <Scalar T>
GeneralBoBasis<T> build_general_bo(const Measure& measure1, const Measure& measure2,
                                   const std::vector<Polynomial<T>>& subspace, std::size_t dim,
                                   std::optional<std::vector<std::size_t>> completion_order = std::nullopt);

// dim x dim matrix whose column n (n >= first) holds the monomial coefficients of P_n.
template <Scalar T>
Matrix<T> monomial_connection(const SboBasis<T>& sbo);

// dim x dim matrix C with monic P_{later;n} = sum_l monic P_{earlier;l} C(l, n).
template <Scalar T>
Matrix<T> cross_i_connection(const SboBasis<T>& earlier, const SboBasis<T>& later);

// x * monic P_n = below * monic Q_{first-1} + sum_{m=first}^{n+1} eta[m - first] * monic P_m.
template <Scalar T>
struct XExpansion {
    T below;                       // zero when first = 0
    std::size_t q_first = 0;       // q_coeffs[k] multiplies monic Q_{q_first + k}
    std::vector<T> q_coeffs;       // runs up to monic Q_{n+1}
    std::vector<T> eta;
    // Indices l < n - 1 carrying a nonzero coefficient, including first - 1 for `below`.
    std::vector<std::size_t> nonzero_below;
};

template <Scalar T>
XExpansion<T> expand_x_times_P(const SboBasis<T>& sbo, std::size_t n);

}  // namespace bop
