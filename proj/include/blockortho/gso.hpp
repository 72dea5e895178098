#pragma once

#include <cstddef>
#include <vector>

#include "blockortho/errors.hpp"
#include "blockortho/matrix.hpp"
#include "blockortho/scalar.hpp"

namespace bop {

// One orthogonalization pass over an abstract basis e_0..e_{N-1} given by its
// Gram matrix. E_n = sum_{m<=n} a(m,n) e_m and e_n = sum_{m<=n} E_m b(m,n).
// gram_dets[k] is the determinant of the leading k x k block, so
// gram_dets[0] = 1 and h[n] = gram_dets[n+1] / (gram_dets[n] * b_diag[n]^2).
template <Scalar T>
struct OrthogonalizationResult {
    Matrix<T> a;
    Matrix<T> b;
    std::vector<T> h;
    std::vector<T> b_diag;
    std::vector<T> gram_dets;

    std::size_t size() const { return h.size(); }
    // Coefficients of E_n on e_0..e_n.
    std::vector<T> vector(std::size_t n) const {
        std::vector<T> v(n + 1);
        for (std::size_t m = 0; m <= n; ++m) v[m] = a(m, n);
        return v;
    }
};

// Leading principal minors; entry k is the k x k determinant, entry 0 is 1.
template <Scalar T>
std::vector<T> gram_determinants(const GramMatrix<T>& gram);

// leading_factors[n] is b(n,n); the result has a(n,n) = 1 / b(n,n).
// Exact scalars use the classical recursion, floats the modified one. A float
// pivot counts as non-positive when the monic norm is at most 1e-13 times the
// diagonal Gram entry it came from.
template <Scalar T>
OrthogonalizationResult<T> gram_schmidt(const GramMatrix<T>& gram, const std::vector<T>& leading_factors);

// Monic factors.
template <Scalar T>
OrthogonalizationResult<T> gram_schmidt(const GramMatrix<T>& gram);

// Coefficients of E_n from the bordered determinant whose first n rows are
// Gram rows 0..n-1 (columns 0..n) and whose last row holds e_0..e_n, expanded
// along that last row and divided by gram_dets[n] * leading_factor.
template <Scalar T>
std::vector<T> determinant_oracle_vector(const GramMatrix<T>& gram, std::size_t n, const T& leading_factor);

// a(m,n) as a signed minor of the Gram rows 0..n-1 with column m removed.
template <Scalar T>
T signed_minor_coefficient(const GramMatrix<T>& gram, std::size_t m, std::size_t n, const T& leading_factor);

// h_n from the ratio of consecutive Gram determinants.
template <Scalar T>
T norm_from_determinants(const GramMatrix<T>& gram, std::size_t n, const T& leading_factor);

// b(m,n) = b(m,m) / gram_dets[m+1] times the determinant of Gram rows 0..m-1
// (columns 0..m) bordered by the row (g(n,0) .. g(n,m)).
template <Scalar T>
T connection_b(const GramMatrix<T>& gram, const OrthogonalizationResult<T>& result, std::size_t m, std::size_t n);

template <Scalar T>
struct CheckerboardFactors {
    T det;
    T even_block_det;
    T odd_block_det;
};

// A vanishes wherever the index sum is odd, except possibly in its last row
// when last_row_exempt. Then det A = det(even-index block) * det(odd-index
// block), with an empty block contributing 1.
template <Scalar T>
CheckerboardFactors<T> checkerboard_det(const Matrix<T>& a, bool last_row_exempt);

}  // namespace bop
