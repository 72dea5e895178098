#include "blockortho/gso.hpp"

#include <cmath>
#include <string>

namespace bop {

namespace {

template <Scalar T>
void check_factors(const std::vector<T>& factors, std::size_t n) {
    if (factors.size() < n) throw BadFactor("need one leading factor per basis vector");
    for (std::size_t k = 0; k < n; ++k) {
        if (factors[k] == 0 || !ScalarTraits<T>::finite(factors[k]))
            throw BadFactor("leading factor " + std::to_string(k) + " is zero or not finite");
    }
}

// v^T G w over the first len coordinates.
template <Scalar T>
T bilinear(const Matrix<T>& g, const std::vector<T>& v, const std::vector<T>& w, std::size_t len) {
    T acc(0);
    for (std::size_t j = 0; j < len; ++j) {
        if (v[j] == 0) continue;
        T row(0);
        for (std::size_t k = 0; k < len; ++k)
            if (w[k] != 0) row += g(j, k) * w[k];
        acc += v[j] * row;
    }
    return acc;
}

}  // namespace

template <Scalar T>
std::vector<T> gram_determinants(const GramMatrix<T>& gram) {
    const std::size_t n = gram.size();
    std::vector<T> z(n + 1, T(1));
    for (std::size_t k = 1; k <= n; ++k) z[k] = determinant(gram.entries.block(0, 0, k, k));
    return z;
}

template <Scalar T>
OrthogonalizationResult<T> gram_schmidt(const GramMatrix<T>& gram, const std::vector<T>& leading_factors) {
    const std::size_t n = gram.size();
    check_factors(leading_factors, n);
    const Matrix<T>& g = gram.entries;
    OrthogonalizationResult<T> r;
    r.a = Matrix<T>(n, n);
    r.b = Matrix<T>(n, n);
    r.h.resize(n);
    r.b_diag.assign(leading_factors.begin(), leading_factors.begin() + static_cast<std::ptrdiff_t>(n));

    // Monic directions E_m / a(m,m) with their squared norms.
    std::vector<std::vector<T>> monic(n);
    std::vector<T> monic_norm(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<T> v(n, T(0));
        v[k] = T(1);
        for (std::size_t m = 0; m < k; ++m) {
            T proj;
            if constexpr (ScalarTraits<T>::exact) {
                // Classical: project the original e_k.
                std::vector<T> ek(n, T(0));
                ek[k] = T(1);
                proj = bilinear(g, ek, monic[m], k + 1) / monic_norm[m];
            } else {
                // Modified: project the running residual.
                proj = bilinear(g, v, monic[m], k + 1) / monic_norm[m];
            }
            for (std::size_t j = 0; j <= m; ++j) v[j] -= proj * monic[m][j];
        }
        T hn = bilinear(g, v, v, k + 1);
        bool bad;
        if constexpr (ScalarTraits<T>::exact) {
            bad = hn <= 0;
        } else {
            bad = !(hn > 1e-13 * std::fabs(g(k, k)));
        }
        if (bad) throw NotPositiveDefinite("Gram matrix is not positive definite at pivot " + std::to_string(k));
        monic[k] = std::move(v);
        monic_norm[k] = hn;
    }
    for (std::size_t k = 0; k < n; ++k) {
        T ann = T(1) / leading_factors[k];
        for (std::size_t m = 0; m <= k; ++m) r.a(m, k) = monic[k][m] * ann;
        r.h[k] = monic_norm[k] * ann * ann;
    }
    // b(m,k) = (E_m, e_k) / h_m.
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = m; k < n; ++k) {
            if (k == m) {
                r.b(m, k) = leading_factors[m];
                continue;
            }
            T acc(0);
            for (std::size_t j = 0; j <= m; ++j) acc += r.a(j, m) * g(j, k);
            r.b(m, k) = acc / r.h[m];
        }
    }
    r.gram_dets = gram_determinants(gram);
    return r;
}

template <Scalar T>
OrthogonalizationResult<T> gram_schmidt(const GramMatrix<T>& gram) {
    return gram_schmidt(gram, std::vector<T>(gram.size(), T(1)));
}

template <Scalar T>
std::vector<T> determinant_oracle_vector(const GramMatrix<T>& gram, std::size_t n, const T& leading_factor) {
    if (n >= gram.size()) throw IndexOutOfRange("oracle index beyond Gram size");
    if (leading_factor == 0 || !ScalarTraits<T>::finite(leading_factor)) throw BadFactor("zero leading factor");
    Matrix<T> bordered = gram.entries.block(0, 0, n + 1, n + 1);
    const T znm1 = determinant(gram.entries.block(0, 0, n, n));
    if (znm1 == 0) throw NotPositiveDefinite("vanishing Gram determinant");
    std::vector<T> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        T cof = minor_det(bordered, n, k);
        if ((n + k) % 2 == 1) cof = -cof;
        out[k] = cof / (znm1 * leading_factor);
    }
    return out;
}

template <Scalar T>
T signed_minor_coefficient(const GramMatrix<T>& gram, std::size_t m, std::size_t n, const T& leading_factor) {
    if (m > n || n >= gram.size()) throw IndexOutOfRange("signed minor index out of range");
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < n; ++r) rows.push_back(r);
    for (std::size_t c = 0; c <= n; ++c)
        if (c != m) cols.push_back(c);
    T minor = determinant(gram.entries.select(rows, cols));
    if ((n + m) % 2 == 1) minor = -minor;
    const T znm1 = determinant(gram.entries.block(0, 0, n, n));
    return minor / (znm1 * leading_factor);
}

template <Scalar T>
T norm_from_determinants(const GramMatrix<T>& gram, std::size_t n, const T& leading_factor) {
    if (n >= gram.size()) throw IndexOutOfRange("norm index out of range");
    const T zn = determinant(gram.entries.block(0, 0, n + 1, n + 1));
    const T znm1 = determinant(gram.entries.block(0, 0, n, n));
    return zn / (znm1 * leading_factor * leading_factor);
}

template <Scalar T>
T connection_b(const GramMatrix<T>& gram, const OrthogonalizationResult<T>& result, std::size_t m, std::size_t n) {
    if (m > n || n >= gram.size()) throw IndexOutOfRange("connection index out of range");
    Matrix<T> bordered = gram.entries.block(0, 0, m + 1, m + 1);
    for (std::size_t k = 0; k <= m; ++k) bordered(m, k) = gram(n, k);
    const T zm = determinant(gram.entries.block(0, 0, m + 1, m + 1));
    return result.b_diag[m] * determinant(std::move(bordered)) / zm;
}

template <Scalar T>
CheckerboardFactors<T> checkerboard_det(const Matrix<T>& a, bool last_row_exempt) {
    if (!a.square()) throw NotCheckerboard("checkerboard matrix must be square");
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        if (last_row_exempt && j + 1 == n) continue;
        for (std::size_t k = 0; k < n; ++k)
            if ((j + k) % 2 == 1 && a(j, k) != 0)
                throw NotCheckerboard("nonzero entry at (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
    std::vector<std::size_t> even, odd;
    for (std::size_t k = 0; k < n; ++k) (k % 2 == 0 ? even : odd).push_back(k);
    CheckerboardFactors<T> out;
    out.det = determinant(a);
    out.even_block_det = determinant(a.select(even, even));
    out.odd_block_det = determinant(a.select(odd, odd));
    return out;
}

#define BOP_INSTANTIATE(T)                                                                                   \
    template std::vector<T> gram_determinants<T>(const GramMatrix<T>&);                                      \
    template OrthogonalizationResult<T> gram_schmidt<T>(const GramMatrix<T>&, const std::vector<T>&);        \
    template OrthogonalizationResult<T> gram_schmidt<T>(const GramMatrix<T>&);                               \
    template std::vector<T> determinant_oracle_vector<T>(const GramMatrix<T>&, std::size_t, const T&);       \
    template T signed_minor_coefficient<T>(const GramMatrix<T>&, std::size_t, std::size_t, const T&);        \
    template T norm_from_determinants<T>(const GramMatrix<T>&, std::size_t, const T&);                       \
    template T connection_b<T>(const GramMatrix<T>&, const OrthogonalizationResult<T>&, std::size_t,         \
                               std::size_t);                                                                 \
    template CheckerboardFactors<T> checkerboard_det<T>(const Matrix<T>&, bool);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
