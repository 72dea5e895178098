#include "blockortho/block_ortho.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bop {

namespace {

template <Scalar T>
T sbo_leading(Normalization mode, const T& q_lead, const T& monic_norm, const T& prev_det) {
    switch (mode) {
        case Normalization::Monic: return T(1);
        case Normalization::DetNormalized: return q_lead * prev_det;
        case Normalization::Orthonormal: return q_lead * ScalarTraits<T>::sqrt(T(1) / (q_lead * q_lead * monic_norm));
    }
    return T(1);
}

// Fills every derived field from one orthogonalization of the second Gram
// matrix in local indices.
template <Scalar T>
void fill(SboBasis<T>& s, const OrthogonalizationResult<T>& r) {
    const StandardBasis<T>& q = *s.q_basis;
    const std::size_t len = s.size();
    s.to_q = r.a;
    s.from_q = r.b;
    s.norms = r.h;
    s.block_dets = r.gram_dets;
    s.polys.clear();
    s.leading.clear();
    s.monic_norms.clear();
    s.monic_subleading.clear();
    s.monic_subsubleading.clear();
    for (std::size_t t = 0; t < len; ++t) {
        const std::size_t n = s.first + t;
        Polynomial<T> p;
        for (std::size_t u = 0; u <= t; ++u) p.add_scaled(q.polys[s.first + u], r.a(u, t));
        const T lead = q.leading[n] * r.a(t, t);
        s.monic_norms.push_back(r.h[t] / (lead * lead));
        s.monic_subleading.push_back(n >= 1 ? p.coeff(n - 1) / lead : T(0));
        s.monic_subsubleading.push_back(n >= 2 ? p.coeff(n - 2) / lead : T(0));
        s.leading.push_back(lead);
        s.polys.push_back(std::move(p));
    }
    s.monic_to_q = Matrix<T>(len, len);
    s.monic_from_q = Matrix<T>(len, len);
    for (std::size_t u = 0; u < len; ++u)
        for (std::size_t t = u; t < len; ++t) {
            s.monic_to_q(u, t) = q.leading[s.first + u] * r.a(u, t) / s.leading[t];
            s.monic_from_q(u, t) = s.leading[u] * r.b(u, t) / q.leading[s.first + t];
        }
}

template <Scalar T>
std::vector<T> ratios(const std::vector<T>& num, const std::vector<T>& den) {
    std::vector<T> out(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) out[k] = num[k] / den[k];
    return out;
}

template <Scalar T>
void check_dims(std::size_t first, std::size_t dim) {
    if (first > dim)
        throw IndexOutOfRange("constraint dimension " + std::to_string(first) + " exceeds basis dimension " +
                              std::to_string(dim));
}

template <Scalar T>
GramMatrix<T> gram_under(const MomentSequence& ms, const std::vector<Polynomial<T>>& polys, std::string label) {
    GramMatrix<T> g{Matrix<T>(polys.size(), polys.size()), std::move(label)};
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (std::size_t k = j; k < polys.size(); ++k) g.entries(j, k) = g.entries(k, j) = inner_product(ms, polys[j], polys[k]);
    return g;
}

template <Scalar T>
bool independent(const GramMatrix<T>& g) {
    const T det = determinant(g.entries);
    if constexpr (ScalarTraits<T>::exact) {
        return det > 0;
    } else {
        double scale = 1;
        for (std::size_t k = 0; k < g.size(); ++k) scale *= std::fabs(g(k, k));
        return det > 1e-12 * scale;
    }
}

}  // namespace

template <Scalar T>
GramMatrix<T> gamma_matrix(const StandardBasis<T>& q, const MomentSequence& ms2, std::size_t first) {
    check_dims<T>(first, q.dim);
    std::vector<Polynomial<T>> tail(q.polys.begin() + static_cast<std::ptrdiff_t>(first), q.polys.end());
    return gram_under(ms2, tail, "first-stage polynomials " + std::to_string(first) + ".." + std::to_string(q.dim - 1) +
                                     " under the second measure");
}

template <Scalar T>
GramMatrix<T> gamma_matrix(const StandardBasis<T>& q, const Measure& measure2, std::size_t first) {
    return gamma_matrix(q, measure2.moments(2 * (q.dim - 1)), first);
}

template <Scalar T>
SboBasis<T> build_sbo(std::shared_ptr<const StandardBasis<T>> q, const Measure& measure2, std::size_t first,
                      Normalization mode) {
    const std::size_t dim = q->dim;
    check_dims<T>(first, dim);
    SboBasis<T> s{.first = first,
                  .dim = dim,
                  .measure1 = q->measure,
                  .measure2 = measure2,
                  .normalization = mode,
                  .q_basis = q,
                  .second_moments = measure2.moments(2 * (dim - 1))};
    if (first == dim) {
        s.block_dets = {T(1)};
        return s;
    }
    s.second_gram = gamma_matrix(*q, s.second_moments, first);
    const std::size_t len = dim - first;
    std::vector<T> q_lead(q->leading.begin() + static_cast<std::ptrdiff_t>(first), q->leading.end());
    OrthogonalizationResult<T> r = gram_schmidt(s.second_gram, q_lead);
    if (mode != Normalization::Monic) {
        std::vector<T> lead(len);
        for (std::size_t t = 0; t < len; ++t) lead[t] = sbo_leading(mode, q_lead[t], r.h[t], r.gram_dets[t]);
        r = gram_schmidt(s.second_gram, ratios(q_lead, lead));
    }
    fill(s, r);
    return s;
}

template <Scalar T>
SboBasis<T> build_sbo(const Measure& measure1, const Measure& measure2, std::size_t first, std::size_t dim,
                      Normalization mode) {
    check_dims<T>(first, dim);
    auto q = std::make_shared<const StandardBasis<T>>(build_standard<T>(measure1, dim));
    return build_sbo(std::move(q), measure2, first, mode);
}

template <Scalar T>
SboBasis<T> normalize_sbo(const SboBasis<T>& sbo, Normalization mode) {
    SboBasis<T> s = sbo;
    s.normalization = mode;
    const std::size_t len = sbo.size();
    if (len == 0) return s;
    const auto& ql = sbo.q_basis->leading;
    std::vector<T> lead(len);
    for (std::size_t t = 0; t < len; ++t)
        lead[t] = sbo_leading(mode, ql[sbo.first + t], sbo.monic_norms[t], sbo.block_dets[t]);
    OrthogonalizationResult<T> r{Matrix<T>(len, len), Matrix<T>(len, len), std::vector<T>(len), std::vector<T>(len),
                                 sbo.block_dets};
    for (std::size_t t = 0; t < len; ++t) {
        r.h[t] = lead[t] * lead[t] * sbo.monic_norms[t];
        r.b_diag[t] = ql[sbo.first + t] / lead[t];
        for (std::size_t u = 0; u <= t; ++u) {
            r.a(u, t) = sbo.monic_to_q(u, t) * lead[t] / ql[sbo.first + u];
            r.b(u, t) = sbo.monic_from_q(u, t) * ql[sbo.first + t] / lead[u];
        }
    }
    fill(s, r);
    return s;
}

template <Scalar T>
SboOracle<T> sbo_determinant_oracle(const StandardBasis<T>& q, const GramMatrix<T>& gamma, std::size_t first,
                                    std::size_t n) {
    if (n < first || n - first >= gamma.size()) throw IndexOutOfRange("oracle index outside the block");
    const std::size_t t = n - first;
    const T& qn = q.leading[n];
    std::vector<T> coeffs = determinant_oracle_vector(gamma, t, qn);
    SboOracle<T> o;
    for (std::size_t u = 0; u <= t; ++u) {
        o.poly.add_scaled(q.polys[first + u], coeffs[u]);
        o.monic_to_q.push_back(q.leading[first + u] * coeffs[u]);
    }
    o.block_det = determinant(gamma.entries.block(0, 0, t + 1, t + 1));
    o.monic_norm = norm_from_determinants(gamma, t, qn);
    OrthogonalizationResult<T> diag;
    diag.b_diag.assign(q.leading.begin() + static_cast<std::ptrdiff_t>(first), q.leading.end());
    for (std::size_t u = 0; u <= t; ++u) o.monic_from_q.push_back(connection_b(gamma, diag, u, t) / qn);
    return o;
}

template <Scalar T>
SboBasis<T> sbo_parity_build(const Measure& measure1, const Measure& measure2, std::size_t first, std::size_t dim,
                             Normalization mode) {
    if (!measure1.symmetric() || !measure2.symmetric()) throw NotSymmetric("parity build needs two symmetric measures");
    check_dims<T>(first, dim);
    auto q = std::make_shared<const StandardBasis<T>>(parity_split_build<T>(measure1, dim));
    SboBasis<T> s{.first = first,
                  .dim = dim,
                  .measure1 = measure1,
                  .measure2 = measure2,
                  .normalization = mode,
                  .q_basis = q,
                  .second_moments = measure2.moments(2 * (dim - 1))};
    if (first == dim) {
        s.block_dets = {T(1)};
        return s;
    }
    s.second_gram = gamma_matrix(*q, s.second_moments, first);
    const std::size_t len = dim - first;

    std::vector<T> dets{T(1)};
    for (std::size_t t = 1; t <= len; ++t) {
        auto cb = checkerboard_det(s.second_gram.entries.block(0, 0, t, t), false);
        dets.push_back(cb.even_block_det * cb.odd_block_det);
    }

    std::vector<std::size_t> sector[2];
    for (std::size_t t = 0; t < len; ++t) sector[(first + t) % 2].push_back(t);
    GramMatrix<T> sub[2];
    OrthogonalizationResult<T> part[2];
    for (int p = 0; p < 2; ++p) {
        if (sector[p].empty()) continue;
        sub[p] = GramMatrix<T>{s.second_gram.entries.select(sector[p], sector[p]), "parity sector"};
        std::vector<T> f;
        for (std::size_t t : sector[p]) f.push_back(q->leading[first + t]);
        part[p] = gram_schmidt(sub[p], f);
    }

    std::vector<T> lead(len);
    for (int p = 0; p < 2; ++p)
        for (std::size_t k = 0; k < sector[p].size(); ++k) {
            const std::size_t t = sector[p][k];
            lead[t] = sbo_leading(mode, q->leading[first + t], part[p].h[k], dets[t]);
        }
    if (mode != Normalization::Monic) {
        for (int p = 0; p < 2; ++p) {
            if (sector[p].empty()) continue;
            std::vector<T> f;
            for (std::size_t t : sector[p]) f.push_back(q->leading[first + t] / lead[t]);
            part[p] = gram_schmidt(sub[p], f);
        }
    }

    OrthogonalizationResult<T> r{Matrix<T>(len, len), Matrix<T>(len, len), std::vector<T>(len), std::vector<T>(len), dets};
    for (int p = 0; p < 2; ++p)
        for (std::size_t k = 0; k < sector[p].size(); ++k) {
            const std::size_t t = sector[p][k];
            r.h[t] = part[p].h[k];
            r.b_diag[t] = part[p].b_diag[k];
            for (std::size_t j = 0; j <= k; ++j) {
                r.a(sector[p][j], t) = part[p].a(j, k);
                r.b(sector[p][j], t) = part[p].b(j, k);
            }
        }
    fill(s, r);
    return s;
}

template <Scalar T>
GeneralBoBasis<T> build_general_bo(const Measure& measure1, const Measure& measure2,
                                   const std::vector<Polynomial<T>>& subspace, std::size_t dim,
                                   std::optional<std::vector<std::size_t>> completion_order) {
    const std::size_t n1 = subspace.size();
    if (dim == 0 || n1 >= dim) throw DependentConstraints("constraint subspace must be a proper subspace");
    for (const auto& p : subspace)
        if (p.degree() >= static_cast<long>(dim)) throw DegreeError("constraint polynomial outside the basis space");
    const MomentSequence ms1 = measure1.moments(2 * (dim - 1));
    const MomentSequence ms2 = measure2.moments(2 * (dim - 1));
    if (!independent(gram_under(ms1, subspace, "constraints")))
        throw DependentConstraints("constraint polynomials are linearly dependent");

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    if (completion_order) order = *completion_order;

    GeneralBoBasis<T> out;
    std::vector<Polynomial<T>> basis = subspace;
    for (std::size_t d : order) {
        if (basis.size() == dim) break;
        if (d >= dim) throw DegreeError("completion degree outside the basis space");
        basis.push_back(Polynomial<T>::monomial(d));
        if (independent(gram_under(ms1, basis, "completion"))) {
            out.completion.push_back(d);
        } else {
            basis.pop_back();
        }
    }
    if (basis.size() != dim) throw DependentConstraints("monomial completion did not reach full dimension");

    const auto first_pass = gram_schmidt(gram_under(ms1, basis, "completed basis"));
    // Rows: complement vectors, columns: degrees from dim-1 down to 0.
    const std::size_t len = dim - n1;
    Matrix<T> rows(len, dim);
    for (std::size_t t = 0; t < len; ++t) {
        Polynomial<T> p;
        for (std::size_t u = 0; u <= n1 + t; ++u) p.add_scaled(basis[u], first_pass.a(u, n1 + t));
        for (std::size_t d = 0; d < dim; ++d) rows(t, dim - 1 - d) = p.coeff(d);
    }
    RowEchelon<T> ech = rref(std::move(rows));
    if (ech.rank() != len) throw DependentConstraints("complement lost rank during reduction");
    for (std::size_t t = 0; t < len; ++t) {
        std::vector<T> c(dim, T(0));
        for (std::size_t d = 0; d < dim; ++d) c[d] = ech.reduced(t, dim - 1 - d);
        out.complement.push_back(Polynomial<T>(std::move(c)));
    }
    std::reverse(out.complement.begin(), out.complement.end());

    const auto second_pass = gram_schmidt(gram_under(ms2, out.complement, "complement under the second measure"));
    for (std::size_t t = 0; t < len; ++t) {
        Polynomial<T> p;
        for (std::size_t u = 0; u <= t; ++u) p.add_scaled(out.complement[u], second_pass.a(u, t));
        out.degrees.push_back(static_cast<std::size_t>(p.degree()));
        out.polys.push_back(std::move(p));
        out.norms.push_back(second_pass.h[t]);
    }
    return out;
}

template <Scalar T>
Matrix<T> monomial_connection(const SboBasis<T>& sbo) {
    const auto& qa = sbo.q_basis->to_monomial;
    Matrix<T> c(sbo.dim, sbo.dim);
    for (std::size_t n = sbo.first; n < sbo.dim; ++n)
        for (std::size_t l = 0; l <= n; ++l) {
            T acc(0);
            for (std::size_t m = std::max(sbo.first, l); m <= n; ++m) acc += qa(l, m) * sbo.a(m, n);
            c(l, n) = acc;
        }
    return c;
}

template <Scalar T>
Matrix<T> cross_i_connection(const SboBasis<T>& earlier, const SboBasis<T>& later) {
    if (!(earlier.measure1 == later.measure1) || !(earlier.measure2 == later.measure2) || earlier.dim != later.dim)
        throw MeasureMismatch("cross connection needs the same measure pair and dimension");
    if (earlier.first > later.first) throw IndexOutOfRange("cross connection needs earlier constraint index <= later");
    Matrix<T> c(earlier.dim, earlier.dim);
    for (std::size_t n = later.first; n < later.dim; ++n)
        for (std::size_t l = earlier.first; l <= n; ++l) {
            T acc(0);
            for (std::size_t m = std::max(later.first, l); m <= n; ++m) acc += earlier.b_hat(l, m) * later.a_hat(m, n);
            c(l, n) = acc;
        }
    return c;
}

template <Scalar T>
XExpansion<T> expand_x_times_P(const SboBasis<T>& sbo, std::size_t n) {
    if (n < sbo.first || n + 2 > sbo.dim) throw IndexOutOfRange("expansion needs first <= n <= dim - 2");
    const StandardBasis<T>& q = *sbo.q_basis;
    XExpansion<T> out;
    out.q_first = sbo.first > 0 ? sbo.first - 1 : 0;
    out.q_coeffs.assign(n + 2 - out.q_first, T(0));
    auto at = [&](std::size_t m) -> T& { return out.q_coeffs[m - out.q_first]; };
    // x Q_m = Q_{m+1} - shift_m Q_m + lag_m Q_{m-1} for monic Q.
    for (std::size_t m = sbo.first; m <= n; ++m) {
        const T c = sbo.a_hat(m, n);
        at(m + 1) += c;
        at(m) -= (q.monic_subleading[m + 1] - q.monic_subleading[m]) * c;
        if (m >= 1) at(m - 1) += q.monic_norm(m) / q.monic_norm(m - 1) * c;
    }
    out.below = sbo.first > 0 ? at(sbo.first - 1) : T(0);
    for (std::size_t l = sbo.first; l <= n + 1; ++l) {
        T acc(0);
        for (std::size_t m = l; m <= n + 1; ++m) acc += at(m) * sbo.b_hat(l, m);
        out.eta.push_back(acc);
    }
    double scale = std::fabs(to_double(out.below));
    for (const T& v : out.eta) scale = std::max(scale, std::fabs(to_double(v)));
    auto nonzero = [&](const T& v) {
        if constexpr (ScalarTraits<T>::exact) {
            return v != 0;
        } else {
            return std::fabs(v) > 1e-10 * scale;
        }
    };
    if (sbo.first > 0 && sbo.first < n && nonzero(out.below)) out.nonzero_below.push_back(sbo.first - 1);
    for (std::size_t l = sbo.first; l + 1 < n; ++l)
        if (nonzero(out.eta[l - sbo.first])) out.nonzero_below.push_back(l);
    return out;
}

#define BOP_INSTANTIATE(T)                                                                                           \
    template GramMatrix<T> gamma_matrix<T>(const StandardBasis<T>&, const MomentSequence&, std::size_t);             \
    template GramMatrix<T> gamma_matrix<T>(const StandardBasis<T>&, const Measure&, std::size_t);                    \
    template SboBasis<T> build_sbo<T>(const Measure&, const Measure&, std::size_t, std::size_t, Normalization);     \
    template SboBasis<T> build_sbo<T>(std::shared_ptr<const StandardBasis<T>>, const Measure&, std::size_t,         \
                                      Normalization);                                                                \
    template SboBasis<T> normalize_sbo<T>(const SboBasis<T>&, Normalization);                                        \
    template SboOracle<T> sbo_determinant_oracle<T>(const StandardBasis<T>&, const GramMatrix<T>&, std::size_t,      \
                                                    std::size_t);                                                    \
    template SboBasis<T> sbo_parity_build<T>(const Measure&, const Measure&, std::size_t, std::size_t,              \
                                             Normalization);                                                         \
    template GeneralBoBasis<T> build_general_bo<T>(const Measure&, const Measure&, const std::vector<Polynomial<T>>&, \
                                                   std::size_t, std::optional<std::vector<std::size_t>>);            \
    template Matrix<T> monomial_connection<T>(const SboBasis<T>&);                                                   \
    template Matrix<T> cross_i_connection<T>(const SboBasis<T>&, const SboBasis<T>&);                                \
    template XExpansion<T> expand_x_times_P<T>(const SboBasis<T>&, std::size_t);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
