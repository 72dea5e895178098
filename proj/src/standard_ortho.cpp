#include "blockortho/standard_ortho.hpp"

#include <string>

namespace bop {

const char* normalization_name(Normalization n) {
    switch (n) {
        case Normalization::Monic: return "monic";
        case Normalization::Orthonormal: return "orthonormal";
        case Normalization::DetNormalized: return "det-normalized";
    }
    return "monic";
}

Normalization parse_normalization(const std::string& text) {
    if (text == "monic") return Normalization::Monic;
    if (text == "orthonormal") return Normalization::Orthonormal;
    if (text == "det-normalized" || text == "det") return Normalization::DetNormalized;
    throw ParseError("unknown normalization '" + text + "'");
}

Rational hermite_leading(std::size_t n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    return Rational(p);
}

Rational laguerre_leading(std::size_t n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    Rational r(1, 1);
    r /= Rational(f);
    return n % 2 ? Rational(-r) : r;
}

namespace {

template <Scalar T>
void check_dimension(std::size_t dim) {
    if (dim == 0) throw IndexOutOfRange("basis dimension must be at least 1");
    if (!ScalarTraits<T>::exact && dim > kFloatDimensionLimit)
        throw ConditioningError("float Hankel pipeline refuses dimension " + std::to_string(dim) + " > " +
                                std::to_string(kFloatDimensionLimit));
}

// Leading coefficient for mode, given the monic norm and the previous Gram determinant.
template <Scalar T>
T leading_for(Normalization mode, const T& monic_norm, const T& prev_det) {
    switch (mode) {
        case Normalization::Monic: return T(1);
        case Normalization::Orthonormal: return ScalarTraits<T>::sqrt(T(1) / monic_norm);
        case Normalization::DetNormalized: return prev_det;
    }
    return T(1);
}

template <Scalar T>
std::vector<T> inverse_all(const std::vector<T>& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (const T& x : v) out.push_back(T(1) / x);
    return out;
}

template <Scalar T>
StandardBasis<T> finish(const Measure& measure, MomentSequence moments, Normalization mode,
                        const OrthogonalizationResult<T>& r) {
    StandardBasis<T> s{.measure = measure, .moments = std::move(moments), .normalization = mode, .dim = r.size()};
    const std::size_t n = r.size();
    s.to_monomial = r.a;
    s.from_monomial = r.b;
    s.norms = r.h;
    s.gram_dets = r.gram_dets;
    s.monic_to_monomial = Matrix<T>(n, n);
    s.monic_from_monomial = Matrix<T>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        s.polys.push_back(Polynomial<T>(r.vector(k)));
        s.leading.push_back(r.a(k, k));
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = m; k < n; ++k) {
            s.monic_to_monomial(m, k) = r.a(m, k) / s.leading[k];
            s.monic_from_monomial(m, k) = s.leading[m] * r.b(m, k);
        }
    for (std::size_t k = 0; k < n; ++k) {
        s.monic_subleading.push_back(k >= 1 ? s.monic_to_monomial(k - 1, k) : T(0));
        s.monic_subsubleading.push_back(k >= 2 ? s.monic_to_monomial(k - 2, k) : T(0));
    }
    s.recurrence = recurrence_coeffs(s);
    return s;
}

}  // namespace

template <Scalar T>
StandardBasis<T> build_standard(const Measure& measure, const MomentSequence& moments, std::size_t dim,
                                Normalization mode) {
    check_dimension<T>(dim);
    MomentSequence ms = moments.truncated(2 * (dim - 1));
    GramMatrix<T> gram = hankel_matrix<T>(ms, dim);
    OrthogonalizationResult<T> r = gram_schmidt(gram);
    if (mode != Normalization::Monic) {
        std::vector<T> lead(dim);
        for (std::size_t k = 0; k < dim; ++k) lead[k] = leading_for(mode, r.h[k], r.gram_dets[k]);
        r = gram_schmidt(gram, inverse_all(lead));
    }
    return finish(measure, std::move(ms), mode, r);
}

template <Scalar T>
StandardBasis<T> build_standard(const Measure& measure, std::size_t dim, Normalization mode) {
    check_dimension<T>(dim);
    return build_standard<T>(measure, measure.moments(2 * (dim - 1)), dim, mode);
}

template <Scalar T>
std::vector<RecurrenceStep<T>> recurrence_coeffs(const StandardBasis<T>& b) {
    std::vector<RecurrenceStep<T>> out;
    for (std::size_t n = 0; n + 1 < b.dim; ++n) {
        RecurrenceStep<T> st;
        st.scale = b.leading[n + 1] / b.leading[n];
        st.shift = st.scale * (b.monic_subleading[n + 1] - b.monic_subleading[n]);
        if (n == 0) {
            st.lag = T(0);
        } else {
            st.lag = (st.scale / out[n - 1].scale) * (b.norms[n] / b.norms[n - 1]);
        }
        out.push_back(st);
    }
    return out;
}

template <Scalar T>
Polynomial<T> recurrence_residual(const StandardBasis<T>& b, std::size_t n) {
    if (n + 1 >= b.dim) throw IndexOutOfRange("recurrence step beyond basis");
    const auto& st = b.recurrence[n];
    Polynomial<T> rhs = b.polys[n].mul_x() * st.scale;
    rhs.add_scaled(b.polys[n], st.shift);
    if (n > 0) rhs.add_scaled(b.polys[n - 1], -st.lag);
    return b.polys[n + 1] - rhs;
}

template <Scalar T>
std::vector<Polynomial<T>> build_by_recurrence(const Measure& measure, std::size_t dim) {
    StandardBasis<T> b = build_standard<T>(measure, dim, Normalization::Monic);
    std::vector<Polynomial<T>> out{Polynomial<T>::constant(T(1))};
    Polynomial<T> prev;
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        const auto& st = b.recurrence[n];
        Polynomial<T> next = out[n].mul_x() * st.scale;
        next.add_scaled(out[n], st.shift);
        next.add_scaled(prev, -st.lag);
        prev = out[n];
        out.push_back(std::move(next));
    }
    return out;
}

template <Scalar T>
StandardBasis<T> parity_split_build(const Measure& measure, std::size_t dim, Normalization mode) {
    if (!measure.symmetric()) throw NotSymmetric("parity split needs a symmetric measure");
    check_dimension<T>(dim);
    MomentSequence ms = measure.moments(2 * (dim - 1));
    const auto& mu = ms.values<T>();
    const std::size_t ne = (dim + 1) / 2, no = dim / 2;
    GramMatrix<T> even{Matrix<T>(ne, ne), "even monomials"}, odd{Matrix<T>(no, no), "odd monomials"};
    for (std::size_t j = 0; j < ne; ++j)
        for (std::size_t k = 0; k < ne; ++k) even.entries(j, k) = mu[2 * j + 2 * k];
    for (std::size_t j = 0; j < no; ++j)
        for (std::size_t k = 0; k < no; ++k) odd.entries(j, k) = mu[2 * j + 2 * k + 2];

    auto re = gram_schmidt(even);
    auto ro = no > 0 ? gram_schmidt(odd) : OrthogonalizationResult<T>{{}, {}, {}, {}, {T(1)}};
    std::vector<T> dets(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) dets[k] = re.gram_dets[(k + 1) / 2] * ro.gram_dets[k / 2];

    std::vector<T> lead(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const T& hk = k % 2 == 0 ? re.h[k / 2] : ro.h[k / 2];
        lead[k] = leading_for(mode, hk, dets[k]);
    }
    if (mode != Normalization::Monic) {
        std::vector<T> fe, fo;
        for (std::size_t k = 0; k < dim; ++k) (k % 2 == 0 ? fe : fo).push_back(T(1) / lead[k]);
        re = gram_schmidt(even, fe);
        if (no > 0) ro = gram_schmidt(odd, fo);
    }

    OrthogonalizationResult<T> full{Matrix<T>(dim, dim), Matrix<T>(dim, dim), std::vector<T>(dim),
                                    inverse_all(lead), dets};
    for (std::size_t n = 0; n < dim; ++n) {
        const auto& sector = n % 2 == 0 ? re : ro;
        const std::size_t off = n % 2, sn = n / 2;
        full.h[n] = sector.h[sn];
        for (std::size_t m = 0; m <= sn; ++m) {
            full.a(2 * m + off, n) = sector.a(m, sn);
            full.b(2 * m + off, n) = sector.b(m, sn);
        }
    }
    return finish(measure, std::move(ms), mode, full);
}

template <Scalar T>
StandardOracle<T> standard_determinant_oracle(const StandardBasis<T>& b, std::size_t n) {
    if (n >= b.dim) throw IndexOutOfRange("oracle index beyond basis");
    GramMatrix<T> gram = hankel_matrix<T>(b.moments, b.dim);
    const T factor = T(1) / b.leading[n];
    StandardOracle<T> o;
    o.poly = Polynomial<T>(determinant_oracle_vector(gram, n, factor));
    o.norm = norm_from_determinants(gram, n, factor);
    OrthogonalizationResult<T> diag;
    diag.b_diag = inverse_all(b.leading);
    for (std::size_t m = 0; m <= n; ++m) {
        o.to_monomial.push_back(signed_minor_coefficient(gram, m, n, factor));
        o.from_monomial.push_back(connection_b(gram, diag, m, n));
    }
    return o;
}

#define BOP_INSTANTIATE(T)                                                                                          \
    template StandardBasis<T> build_standard<T>(const Measure&, std::size_t, Normalization);                        \
    template StandardBasis<T> build_standard<T>(const Measure&, const MomentSequence&, std::size_t, Normalization); \
    template std::vector<RecurrenceStep<T>> recurrence_coeffs<T>(const StandardBasis<T>&);                         \
    template Polynomial<T> recurrence_residual<T>(const StandardBasis<T>&, std::size_t);                           \
    template std::vector<Polynomial<T>> build_by_recurrence<T>(const Measure&, std::size_t);                       \
    template StandardBasis<T> parity_split_build<T>(const Measure&, std::size_t, Normalization);                   \
    template StandardOracle<T> standard_determinant_oracle<T>(const StandardBasis<T>&, std::size_t);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
