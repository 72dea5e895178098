#pragma once

#include <cstddef>
#include <vector>

#include "blockortho/gso.hpp"
#include "blockortho/measures.hpp"
#include "blockortho/polynomial.hpp"

namespace bop {

// Monic: leading coefficient 1. Orthonormal: unit norm against the
// normalized measure (mu_0 = 1), positive leading coefficient. DetNormalized:
// leading coefficient equal to the previous Gram determinant.
enum class Normalization { Monic, Orthonormal, DetNormalized };

const char* normalization_name(Normalization n);
Normalization parse_normalization(const std::string& text);

// Q_{n+1} = (scale * x + shift) Q_n - lag * Q_{n-1}.
template <Scalar T>
struct RecurrenceStep {
    T scale;
    T shift;
    T lag;
};

// Largest float basis size accepted; Hankel conditioning is hopeless beyond it.
inline constexpr std::size_t kFloatDimensionLimit = 20;

// Orthogonal polynomials of one measure. Norms are relative to the
// normalized measure; multiply by c0 for absolute values.
template <Scalar T>
struct StandardBasis {
    Measure measure;
    MomentSequence moments;  // orders 0..2N-2
    Normalization normalization = Normalization::Monic;
    std::size_t dim = 0;

    std::vector<Polynomial<T>> polys{};
    std::vector<T> norms{};
    std::vector<T> leading{};
    std::vector<T> monic_subleading{};     // coefficient of x^{n-1} in the monic polynomial, 0 for n = 0
    std::vector<T> monic_subsubleading{};  // coefficient of x^{n-2}, 0 for n < 2
    Matrix<T> to_monomial{};               // column n: coefficients of Q_n
    Matrix<T> from_monomial{};             // column n: x^n in terms of Q_0..Q_n
    Matrix<T> monic_to_monomial{};
    Matrix<T> monic_from_monomial{};
    std::vector<T> gram_dets{};  // entry k: leading k x k Hankel determinant
    std::vector<RecurrenceStep<T>> recurrence{};  // steps 0..N-2

    double c0() const { return moments.c0; }
    double absolute_norm(std::size_t n) const { return moments.c0 * to_double(norms[n]); }
    Polynomial<T> monic(std::size_t n) const { return polys[n] * (T(1) / leading[n]); }
    T monic_norm(std::size_t n) const { return norms[n] / (leading[n] * leading[n]); }
};

template <Scalar T>
StandardBasis<T> build_standard(const Measure& measure, std::size_t dim, Normalization normalization = Normalization::Monic);

// Same basis from a moment table already at hand.
template <Scalar T>
StandardBasis<T> build_standard(const Measure& measure, const MomentSequence& moments, std::size_t dim,
                                Normalization normalization = Normalization::Monic);

// Recomputes the three-term coefficients from leading coefficients,
// subleading monic coefficients and norms.
template <Scalar T>
std::vector<RecurrenceStep<T>> recurrence_coeffs(const StandardBasis<T>& basis);

// Residual Q_{n+1} - (scale x + shift) Q_n + lag Q_{n-1}.
template <Scalar T>
Polynomial<T> recurrence_residual(const StandardBasis<T>& basis, std::size_t n);

// Monic polynomials regenerated by replaying the recurrence of the monic
// Hankel build.
template <Scalar T>
std::vector<Polynomial<T>> build_by_recurrence(const Measure& measure, std::size_t dim);

// Even and odd degrees built from separate half-size moment systems.
template <Scalar T>
StandardBasis<T> parity_split_build(const Measure& measure, std::size_t dim,
                                    Normalization normalization = Normalization::Monic);

// Determinant-formula counterpart of one basis element.
template <Scalar T>
struct StandardOracle {
    Polynomial<T> poly;
    T norm;
    std::vector<T> to_monomial;    // signed-minor route, entries 0..n
    std::vector<T> from_monomial;  // bordered-determinant route for the column of x^n, entries 0..n
};

template <Scalar T>
StandardOracle<T> standard_determinant_oracle(const StandardBasis<T>& basis, std::size_t n);

// Leading coefficient of the classical physicists' Hermite polynomial H_n.
Rational hermite_leading(std::size_t n);
// Leading coefficient of the classical Laguerre polynomial L_n.
Rational laguerre_leading(std::size_t n);

// Rescales a monic polynomial to a prescribed leading coefficient.
template <Scalar T>
Polynomial<T> with_leading(const Polynomial<T>& monic, const T& lead) {
    return monic * lead;
}

}  // namespace bop
