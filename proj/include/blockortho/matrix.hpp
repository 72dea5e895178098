#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blockortho/errors.hpp"
#include "blockortho/scalar.hpp"

namespace bop {

// Dense row-major matrix over a backend scalar.
template <Scalar T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::vector<T> column(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix out(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
        return out;
    }

    // Submatrix on the given row and column index sets.
    Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
        Matrix out(row_idx.size(), col_idx.size());
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix out(x.rows_, y.cols_);
        for (std::size_t r = 0; r < x.rows_; ++r)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(r, k) == 0) continue;
                for (std::size_t c = 0; c < y.cols_; ++c) out(r, c) += x(r, k) * y(k, c);
            }
        return out;
    }

    friend Matrix operator+(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] += y.data_[k];
        return x;
    }

    friend Matrix operator-(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] -= y.data_[k];
        return x;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

    T max_abs() const {
        T m(0);
        for (const T& v : data_) m = std::max<T>(m, abs_value(v));
        return m;
    }

    bool symmetric() const {
        if (!square()) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if ((*this)(r, c) != (*this)(c, r)) return false;
        return true;
    }

private:
    void check_same(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// Determinant: fraction-free (Bareiss) elimination for exact scalars, LU
// with partial pivoting for floats. A 0x0 matrix has determinant 1.
template <Scalar T>
T determinant(Matrix<T> m) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    if constexpr (ScalarTraits<T>::exact) {
        T sign(1), prev(1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n && m(p, k) == 0) ++p;
                if (p == n) return T(0);
                for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
                sign = -sign;
            }
            for (std::size_t r = k + 1; r < n; ++r) {
                for (std::size_t c = k + 1; c < n; ++c) {
                    T v = m(r, c) * m(k, k) - m(r, k) * m(k, c);
                    v /= prev;
                    m(r, c) = v;
                }
                m(r, k) = 0;
            }
            prev = m(k, k);
        }
        return sign * m(n - 1, n - 1);
    } else {
        T det(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t r = k + 1; r < n; ++r)
                if (abs_value(m(r, k)) > abs_value(m(p, k))) p = r;
            if (m(p, k) == 0) return T(0);
            if (p != k) {
                for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
                det = -det;
            }
            det *= m(k, k);
            for (std::size_t r = k + 1; r < n; ++r) {
                T f = m(r, k) / m(k, k);
                for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
            }
        }
        return det;
    }
}

// Determinant with row `row` and column `col` removed.
template <Scalar T>
T minor_det(const Matrix<T>& m, std::size_t row, std::size_t col) {
    std::vector<std::size_t> ri, ci;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (r != row) ri.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (c != col) ci.push_back(c);
    return determinant(m.select(ri, ci));
}

// Symmetric matrix of pairwise inner products of a basis.
template <Scalar T>
struct GramMatrix {
    Matrix<T> entries;
    std::string basis_label;

    std::size_t size() const { return entries.rows(); }
    const T& operator()(std::size_t j, std::size_t k) const { return entries(j, k); }
};

template <Scalar T>
struct RowEchelon {
    Matrix<T> reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

// Reduced row echelon form. Float entries with magnitude below
// tol * max|m| are treated as zero; tol is ignored for exact scalars.
template <Scalar T>
RowEchelon<T> rref(Matrix<T> m, double tol = 1e-12) {
    RowEchelon<T> out;
    const double scale = to_double(m.max_abs());
    auto negligible = [&](const T& v) {
        if constexpr (ScalarTraits<T>::exact) {
            return v == 0;
        } else {
            return std::fabs(v) <= tol * scale;
        }
    };
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if constexpr (ScalarTraits<T>::exact) {
                if (m(p, c) != 0) break;
                p = r;
            } else {
                if (std::fabs(m(r, c)) > std::fabs(m(p, c))) p = r;
            }
        }
        if (negligible(m(p, c))) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(row, k), m(p, k));
        T piv = m(row, c);
        for (std::size_t k = 0; k < m.cols(); ++k) m(row, k) /= piv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, c) == 0) continue;
            T f = m(r, c);
            for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(row, k);
        }
        out.pivot_cols.push_back(c);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

// Basis of the right null space read off a reduced echelon form; one vector
// per free column, with a 1 in that column.
template <Scalar T>
std::vector<std::vector<T>> nullspace_basis(const RowEchelon<T>& ech) {
    const Matrix<T>& m = ech.reduced;
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace bop
