#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <vector>

#include "blockortho/errors.hpp"
#include "blockortho/scalar.hpp"

namespace bop {

// Dense polynomial with ascending coefficients; coeffs[k] multiplies x^k.
// The stored list never ends in a zero, so the zero polynomial is empty.
template <Scalar T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(std::size_t k, const T& lead = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = lead;
        return Polynomial(std::move(c));
    }

    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial& operator+=(const Polynomial& q) {
        if (q.c_.size() > c_.size()) c_.resize(q.c_.size(), T(0));
        for (std::size_t k = 0; k < q.c_.size(); ++k) c_[k] += q.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& q) {
        if (q.c_.size() > c_.size()) c_.resize(q.c_.size(), T(0));
        for (std::size_t k = 0; k < q.c_.size(); ++k) c_[k] -= q.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        for (T& v : c_) v *= s;
        trim();
        return *this;
    }
    // Adds s * q without materializing the scaled copy.
    Polynomial& add_scaled(const Polynomial& q, const T& s) {
        if (q.c_.size() > c_.size()) c_.resize(q.c_.size(), T(0));
        for (std::size_t k = 0; k < q.c_.size(); ++k) c_[k] += s * q.c_[k];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator-(Polynomial p) { return p *= T(-1); }
    friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
    friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<T> r(p.c_.size() + q.c_.size() - 1, T(0));
        for (std::size_t j = 0; j < p.c_.size(); ++j) {
            if (p.c_[j] == 0) continue;
            for (std::size_t k = 0; k < q.c_.size(); ++k) r[j + k] += p.c_[j] * q.c_[k];
        }
        return Polynomial(std::move(r));
    }
    friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.c_ == q.c_; }

    Polynomial scale(const T& s) const { return *this * s; }
    // x * p(x).
    Polynomial mul_x() const {
        if (is_zero()) return {};
        std::vector<T> r(c_.size() + 1, T(0));
        std::copy(c_.begin(), c_.end(), r.begin() + 1);
        return Polynomial(std::move(r));
    }
    // p(-x).
    Polynomial reflected() const {
        Polynomial r = *this;
        for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
        return r;
    }
    Polynomial monic() const {
        if (is_zero()) throw DegreeError("the zero polynomial has no monic form");
        return *this * (T(1) / leading());
    }

    // Largest coefficient magnitude, as a double.
    double max_abs_coeff() const {
        double m = 0;
        for (const T& v : c_) m = std::max(m, std::fabs(to_double(v)));
        return m;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

enum class Parity { Even, Odd, Mixed, Zero };

const char* parity_name(Parity p);

template <Scalar T>
Parity parity_of(const Polynomial<T>& p) {
    if (p.is_zero()) return Parity::Zero;
    bool has_even = false, has_odd = false;
    const auto& c = p.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        (k % 2 == 0 ? has_even : has_odd) = true;
    }
    if (has_even && has_odd) return Parity::Mixed;
    return has_odd ? Parity::Odd : Parity::Even;
}

// Real interval; either end may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

struct Bracket {
    double lo;
    double hi;
};

struct SignChangeReport {
    std::size_t count = 0;
    std::vector<Bracket> brackets;
};

// Counts sign changes of p on a uniform grid over the domain, clipped to the
// Fujiwara root bound, and refines each one by bisection. Grid points where p
// vanishes are skipped, so each change brackets a zero of odd order and the
// count is a lower bound on the distinct odd-order zeros inside the domain.
// Float brackets have width at most 1e-12; exact brackets have dyadic rational
// endpoints and width at most 2^-40 (relative to the grid cell scale).
template <Scalar T>
SignChangeReport sign_changes_in(const Polynomial<T>& p, Interval domain, std::size_t resolution = 4096);

// Upper bound on the modulus of every complex root (Fujiwara).
template <Scalar T>
double root_bound(const Polynomial<T>& p);

// det[polys[k](points[j])] computed by elimination. polys[k] must have degree k.
template <Scalar T>
T alternant_det(const std::vector<T>& points, const std::vector<Polynomial<T>>& polys);

// Product form of the alternant: (prod of leading coefficients) * prod_{j<k} (y_k - y_j).
template <Scalar T>
T alternant_product(const std::vector<T>& points, const std::vector<Polynomial<T>>& polys);

}  // namespace bop
