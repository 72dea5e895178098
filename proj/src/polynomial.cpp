#include "blockortho/polynomial.hpp"

#include <cmath>

#include "blockortho/matrix.hpp"

namespace bop {

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "Even";
        case Parity::Odd: return "Odd";
        case Parity::Mixed: return "Mixed";
        case Parity::Zero: return "Zero";
    }
    return "Mixed";
}

template <Scalar T>
double root_bound(const Polynomial<T>& p) {
    const long n = p.degree();
    if (n <= 0) return 0.0;
    const double lead = std::fabs(to_double(p.leading()));
    double bound = 0;
    for (long k = 1; k <= n; ++k) {
        double a = std::fabs(to_double(p.coeff(static_cast<std::size_t>(n - k)))) / lead;
        if (a == 0) continue;
        if (k == n) a /= 2;
        bound = std::max(bound, std::pow(a, 1.0 / static_cast<double>(k)));
    }
    return 2 * bound;
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

template <Scalar T>
int sign_at(const Polynomial<T>& p, double x) {
    if constexpr (ScalarTraits<T>::exact) {
        T v = p(T(x));
        return sgn(v);
    } else {
        return sign_of(p(x));
    }
}

}  // namespace

template <Scalar T>
SignChangeReport sign_changes_in(const Polynomial<T>& p, Interval domain, std::size_t resolution) {
    SignChangeReport out;
    if (p.degree() <= 0) return out;
    if (resolution < 2) resolution = 2;
    // Step just beyond the bound so no root sits on a clipped end.
    const double bound = root_bound(p) * 1.0009765625 + 1.0;
    double lo = std::max(domain.lo, -bound);
    double hi = std::min(domain.hi, bound);
    if (!(lo < hi)) return out;

    const double step = (hi - lo) / static_cast<double>(resolution);
    const double width = ScalarTraits<T>::exact ? std::ldexp(std::max(1.0, hi - lo), -40) : 1e-12;
    double last_x = 0;
    int last_sign = 0;
    for (std::size_t k = 0; k <= resolution; ++k) {
        const double x = k == resolution ? hi : lo + step * static_cast<double>(k);
        const int s = sign_at(p, x);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            double a = last_x, b = x;
            int sa = last_sign;
            while (b - a > width) {
                const double mid = a + (b - a) / 2;
                if (mid <= a || mid >= b) break;
                const int sm = sign_at(p, mid);
                if (sm == 0) {
                    a = b = mid;
                    break;
                }
                if (sm == sa) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.brackets.push_back({a, b});
            ++out.count;
        }
        last_sign = s;
        last_x = x;
    }
    return out;
}

template <Scalar T>
T alternant_det(const std::vector<T>& points, const std::vector<Polynomial<T>>& polys) {
    if (points.size() != polys.size()) throw DegreeError("alternant needs as many points as polynomials");
    const std::size_t n = points.size();
    Matrix<T> m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (polys[k].degree() != static_cast<long>(k))
            throw DegreeError("alternant polynomial " + std::to_string(k) + " must have degree " + std::to_string(k));
        for (std::size_t j = 0; j < n; ++j) m(j, k) = polys[k](points[j]);
    }
    return determinant(std::move(m));
}

template <Scalar T>
T alternant_product(const std::vector<T>& points, const std::vector<Polynomial<T>>& polys) {
    T r(1);
    for (const auto& p : polys) r *= p.leading();
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) r *= points[k] - points[j];
    return r;
}

#define BOP_INSTANTIATE(T)                                                                      \
    template double root_bound<T>(const Polynomial<T>&);                                        \
    template SignChangeReport sign_changes_in<T>(const Polynomial<T>&, Interval, std::size_t); \
    template T alternant_det<T>(const std::vector<T>&, const std::vector<Polynomial<T>>&);      \
    template T alternant_product<T>(const std::vector<T>&, const std::vector<Polynomial<T>>&);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
