#include "blockortho/analysis.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bop {

namespace {

template <Scalar T>
QuadratureRule rule_from_basis(const StandardBasis<T>& b, std::size_t points, std::string descriptor) {
    Eigen::VectorXd diag(points), sub(points > 1 ? points - 1 : 0);
    for (std::size_t k = 0; k < points; ++k)
        diag(static_cast<Eigen::Index>(k)) = to_double(T(b.monic_subleading[k] - b.monic_subleading[k + 1]));
    for (std::size_t k = 1; k < points; ++k)
        sub(static_cast<Eigen::Index>(k - 1)) = std::sqrt(to_double(T(b.monic_norm(k) / b.monic_norm(k - 1))));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw MomentError("Jacobi eigenproblem did not converge");
    QuadratureRule rule;
    rule.descriptor = std::move(descriptor);
    for (std::size_t k = 0; k < points; ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        rule.nodes.push_back(solver.eigenvalues()(idx));
        const double v = solver.eigenvectors()(0, idx);
        rule.weights.push_back(v * v);
    }
    return rule;
}

double factorial(std::size_t n) {
    double f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

// Calls f(point, weight) for every node of the tensor grid.
void for_each_node(const QuadratureGrid& grid, const std::function<void(const std::vector<double>&, double)>& f) {
    const std::size_t d = grid.dimension();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> point(d);
    while (true) {
        double w = 1;
        for (std::size_t a = 0; a < d; ++a) {
            point[a] = grid.axes[a].nodes[idx[a]];
            w *= grid.axes[a].weights[idx[a]];
        }
        f(point, w);
        std::size_t a = 0;
        while (a < d && ++idx[a] == grid.axes[a].size()) idx[a++] = 0;
        if (a == d) return;
    }
}

double vandermonde(const std::vector<double>& y) {
    double v = 1;
    for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) v *= y[k] - y[j];
    return v;
}

IntegralReport report(std::string check, std::size_t i, std::size_t n, double lhs, double rhs) {
    const double scale = std::max(std::fabs(rhs), std::numeric_limits<double>::min());
    const double rel = std::fabs(lhs - rhs) / scale;
    return {std::move(check), i, n, lhs, rhs, rel, rel <= kIntegralTolerance};
}

template <Scalar T>
std::vector<Polynomial<double>> as_double(const std::vector<Polynomial<T>>& ps) {
    std::vector<Polynomial<double>> out;
    for (const auto& p : ps) {
        std::vector<double> c;
        for (const auto& v : p.coeffs()) c.push_back(to_double(v));
        out.emplace_back(std::move(c));
    }
    return out;
}

template <Scalar T>
T hankel_det(const MomentSequence& ms, std::size_t n) {
    return determinant(hankel_matrix<T>(ms, n).entries);
}

QuadratureGrid make_grid(const std::vector<const Measure*>& axes, std::size_t points) {
    QuadratureGrid g;
    for (const Measure* m : axes) g.axes.push_back(gauss_rule(*m, points));
    return g;
}

}  // namespace

QuadratureRule gauss_rule(const Measure& measure, std::size_t points) {
    if (points == 0) throw InsufficientNodes("a quadrature rule needs at least one node");
    const std::string d = "gauss:" + measure.describe() + ":" + std::to_string(points);
    if (measure.exact()) return rule_from_basis(build_standard<Rational>(measure, points + 1), points, d);
    return rule_from_basis(build_standard<double>(measure, points + 1), points, d);
}

std::size_t QuadratureGrid::min_points() const {
    std::size_t m = axes.empty() ? 0 : axes.front().size();
    for (const auto& a : axes) m = std::min(m, a.size());
    return m;
}

std::string QuadratureGrid::descriptor() const {
    std::ostringstream os;
    for (std::size_t a = 0; a < axes.size(); ++a) os << (a ? " x " : "") << axes[a].descriptor;
    return os.str();
}

template <Scalar T>
std::vector<IntegralReport> verify_Z_integral(const SboBasis<T>& sbo, std::size_t n, const QuadratureGrid& grid) {
    const std::size_t i = sbo.first;
    if (n < i || n >= sbo.dim) throw IndexOutOfRange("Z integral index outside the block");
    const std::size_t d = n - i + 1;
    if (d > kMaxBlockDimension)
        throw DimensionCap(std::to_string(d) + " integration variables exceed the cap of " +
                           std::to_string(kMaxBlockDimension));
    if (grid.dimension() != d) throw DimensionCap("grid dimension does not match the number of variables");
    if (grid.min_points() < n + 1)
        throw InsufficientNodes("squared alternant of degree " + std::to_string(2 * n) + " needs " +
                                std::to_string(n + 1) + " nodes per axis");
    const auto q = as_double(sbo.q_basis->polys);

    double integral = 0, hankel_integral = 0;
    for_each_node(grid, [&](const std::vector<double>& y, double w) {
        Matrix<double> m(d, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) m(j, k) = q[i + k](y[j]);
        const double det = determinant(std::move(m));
        integral += w * det * det;
        const double v = vandermonde(y);
        hankel_integral += w * v * v;
    });
    integral /= factorial(d);
    hankel_integral /= factorial(d);

    std::vector<IntegralReport> out;
    out.push_back(report("Z-integral", i, n, integral, to_double(sbo.block_det(static_cast<long>(n)))));
    if (i == 0) {
        const T hankel = hankel_det<T>(sbo.second_moments, n + 1);
        out.push_back(report("hankel-integral", i, n, hankel_integral, to_double(hankel)));
        T lead_sq(1);
        for (std::size_t j = 0; j <= n; ++j) lead_sq *= sbo.q_basis->leading[j] * sbo.q_basis->leading[j];
        const T lhs = sbo.block_det(static_cast<long>(n));
        const T rhs = lead_sq * hankel;
        IntegralReport r = report("Z-hankel-identity", i, n, to_double(lhs), to_double(rhs));
        if constexpr (ScalarTraits<T>::exact) {
            r.rel_err = lhs == rhs ? 0.0 : r.rel_err;
            r.pass = lhs == rhs;
        }
        out.push_back(r);
    }
    return out;
}

template <Scalar T>
std::vector<IntegralReport> verify_Z_integral(const SboBasis<T>& sbo, std::size_t n, std::size_t points) {
    if (n < sbo.first) throw IndexOutOfRange("Z integral index outside the block");
    const std::size_t d = n - sbo.first + 1;
    if (d > kMaxBlockDimension)
        throw DimensionCap(std::to_string(d) + " integration variables exceed the cap of " +
                           std::to_string(kMaxBlockDimension));
    if (points < n + 1) throw InsufficientNodes("need at least " + std::to_string(n + 1) + " nodes per axis");
    std::vector<const Measure*> axes(d, &sbo.measure2);
    return verify_Z_integral(sbo, n, make_grid(axes, points));
}

template <Scalar T>
PIntegralReport verify_P_integral(const SboBasis<T>& sbo, std::size_t n, std::size_t points) {
    const std::size_t i = sbo.first;
    if (n < i || n >= sbo.dim) throw IndexOutOfRange("P integral index outside the block");
    if (i > kMaxConstraintDimension || n - i > kMaxBlockDimension)
        throw DimensionCap("P integral limited to constraint dimension <= " + std::to_string(kMaxConstraintDimension) +
                           " and n - first <= " + std::to_string(kMaxBlockDimension));
    if (points < n) throw InsufficientNodes("need at least " + std::to_string(n) + " nodes per axis");
    const StandardBasis<T>& qb = *sbo.q_basis;
    const auto q = as_double(qb.polys);

    std::vector<const Measure*> axes;
    for (std::size_t j = 0; j < n; ++j) axes.push_back(j < i ? &sbo.measure1 : &sbo.measure2);
    const QuadratureGrid grid = make_grid(axes, points);

    T pref(1);
    for (std::size_t j = 0; j < n; ++j) pref *= qb.leading[j];
    T denom = sbo.block_det(static_cast<long>(n) - 1);
    for (std::size_t j = 0; j < i; ++j) denom *= qb.norms[j];
    const double prefactor = to_double(T(pref / denom));

    std::vector<double> direct(n + 1, 0.0), symmetrized(n + 1, 0.0), classical(n + 1, 0.0);
    for_each_node(grid, [&](const std::vector<double>& y, double w) {
        // prod_j (x - y_j), ascending in x.
        std::vector<double> roots_poly{1.0};
        for (double yj : y) {
            std::vector<double> next(roots_poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < roots_poly.size(); ++k) {
                next[k + 1] += roots_poly[k];
                next[k] -= yj * roots_poly[k];
            }
            roots_poly = std::move(next);
        }
        const double v = vandermonde(y);
        double diagonal = 1;
        for (std::size_t j = 0; j < n; ++j) diagonal *= q[j](y[j]);
        double alt = 0;
        if (i == 0) {
            Matrix<double> m(n, n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) m(j, k) = q[k](y[j]);
            alt = determinant(std::move(m));
        }
        for (std::size_t k = 0; k <= n; ++k) {
            direct[k] += w * v * diagonal * roots_poly[k];
            if (i == 0) {
                symmetrized[k] += w * v * alt * roots_poly[k];
                classical[k] += w * v * v * roots_poly[k];
            }
        }
    });

    PIntegralReport out;
    const Polynomial<T> ref = sbo.monic(n);
    std::vector<double> ref_c;
    for (std::size_t k = 0; k <= n; ++k) ref_c.push_back(to_double(ref.coeff(k)));
    out.reference = Polynomial<double>(ref_c);
    double ref_scale = 0;
    for (double c : ref_c) ref_scale = std::max(ref_scale, std::fabs(c));

    auto compare = [&](const std::string& name, std::vector<double> coeffs, double scale) {
        double err = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            coeffs[k] *= scale;
            err = std::max(err, std::fabs(coeffs[k] - ref_c[k]));
        }
        IntegralReport r{name, i, n, err, ref_scale, err / ref_scale, err / ref_scale <= kIntegralTolerance};
        out.checks.push_back(r);
        return std::pair{Polynomial<double>(coeffs), err};
    };
    auto [integral, err] = compare("P-integral", direct, prefactor);
    out.integral = integral;
    out.max_coeff_err = err;
    if (i == 0) {
        compare("P-integral-symmetrized", symmetrized, prefactor / factorial(n));
        const double hankel = to_double(hankel_det<T>(sbo.second_moments, n));
        compare("P-integral-classical", classical, 1.0 / (factorial(n) * hankel));
    }
    return out;
}

template <Scalar T>
ZeroReport zero_report(const SboBasis<T>& sbo, std::size_t n, std::size_t resolution) {
    const SignChangeReport sc = sign_changes_in(sbo.poly(n), sbo.measure1.truncated_support(), resolution);
    ZeroReport out{sc.count, sc.brackets, sc.count >= sbo.first};
    if (n >= 1 && sbo.first == n - 1) out.satisfies_theorem = sc.count == n;
    return out;
}

#define BOP_INSTANTIATE(T)                                                                                  \
    template std::vector<IntegralReport> verify_Z_integral<T>(const SboBasis<T>&, std::size_t, std::size_t); \
    template std::vector<IntegralReport> verify_Z_integral<T>(const SboBasis<T>&, std::size_t,              \
                                                              const QuadratureGrid&);                       \
    template PIntegralReport verify_P_integral<T>(const SboBasis<T>&, std::size_t, std::size_t);            \
    template ZeroReport zero_report<T>(const SboBasis<T>&, std::size_t, std::size_t);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
