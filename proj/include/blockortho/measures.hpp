#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "blockortho/errors.hpp"
#include "blockortho/matrix.hpp"
#include "blockortho/polynomial.hpp"
#include "blockortho/scalar.hpp"

namespace bop {

// Normalized moments mu_n = c_n / c_0, so mu_0 = 1. c0 is carried only for
// reporting absolute norms; c0_symbol names any transcendental factor.
struct MomentSequence {
    double c0 = 1.0;
    std::string c0_symbol = "1";
    bool exact = false;
    std::size_t max_order = 0;
    std::vector<Rational> exact_mu;  // filled iff exact
    std::vector<double> mu;          // always filled

    // Throws NotExact when exact values are requested from a float table.
    template <Scalar T>
    const std::vector<T>& values() const {
        if constexpr (ScalarTraits<T>::exact) {
            if (!exact) throw NotExact("moment table has inexact entries");
            return exact_mu;
        } else {
            return mu;
        }
    }

    // First max_order + 1 entries; throws InsufficientMoments when short.
    MomentSequence truncated(std::size_t order) const;
};

// w(x) = exp(-alpha x^2) on the whole line.
struct GaussianWeight {
    Rational alpha;
};

// w(x) = exp(-alpha x) x^(z-1) on [0, inf).
struct GammaWeight {
    Rational alpha;
    Rational z;
};

// Explicit moment list. The domain is declared by the caller.
struct TabulatedMoments {
    MomentSequence table;
};

// Composite Gauss-Legendre rule: `panels` equal panels on [lo, hi], each with
// `nodes` points.
struct QuadratureRuleSpec {
    std::size_t nodes = 32;
    std::size_t panels = 64;
    double lo = 0.0;
    double hi = 1.0;
};

// Weight given by an evaluator, integrated with a declared rule. Moments are
// computed once, up to max_order, when the measure is constructed.
struct NumericWeight {
    std::string name;
    std::function<double(double)> weight;
    QuadratureRuleSpec rule;
    std::size_t max_order = 0;
};

class Measure {
public:
    static Measure gaussian(const Rational& alpha);
    static Measure gamma(const Rational& alpha, const Rational& z);
    static Measure tabulated(MomentSequence table, Interval domain = {});
    static Measure numeric(std::string name, std::function<double(double)> weight, QuadratureRuleSpec rule,
                           std::size_t max_order);

    // Evaluates the weight; tabulated measures have none and throw MomentError.
    double weight(double x) const;
    Interval domain() const { return domain_; }
    // Domain clipped to where the weight is at least 1e-18.
    Interval truncated_support() const;
    bool symmetric() const { return symmetric_; }
    bool exact() const;
    std::string describe() const;

    MomentSequence moments(std::size_t max_order) const;

    const std::variant<GaussianWeight, GammaWeight, TabulatedMoments, NumericWeight>& spec() const { return *spec_; }

    // Same family and parameters. Numeric and tabulated measures compare by identity.
    friend bool operator==(const Measure& a, const Measure& b);

private:
    using Spec = std::variant<GaussianWeight, GammaWeight, TabulatedMoments, NumericWeight>;
    Measure(Spec spec, Interval domain);

    std::shared_ptr<const Spec> spec_;
    std::shared_ptr<const MomentSequence> numeric_moments_;
    Interval domain_;
    bool symmetric_ = false;
};

inline constexpr double kWeightCutoff = 1e-18;

// Hankel matrix [mu_{j+k}], j, k < n.
template <Scalar T>
GramMatrix<T> hankel_matrix(const MomentSequence& ms, std::size_t n);

// Sum_{j,k} p_j q_k mu_{j+k}, in units of c0.
template <Scalar T>
T inner_product(const MomentSequence& ms, const Polynomial<T>& p, const Polynomial<T>& q);

template <Scalar T>
T inner_product(const Measure& m, const Polynomial<T>& p, const Polynomial<T>& q);

// Sum_k p_k mu_{k + shift}: the pairing of p with x^shift.
template <Scalar T>
T moment_functional(const MomentSequence& ms, const Polynomial<T>& p, std::size_t shift = 0);

// Moment tables: CSV rows "n,mu_n" (optional header, optional "c0,<value>"
// row) or JSON {"c0": ..., "mu": [...]}. "p/q" strings and integers are
// exact; any decimal entry makes the whole table inexact. mu_0 must be 1.
MomentSequence parse_moment_csv(const std::string& text);
MomentSequence parse_moment_json(const std::string& text);
// Dispatches on the first non-blank character ('{' means JSON).
MomentSequence read_moment_file(const std::string& path);

std::string moment_table_json(const MomentSequence& ms);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace bop
