#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bop {

using Rational = mpq_class;

// Per-backend operations. The exact backend is GMP rationals, the float
// backend is IEEE double.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* backend = "exact";

    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational abs(const Rational& x) { return Rational(::abs(x)); }
    static bool finite(const Rational&) { return true; }
    // Throws NotRepresentable unless x is the square of a rational.
    static Rational sqrt(const Rational& x);
    // Canonical "p/q", or "p" for integers.
    static std::string to_string(const Rational& x);
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* backend = "float";

    static double to_double(double x) { return x; }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double abs(double x) { return std::fabs(x); }
    static bool finite(double x) { return std::isfinite(x); }
    static double sqrt(double x);
    // Shortest round-trip decimal literal.
    static std::string to_string(double x);
};

template <class T>
concept Scalar = requires(const T& x) {
    { ScalarTraits<T>::exact } -> std::convertible_to<bool>;
    { ScalarTraits<T>::to_double(x) } -> std::convertible_to<double>;
};

template <Scalar T>
inline double to_double(const T& x) {
    return ScalarTraits<T>::to_double(x);
}

template <Scalar T>
inline T from_rational(const Rational& q) {
    return ScalarTraits<T>::from_rational(q);
}

template <Scalar T>
inline T abs_value(const T& x) {
    return ScalarTraits<T>::abs(x);
}

template <Scalar T>
inline std::string to_string(const T& x) {
    return ScalarTraits<T>::to_string(x);
}

// Accepts "p", "p/q" and decimal literals such as "-2.5" or "1e-3"; decimals
// are converted exactly.
Rational parse_rational(std::string_view text);

// Rising factorial z (z+1) ... (z+n-1); (z)_0 = 1.
Rational pochhammer(const Rational& z, unsigned n);
double pochhammer(double z, unsigned n);

// (2k-1)!! with (-1)!! = 1.
Rational double_factorial_odd(unsigned k);

}  // namespace bop
