#include "blockortho/scalar.hpp"

#include <charconv>
#include <cctype>
#include <stdexcept>

#include "blockortho/errors.hpp"

namespace bop {

Rational ScalarTraits<Rational>::sqrt(const Rational& x) {
    if (x < 0) throw NotRepresentable("square root of a negative rational");
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw NotRepresentable("square root of " + x.get_str() + " is not rational");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

std::string ScalarTraits<Rational>::to_string(const Rational& x) { return x.get_str(); }

double ScalarTraits<double>::sqrt(double x) {
    if (!(x >= 0)) throw NotRepresentable("square root of a negative or NaN value");
    return std::sqrt(x);
}

std::string ScalarTraits<double>::to_string(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed number '" + std::string(whole) + "'");
    return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty number");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        mpz_class den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        result = Rational(num, den);
        result.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            mpz_class ev = parse_integer(exp_text, text);
            if (!ev.fits_slong_p() || abs(ev) > 4000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
            exponent = ev.get_si() * (exp_negative ? -1 : 1);
            s = s.substr(0, e);
        }
        std::string_view int_part = s, frac_part;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            int_part = s.substr(0, dot);
            frac_part = s.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + std::string(text) + "'");
        std::string digits = std::string(int_part) + std::string(frac_part);
        mpz_class num = parse_integer(digits, text);
        exponent -= static_cast<long>(frac_part.size());
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0) {
            result = Rational(num * scale);
        } else {
            result = Rational(num, scale);
            result.canonicalize();
        }
    }
    if (negative) result = -result;
    return result;
}

Rational pochhammer(const Rational& z, unsigned n) {
    Rational r = 1;
    for (unsigned k = 0; k < n; ++k) r *= z + k;
    return r;
}

double pochhammer(double z, unsigned n) {
    double r = 1.0;
    for (unsigned k = 0; k < n; ++k) r *= z + k;
    return r;
}

Rational double_factorial_odd(unsigned k) {
    Rational r = 1;
    for (unsigned j = 1; j <= k; ++j) r *= 2 * j - 1;
    return r;
}

}  // namespace bop
