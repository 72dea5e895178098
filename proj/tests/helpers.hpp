#pragma once

#include "blockortho/polynomial.hpp"
#include "oracles.hpp"

inline oracle::Coeffs coeffs_of(const bop::Polynomial<bop::Rational>& p) {
    return oracle::Coeffs(p.coeffs().begin(), p.coeffs().end());
}

inline bop::Polynomial<bop::Rational> poly_of(const oracle::Coeffs& c) { return bop::Polynomial<bop::Rational>(c); }

inline bop::Polynomial<bop::Rational> rpoly(std::initializer_list<const char*> coeffs) {
    std::vector<bop::Rational> c;
    for (const char* s : coeffs) c.push_back(bop::parse_rational(s));
    return bop::Polynomial<bop::Rational>(std::move(c));
}
