#include "blockortho/serialize.hpp"

#include <cmath>
#include <sstream>

#include "blockortho/errors.hpp"

namespace bop {

template <Scalar T>
Json scalar_json(const T& x) {
    if constexpr (ScalarTraits<T>::exact)
        return x.get_str();
    else
        return x;
}

template <Scalar T>
Json polynomial_json(const Polynomial<T>& p) {
    Json coeffs = Json::array();
    if (p.is_zero()) coeffs.push_back(scalar_json(T(0)));
    for (const auto& c : p.coeffs()) coeffs.push_back(scalar_json(c));
    return Json{{"coeffs", coeffs}};
}

namespace {

bool is_decimal_text(const std::string& s) { return s.find_first_of(".eE") != std::string::npos; }

template <Scalar T>
T scalar_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if constexpr (ScalarTraits<T>::exact) {
            if (is_decimal_text(s)) throw KindMismatch("decimal entry '" + s + "' where an exact value is required");
            return parse_rational(s);
        } else {
            return parse_rational(s).get_d();
        }
    }
    if (j.is_number_integer()) {
        if constexpr (ScalarTraits<T>::exact)
            return Rational(mpz_class(j.dump(), 10));
        else
            return j.get<double>();
    }
    if (j.is_number_float()) {
        if constexpr (ScalarTraits<T>::exact)
            throw KindMismatch("float entry " + j.dump() + " where an exact value is required");
        else
            return j.get<double>();
    }
    throw ParseError("coefficient must be a number or a string, got " + j.dump());
}

}  // namespace

template <Scalar T>
Polynomial<T> polynomial_from_json(const Json& j) {
    const Json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("coeffs")) throw ParseError("polynomial object lacks \"coeffs\"");
        arr = &j.at("coeffs");
    }
    if (!arr->is_array()) throw ParseError("polynomial coefficients must be an array");
    std::vector<T> coeffs;
    for (const auto& c : *arr) coeffs.push_back(scalar_from_json<T>(c));
    return Polynomial<T>(std::move(coeffs));
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json measure_json(const Measure& m) { return m.describe(); }

template <Scalar T>
Json standard_table_json(const StandardBasis<T>& basis) {
    Json out;
    out["measure"] = measure_json(basis.measure);
    out["backend"] = ScalarTraits<T>::backend;
    out["N"] = basis.dim;
    out["normalization"] = normalization_name(basis.normalization);
    out["c0"] = basis.c0();
    out["c0_symbol"] = basis.moments.c0_symbol;
    Json polys, norms;
    for (std::size_t n = 0; n < basis.dim; ++n) {
        polys["Q_" + std::to_string(n)] = polynomial_json(basis.polys[n]);
        norms["h_" + std::to_string(n)] = scalar_json(basis.norms[n]);
    }
    out["polynomials"] = std::move(polys);
    out["norms"] = std::move(norms);
    return out;
}

template <Scalar T>
Json sbo_table_json(const SboBasis<T>& sbo) {
    const std::string tag = std::to_string(sbo.first) + "_";
    Json out;
    out["measure1"] = measure_json(sbo.measure1);
    out["measure2"] = measure_json(sbo.measure2);
    out["backend"] = ScalarTraits<T>::backend;
    out["i"] = sbo.first;
    out["N"] = sbo.dim;
    out["normalization"] = normalization_name(sbo.normalization);
    Json polys, norms, dets;
    for (std::size_t n = sbo.first; n < sbo.dim; ++n) {
        polys["P_" + tag + std::to_string(n)] = polynomial_json(sbo.poly(n));
        norms["H_" + tag + std::to_string(n)] = scalar_json(sbo.norm(n));
    }
    for (std::size_t n = sbo.first; n < sbo.dim; ++n)
        dets["Z_" + tag + std::to_string(n)] = scalar_json(sbo.block_det(static_cast<long>(n)));
    out["polynomials"] = std::move(polys);
    out["H"] = std::move(norms);
    out["Z"] = std::move(dets);
    return out;
}

template <Scalar T>
Json solution_json(const ThirdSubspaceSolution<T>& solution) {
    Json out;
    out["classification"] = solution.label();
    out["free_parameters"] = solution.free_parameters;
    out["ranks"] = Json{{"G", solution.rank_g}, {"augmented", solution.rank_augmented}};
    Json constraints = Json::array();
    for (const auto& p : solution.constraint_basis) constraints.push_back(polynomial_json(p));
    out["constraint_basis"] = std::move(constraints);
    Json basis = Json::array();
    for (const auto& p : solution.basis) basis.push_back(polynomial_json(p));
    if (solution.classification == Solvability::Unique) {
        out["basis"] = std::move(basis);
    } else if (solution.classification == Solvability::Family) {
        Json kernel = Json::array();
        for (const auto& p : solution.kernel) kernel.push_back(polynomial_json(p));
        out["family"] = Json{{"particular", std::move(basis)}, {"kernel", std::move(kernel)}};
    }
    if constexpr (!ScalarTraits<T>::exact) {
        out["singular_values"] = solution.singular_values;
        out["gap"] = std::isfinite(solution.gap) ? Json(solution.gap) : Json(nullptr);
    }
    return out;
}

template <Scalar T>
Json projector_json(const ProjectorMatrix<T>& projector) {
    return Json{{"kind", projector_kind_name(projector.label)}, {"entries", matrix_json(projector.entries)}};
}

Json integral_report_json(const IntegralReport& r) {
    return Json{{"check", r.check}, {"i", r.i},   {"n", r.n},
                {"lhs", r.lhs},     {"rhs", r.rhs}, {"rel_err", r.rel_err}, {"pass", r.pass}};
}

Json zero_report_json(const ZeroReport& r) {
    Json brackets = Json::array();
    for (const auto& b : r.brackets) brackets.push_back(Json::array({b.lo, b.hi}));
    return Json{{"count", r.count}, {"brackets", std::move(brackets)}, {"satisfies_theorem", r.satisfies_theorem}};
}

Measure parse_measure(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() == 2 && parts[0] == "gaussian") return Measure::gaussian(parse_rational(parts[1]));
    if (parts.size() == 3 && parts[0] == "gamma")
        return Measure::gamma(parse_rational(parts[1]), parse_rational(parts[2]));
    throw ParseError("measure must be gaussian:<alpha> or gamma:<alpha>:<z>, got '" + text + "'");
}

template <Scalar T>
std::string polynomial_csv(const std::vector<std::pair<std::string, Polynomial<T>>>& rows) {
    std::string out = "name,power,coefficient\n";
    for (const auto& [name, p] : rows) {
        const std::size_t top = p.is_zero() ? 0 : static_cast<std::size_t>(p.degree());
        for (std::size_t k = 0; k <= top; ++k) out += name + "," + std::to_string(k) + "," + to_string(p.coeff(k)) + "\n";
    }
    return out;
}

#define BOP_INSTANTIATE(T)                                                    \
    template Json scalar_json<T>(const T&);                                   \
    template Json polynomial_json<T>(const Polynomial<T>&);                   \
    template Polynomial<T> polynomial_from_json<T>(const Json&);              \
    template Json matrix_json<T>(const Matrix<T>&);                           \
    template Json standard_table_json<T>(const StandardBasis<T>&);            \
    template Json sbo_table_json<T>(const SboBasis<T>&);                      \
    template Json solution_json<T>(const ThirdSubspaceSolution<T>&);          \
    template Json projector_json<T>(const ProjectorMatrix<T>&);               \
    template std::string polynomial_csv<T>(const std::vector<std::pair<std::string, Polynomial<T>>>&);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

}  // namespace bop
