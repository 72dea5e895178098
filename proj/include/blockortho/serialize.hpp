#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "blockortho/analysis.hpp"
#include "blockortho/block_ortho.hpp"
#include "blockortho/multiblock.hpp"
#include "blockortho/projectors.hpp"
#include "blockortho/standard_ortho.hpp"

namespace bop {

using Json = nlohmann::ordered_json;

// Exact values become "p/q" strings so they survive any JSON reader; floats
// stay numbers.
template <Scalar T>
Json scalar_json(const T& x);

// {"coeffs": [c_0, c_1, ...]}, ascending powers.
template <Scalar T>
Json polynomial_json(const Polynomial<T>& p);

// Accepts strings ("p/q", integers, decimals) and numbers. A float number or a
// decimal string requested as exact throws KindMismatch.
template <Scalar T>
Polynomial<T> polynomial_from_json(const Json& j);

template <Scalar T>
Json matrix_json(const Matrix<T>& m);

template <Scalar T>
Json standard_table_json(const StandardBasis<T>& basis);

// Keys P_<first>_<n>, H_<first>_<n> and Z_<first>_<n> for first <= n < N.
template <Scalar T>
Json sbo_table_json(const SboBasis<T>& sbo);

template <Scalar T>
Json solution_json(const ThirdSubspaceSolution<T>& solution);

template <Scalar T>
Json projector_json(const ProjectorMatrix<T>& projector);

Json integral_report_json(const IntegralReport& report);
Json zero_report_json(const ZeroReport& report);
Json measure_json(const Measure& m);

// "gaussian:<alpha>" or "gamma:<alpha>:<z>" with rational parameters.
Measure parse_measure(const std::string& text);

// Long-form CSV: name,power,coefficient.
template <Scalar T>
std::string polynomial_csv(const std::vector<std::pair<std::string, Polynomial<T>>>& rows);

}  // namespace bop
