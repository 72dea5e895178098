#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blockortho/serialize.hpp"

namespace bop {

enum class CheckStatus { Pass, Fail, Skip };

const char* check_status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double residual = 0;   // worst relative residual seen
    double tolerance = 0;  // 0 means exact equality was required
    std::string detail{};
};

// Bases are built from measure1/measure2. Checks evaluate inner products
// under reference1/reference2 when given, so a moment table that disagrees
// with the measure it claims to represent is caught.
struct SuiteConfig {
    Measure measure1;
    Measure measure2;
    std::optional<Measure> reference1{};
    std::optional<Measure> reference2{};
    std::size_t dim = 8;
    std::optional<std::size_t> first{};  // all 0..dim-1 when unset
    Normalization normalization = Normalization::Monic;
    bool integrals = true;
    double tolerance = 1e-10;  // float backend only
};

// Integral checks are limited to these (first, n) pairs.
inline constexpr std::size_t kIntegralCases[][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};

// Runs every applicable check, one task per constraint dimension; the result
// order does not depend on scheduling. Library errors while building become
// a failed "build" entry, float conditioning limits a skipped one.
template <Scalar T>
std::vector<CheckResult> run_suite(const SuiteConfig& config);

// Skipped checks do not count as failures.
bool suite_passed(const std::vector<CheckResult>& results);

Json suite_json(const std::vector<CheckResult>& results);

}  // namespace bop
