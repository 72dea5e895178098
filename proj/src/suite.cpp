#include "blockortho/suite.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "blockortho/errors.hpp"

namespace bop {

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
    }
    return "";
}

namespace {

// Worst relative deviation; the exact backend additionally demands exact zeros.
template <Scalar T>
struct Residual {
    double worst = 0;
    bool all_zero = true;
    std::string where;

    void add(const T& diff, double scale, const std::string& at) {
        if (diff != T(0)) all_zero = false;
        const double rel = std::abs(to_double(diff)) / (scale > 0 ? scale : 1.0);
        if (rel > worst || (!std::isfinite(rel) && std::isfinite(worst))) {
            worst = rel;
            where = at;
        }
    }

    void add_poly(const Polynomial<T>& a, const Polynomial<T>& b, const std::string& at) {
        const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
        const long top = std::max(a.degree(), b.degree());
        for (long k = 0; k <= top; ++k) add(a.coeff(k) - b.coeff(k), scale, at);
    }

    CheckResult result(std::string name, double tol) const {
        CheckResult r{.name = std::move(name), .residual = worst};
        bool ok;
        if constexpr (ScalarTraits<T>::exact) {
            ok = all_zero;
        } else {
            r.tolerance = tol;
            ok = worst <= tol;
        }
        r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        if (!ok) r.detail = "worst at " + where;
        return r;
    }
};

std::string at(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

double magnitude(double x) { return std::sqrt(std::abs(x)); }

// 2-norm condition number after symmetric diagonal scaling to unit diagonal.
// Determinant ratios are invariant under that scaling, so their float error
// grows like this number times the unit roundoff.
template <Scalar T>
double scaled_condition(const Matrix<T>& g) {
    const auto n = static_cast<Eigen::Index>(g.rows());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = to_double(g(r, c)) / std::sqrt(to_double(g(r, r)) * to_double(g(c, c)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev(n - 1) / std::max(ev(0), std::numeric_limits<double>::min());
}

// Oracle tolerance: 1e-9 relative, widened for ill-conditioned float Gram matrices.
template <Scalar T>
double oracle_tolerance(const Matrix<T>& g) {
    if constexpr (ScalarTraits<T>::exact) {
        (void)g;
        return 0;
    } else {
        return std::max(1e-9, 64 * std::numeric_limits<double>::epsilon() * scaled_condition(g));
    }
}

template <Scalar T>
void standard_checks(std::vector<CheckResult>& out, const std::string& tag, const Measure& measure,
                     const Measure& reference, const SuiteConfig& cfg) {
    const auto basis = build_standard<T>(measure, cfg.dim, cfg.normalization);

    Residual<T> ortho;
    for (std::size_t m = 0; m < cfg.dim; ++m)
        for (std::size_t n = m; n < cfg.dim; ++n) {
            T g = inner_product(reference, basis.polys[m], basis.polys[n]);
            if (m == n) g -= basis.norms[n];
            ortho.add(g, magnitude(to_double(basis.norms[m]) * to_double(basis.norms[n])), at(m, n));
        }
    out.push_back(ortho.result("standard-orthogonality:" + tag, cfg.tolerance));

    Residual<T> oracle;
    for (std::size_t n = 0; n < cfg.dim; ++n) {
        const auto o = standard_determinant_oracle(basis, n);
        oracle.add_poly(o.poly, basis.polys[n], "n=" + std::to_string(n));
        oracle.add(o.norm - basis.norms[n], std::abs(to_double(basis.norms[n])), "norm n=" + std::to_string(n));
    }
    out.push_back(oracle.result("standard-oracle:" + tag, oracle_tolerance(hankel_matrix<T>(basis.moments, cfg.dim).entries)));

    Residual<T> rec;
    const auto rebuilt = build_by_recurrence<T>(measure, cfg.dim);
    for (std::size_t n = 0; n < cfg.dim; ++n) rec.add_poly(rebuilt[n], basis.monic(n), "n=" + std::to_string(n));
    out.push_back(rec.result("recurrence-rebuild:" + tag, 1e-9));

    if (measure.symmetric()) {
        Residual<T> par;
        const auto split = parity_split_build<T>(measure, cfg.dim, cfg.normalization);
        for (std::size_t n = 0; n < cfg.dim; ++n) {
            par.add_poly(split.polys[n], basis.polys[n], "n=" + std::to_string(n));
            par.add(split.gram_dets[n + 1] - basis.gram_dets[n + 1], std::abs(to_double(basis.gram_dets[n + 1])),
                    "det n=" + std::to_string(n));
        }
        out.push_back(par.result("parity-split:" + tag, 1e-9));
    }
}

template <Scalar T>
std::vector<CheckResult> block_checks(std::size_t i, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const std::string tag = ":i=" + std::to_string(i);
    const Measure& ref1 = cfg.reference1 ? *cfg.reference1 : cfg.measure1;
    const Measure& ref2 = cfg.reference2 ? *cfg.reference2 : cfg.measure2;
    const auto sbo = build_sbo<T>(cfg.measure1, cfg.measure2, i, cfg.dim, cfg.normalization);

    Residual<T> constraint;
    for (std::size_t m = 0; m < i; ++m) {
        const auto xm = Polynomial<T>::monomial(m);
        const double xm_norm = to_double(inner_product(ref1, xm, xm));
        for (std::size_t n = i; n < cfg.dim; ++n) {
            const double pn_norm = to_double(inner_product(ref1, sbo.poly(n), sbo.poly(n)));
            constraint.add(inner_product(ref1, xm, sbo.poly(n)), magnitude(xm_norm * pn_norm), at(m, n));
        }
    }
    out.push_back(constraint.result("constraint-orthogonality" + tag, cfg.tolerance));

    Residual<T> block;
    for (std::size_t m = i; m < cfg.dim; ++m)
        for (std::size_t n = m; n < cfg.dim; ++n) {
            T g = inner_product(ref2, sbo.poly(m), sbo.poly(n));
            if (m == n) g -= sbo.norm(n);
            block.add(g, magnitude(to_double(sbo.norm(m)) * to_double(sbo.norm(n))), at(m, n));
        }
    out.push_back(block.result("block-orthogonality" + tag, cfg.tolerance));

    Residual<T> oracle;
    for (std::size_t n = i; n < cfg.dim; ++n) {
        const auto o = sbo_determinant_oracle(*sbo.q_basis, sbo.second_gram, i, n);
        const std::string where = "n=" + std::to_string(n);
        oracle.add_poly(o.poly, sbo.monic(n), where);
        oracle.add(o.block_det - sbo.block_det(static_cast<long>(n)),
                   std::abs(to_double(sbo.block_det(static_cast<long>(n)))), "det " + where);
        oracle.add(o.monic_norm - sbo.monic_norm(n), std::abs(to_double(sbo.monic_norm(n))), "norm " + where);
        double a_scale = 0, b_scale = 0;
        for (std::size_t m = i; m <= n; ++m) {
            a_scale = std::max(a_scale, std::abs(to_double(sbo.a_hat(m, n))));
            b_scale = std::max(b_scale, std::abs(to_double(sbo.b_hat(m, n))));
        }
        for (std::size_t m = i; m <= n; ++m) {
            oracle.add(o.monic_to_q[m - i] - sbo.a_hat(m, n), a_scale, "a " + at(m, n));
            oracle.add(o.monic_from_q[m - i] - sbo.b_hat(m, n), b_scale, "b " + at(m, n));
        }
    }
    out.push_back(oracle.result("sbo-oracle" + tag, std::max(oracle_tolerance(sbo.second_gram.entries),
                                                              oracle_tolerance(hankel_matrix<T>(sbo.q_basis->moments, cfg.dim).entries))));

    if (cfg.measure1.symmetric() && cfg.measure2.symmetric()) {
        Residual<T> par;
        const auto split = sbo_parity_build<T>(cfg.measure1, cfg.measure2, i, cfg.dim, cfg.normalization);
        for (std::size_t n = i; n < cfg.dim; ++n) {
            par.add_poly(split.poly(n), sbo.poly(n), "n=" + std::to_string(n));
            par.add(split.block_det(static_cast<long>(n)) - sbo.block_det(static_cast<long>(n)),
                    std::abs(to_double(sbo.block_det(static_cast<long>(n)))), "det n=" + std::to_string(n));
        }
        out.push_back(par.result("sbo-parity" + tag, 1e-9));
    }

    {
        Residual<T> proj;
        const auto [onto, comp] = projectors_from_q(*sbo.q_basis, i);
        const auto [onto2, comp2] = projectors_from_second<T>(cfg.measure1, cfg.measure2, i, cfg.dim);
        const auto id = Matrix<T>::identity(cfg.dim);
        auto add_matrix = [&](const Matrix<T>& d, const char* what) {
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c) proj.add(d(r, c), 1.0, std::string(what) + at(r, c));
        };
        add_matrix(onto.entries * onto.entries - onto.entries, "idempotent ");
        add_matrix(comp.entries * comp.entries - comp.entries, "idempotent complement ");
        add_matrix(onto.entries + comp.entries - id, "complementary ");
        add_matrix(onto.entries * comp.entries, "annihilation ");
        add_matrix(onto.entries - onto2.entries, "route ");
        add_matrix(comp.entries - comp2.entries, "route complement ");
        for (std::size_t n = i; n < cfg.dim; ++n)
            proj.add_poly(comp.apply(sbo.poly(n)), sbo.poly(n), "fixes P n=" + std::to_string(n));
        out.push_back(proj.result("projectors" + tag, 1e-9));
    }

    {
        CheckResult zeros{.name = "zeros" + tag};
        std::ostringstream counts;
        for (std::size_t n = std::max<std::size_t>(i, 1); n < cfg.dim; ++n) {
            const auto rep = zero_report(sbo, n);
            counts << (n > std::max<std::size_t>(i, 1) ? " " : "") << n << ":" << rep.count;
            if (!rep.satisfies_theorem) zeros.status = CheckStatus::Fail;
        }
        zeros.detail = "sign changes by degree " + counts.str();
        out.push_back(zeros);
    }

    if (cfg.integrals) {
        for (const auto& c : kIntegralCases) {
            if (c[0] != i || c[1] >= cfg.dim) continue;
            const std::size_t n = c[1];
            CheckResult r{.name = "integrals" + tag + ":n=" + std::to_string(n), .tolerance = kIntegralTolerance};
            std::vector<IntegralReport> reports = verify_Z_integral(sbo, n, n + 2);
            const auto p = verify_P_integral(sbo, n, n + 2);
            reports.insert(reports.end(), p.checks.begin(), p.checks.end());
            for (const auto& rep : reports) {
                r.residual = std::max(r.residual, rep.rel_err);
                if (!rep.pass) {
                    r.status = CheckStatus::Fail;
                    r.detail += (r.detail.empty() ? "" : ", ") + rep.check;
                }
            }
            out.push_back(r);
        }
    }
    return out;
}

// Edge identities of the table of monic P_{i;n}; needs every constraint dimension.
template <Scalar T>
void boundary_checks(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    std::vector<SboBasis<T>> table;
    for (std::size_t i = 0; i < cfg.dim; ++i) table.push_back(build_sbo<T>(cfg.measure1, cfg.measure2, i, cfg.dim));
    const auto q1 = build_standard<T>(cfg.measure1, cfg.dim);
    const auto q2 = build_standard<T>(cfg.measure2, cfg.dim);

    Residual<T> edges;
    for (std::size_t n = 0; n < cfg.dim; ++n) {
        edges.add_poly(table[n].monic(n), q1.monic(n), "diagonal n=" + std::to_string(n));
        edges.add_poly(table[0].monic(n), q2.monic(n), "first column n=" + std::to_string(n));
    }
    out.push_back(edges.result("boundary-identities", 1e-9));

    if (cfg.measure1.symmetric() && cfg.measure2.symmetric()) {
        Residual<T> par;
        for (std::size_t i = 1; i < cfg.dim; ++i)
            for (std::size_t n = i; n < cfg.dim; ++n)
                if ((i + n) % 2 == 0) par.add_poly(table[i - 1].monic(n), table[i].monic(n), at(i, n));
        out.push_back(par.result("parity-neighbours", 1e-9));
    }

    Residual<T> cross;
    for (std::size_t i = 0; i < cfg.dim; ++i) {
        const auto self = cross_i_connection(table[i], table[i]);
        const auto id = Matrix<T>::identity(cfg.dim);
        for (std::size_t r = i; r < cfg.dim; ++r)
            for (std::size_t c = i; c < cfg.dim; ++c) cross.add(self(r, c) - id(r, c), 1.0, "self i=" + std::to_string(i));
        if (i == 0) continue;
        const auto step = cross_i_connection(table[i - 1], table[i]);
        for (std::size_t n = i; n < cfg.dim; ++n) cross.add(step(n, n) - T(1), 1.0, "diag " + at(i, n));
    }
    out.push_back(cross.result("cross-i-connection", 1e-9));
}

}  // namespace

template <Scalar T>
std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    try {
        if (cfg.first && *cfg.first >= cfg.dim)
            throw IndexOutOfRange("constraint dimension " + std::to_string(*cfg.first) + " must be below N = " +
                                  std::to_string(cfg.dim));
        standard_checks<T>(out, "measure1", cfg.measure1, cfg.reference1 ? *cfg.reference1 : cfg.measure1, cfg);
        standard_checks<T>(out, "measure2", cfg.measure2, cfg.reference2 ? *cfg.reference2 : cfg.measure2, cfg);

        std::vector<std::size_t> firsts;
        if (cfg.first)
            firsts.push_back(*cfg.first);
        else
            for (std::size_t i = 0; i < cfg.dim; ++i) firsts.push_back(i);
        std::vector<std::future<std::vector<CheckResult>>> tasks;
        for (std::size_t i : firsts) tasks.push_back(std::async(std::launch::async, [&cfg, i] { return block_checks<T>(i, cfg); }));
        std::vector<std::vector<CheckResult>> parts;
        for (auto& t : tasks) parts.push_back(t.get());
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());

        if (!cfg.first) boundary_checks<T>(out, cfg);
    } catch (const ConditioningError& e) {
        out.clear();
        out.push_back({.name = "build", .status = CheckStatus::Skip, .detail = e.what()});
    } catch (const Error& e) {
        out.push_back({.name = "build", .status = CheckStatus::Fail, .detail = std::string(e.kind()) + ": " + e.what()});
    }
    return out;
}

bool suite_passed(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

Json suite_json(const std::vector<CheckResult>& results) {
    Json checks = Json::array();
    for (const auto& r : results) {
        Json j{{"name", r.name}, {"status", check_status_name(r.status)}, {"residual", r.residual}};
        if (r.tolerance > 0) j["tolerance"] = r.tolerance;
        if (!r.detail.empty()) j["detail"] = r.detail;
        checks.push_back(std::move(j));
    }
    return checks;
}

template std::vector<CheckResult> run_suite<Rational>(const SuiteConfig&);
template std::vector<CheckResult> run_suite<double>(const SuiteConfig&);

}  // namespace bop
