#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>

#include "blockortho/errors.hpp"
#include "blockortho/suite.hpp"

namespace bop::cli {

namespace {

// Raised for bad flag values; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string pair = "hermite";
    std::string z = "1";
    std::string measure1;
    std::string measure2;
    std::size_t dim = 8;
    std::optional<std::size_t> first;
    bool exact = false;
    bool use_float = false;
    std::string normalization = "monic";
    bool csv = false;
    std::string moments_file;
    int moments_slot = 1;
    std::string output;
    bool no_integrals = false;
    std::string z12, z23, z13;
    bool symmetric12 = false;
    std::size_t order = 10;
};

struct Resolved {
    Measure measure1;
    Measure measure2;
    Measure declared1;  // what the measures claim to be, used as check references
    Measure declared2;
    bool tabulated = false;
    Normalization normalization = Normalization::Monic;
    bool exact = true;
};

Json error_object(const std::string& kind, const std::string& message) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

Rational positive_rational(const std::string& text, const char* flag) {
    try {
        Rational v = parse_rational(text);
        if (v <= 0) throw UsageError(std::string(flag) + " must be positive, got " + text);
        return v;
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

// Flag-level validation only; nothing here touches moment files.
Resolved resolve_flags(const Options& o) {
    if (o.exact && o.use_float) throw UsageError("--exact and --float are mutually exclusive");
    if (o.measure1.empty() != o.measure2.empty()) throw UsageError("--measure1 and --measure2 go together");
    if (o.moments_slot != 1 && o.moments_slot != 2) throw UsageError("--moments-slot must be 1 or 2");
    if (o.dim == 0) throw UsageError("--N must be at least 1");
    auto parsed = [](const std::string& spec) {
        try {
            return parse_measure(spec);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    };
    std::optional<Measure> m1, m2;
    if (!o.measure1.empty()) {
        m1 = parsed(o.measure1);
        m2 = parsed(o.measure2);
    } else if (o.pair == "hermite") {
        m1 = Measure::gaussian(1);
        m2 = Measure::gaussian(2);
    } else if (o.pair == "laguerre") {
        const Rational z = positive_rational(o.z, "--z");
        m1 = Measure::gamma(1, z);
        m2 = Measure::gamma(2, z);
    } else {
        throw UsageError("--pair must be hermite or laguerre, got '" + o.pair + "'");
    }
    Normalization norm;
    try {
        norm = parse_normalization(o.normalization);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    return Resolved{*m1, *m2, *m1, *m2, false, norm, !o.use_float};
}

// Swaps in the tabulated moments; file problems are data errors, not usage.
void load_moments(const Options& o, Resolved& r) {
    if (o.moments_file.empty()) return;
    MomentSequence table = read_moment_file(o.moments_file);
    if (r.exact && !table.exact) throw NotExact("moment file has decimal entries; use --float");
    Measure& slot = o.moments_slot == 1 ? r.measure1 : r.measure2;
    slot = Measure::tabulated(std::move(table), slot.domain());
    r.tabulated = true;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.output);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<std::size_t> selected_firsts(const Options& o) {
    if (o.first) {
        if (*o.first >= o.dim) throw UsageError("--i must be below --N");
        return {*o.first};
    }
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < o.dim; ++i) all.push_back(i);
    return all;
}

Json header(const Options& o, const Resolved& r) {
    Json h;
    h["measure1"] = r.measure1.describe();
    h["measure2"] = r.measure2.describe();
    h["backend"] = r.exact ? "exact" : "float";
    h["N"] = o.dim;
    h["normalization"] = normalization_name(r.normalization);
    return h;
}

template <Scalar T>
int cmd_table(const Options& o, const Resolved& r, std::ostream& out) {
    const auto firsts = selected_firsts(o);
    std::vector<std::pair<std::string, Polynomial<T>>> rows;
    Json tables = Json::array();
    for (std::size_t i : firsts) {
        const auto sbo = build_sbo<T>(r.measure1, r.measure2, i, o.dim, r.normalization);
        for (std::size_t n = i; n < o.dim; ++n)
            rows.emplace_back("P_" + std::to_string(i) + "_" + std::to_string(n), sbo.poly(n));
        tables.push_back(sbo_table_json(sbo));
    }
    if (o.csv) {
        emit(o, out, polynomial_csv(rows));
    } else if (o.first) {
        emit(o, out, dump(tables[0]));
    } else {
        Json doc = header(o, r);
        doc["tables"] = std::move(tables);
        emit(o, out, dump(doc));
    }
    return kExitOk;
}

template <Scalar T>
int cmd_verify(const Options& o, const Resolved& r, std::ostream& out) {
    SuiteConfig cfg{.measure1 = r.measure1,
                    .measure2 = r.measure2,
                    .reference1 = r.declared1,
                    .reference2 = r.declared2,
                    .dim = o.dim,
                    .first = o.first,
                    .normalization = r.normalization,
                    .integrals = !o.no_integrals};
    if (o.first && *o.first >= o.dim) throw UsageError("--i must be below --N");
    const auto results = run_suite<T>(cfg);
    const bool ok = suite_passed(results);
    Json doc = header(o, r);
    if (r.tabulated) doc["moments_file"] = o.moments_file;
    doc["passed"] = ok;
    doc["checks"] = suite_json(results);
    Json failed = Json::array();
    for (const auto& c : results)
        if (c.status == CheckStatus::Fail) failed.push_back(c.name);
    if (!ok) doc["failed"] = std::move(failed);
    emit(o, out, dump(doc));
    return ok ? kExitOk : kExitCheckFailed;
}

template <Scalar T>
int cmd_roots(const Options& o, const Resolved& r, std::ostream& out) {
    Json doc = header(o, r);
    const Interval support = r.measure1.truncated_support();
    doc["support"] = Json::array({support.lo, support.hi});
    Json reports;
    bool ok = true;
    for (std::size_t i : selected_firsts(o)) {
        const auto sbo = build_sbo<T>(r.measure1, r.measure2, i, o.dim, r.normalization);
        for (std::size_t n = std::max<std::size_t>(i, 1); n < o.dim; ++n) {
            const auto rep = zero_report(sbo, n);
            ok = ok && rep.satisfies_theorem;
            reports["P_" + std::to_string(i) + "_" + std::to_string(n)] = zero_report_json(rep);
        }
    }
    doc["zeros"] = std::move(reports);
    doc["passed"] = ok;
    emit(o, out, dump(doc));
    return ok ? kExitOk : kExitCheckFailed;
}

template <Scalar T>
int cmd_projector(const Options& o, const Resolved& r, std::ostream& out) {
    if (!o.first) throw UsageError("projector needs --i");
    if (*o.first >= o.dim) throw UsageError("--i must be below --N");
    const std::size_t i = *o.first;
    const auto q = build_standard<T>(r.measure1, o.dim);
    const auto [onto, comp] = projectors_from_q(q, i);
    const auto [onto2, comp2] = projectors_from_second<T>(r.measure1, r.measure2, i, o.dim);
    auto deviation = [](const Matrix<T>& m) { return to_double(m.max_abs()); };
    const double tol = r.exact ? 0.0 : 1e-9;
    const double idem = std::max(deviation(onto.entries * onto.entries - onto.entries),
                                 deviation(comp.entries * comp.entries - comp.entries));
    const double compl_dev = deviation(onto.entries + comp.entries - Matrix<T>::identity(o.dim));
    const double route = std::max(deviation(onto.entries - onto2.entries), deviation(comp.entries - comp2.entries));
    const bool ok = idem <= tol && compl_dev <= tol && route <= tol;
    Json doc = header(o, r);
    doc["i"] = i;
    doc["onto_constraint"] = projector_json(onto);
    doc["onto_complement"] = projector_json(comp);
    doc["checks"] = Json{{"idempotence", idem}, {"complementarity", compl_dev}, {"route_equivalence", route}};
    doc["passed"] = ok;
    emit(o, out, dump(doc));
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_three_subspace(const Options& o, std::ostream& out) {
    if (o.z23.empty() || o.z13.empty()) throw UsageError("three-subspace needs --z23 and --z13");
    if (o.symmetric12 == !o.z12.empty()) throw UsageError("give exactly one of --z12 and --symmetric12");
    std::optional<Rational> z12;
    if (!o.symmetric12) z12 = positive_rational(o.z12, "--z12");
    const Rational z23 = positive_rational(o.z23, "--z23");
    const Rational z13 = positive_rational(o.z13, "--z13");
    const auto res = laguerre_three_subspace(z12, z23, z13);
    Json doc;
    doc["z12"] = z12 ? Json(z12->get_str()) : Json("symmetric");
    doc["z23"] = z23.get_str();
    doc["z13"] = z13.get_str();
    Json sol = solution_json(res.solution);
    for (auto it = sol.begin(); it != sol.end(); ++it) doc[it.key()] = it.value();
    doc["second_block_constant"] = res.second_block_constant.get_str();
    doc["singular_consistent_possible"] = res.singular_consistent_possible;
    doc["note"] = res.note;
    emit(o, out, dump(doc));
    return kExitOk;
}

int cmd_moments(const Options& o, const Resolved& r, std::ostream& out) {
    if (!o.moments_file.empty()) {
        const Measure& slot = o.moments_slot == 1 ? r.measure1 : r.measure2;
        const auto& table = std::get<TabulatedMoments>(slot.spec()).table;
        emit(o, out, dump(Json::parse(moment_table_json(table))));
        return kExitOk;
    }
    const Measure& m = o.moments_slot == 1 ? r.measure1 : r.measure2;
    Json doc = Json::parse(moment_table_json(m.moments(o.order)));
    doc["measure"] = m.describe();
    emit(o, out, dump(doc));
    return kExitOk;
}

void add_measure_flags(CLI::App* sub, Options& o) {
    sub->add_option("--pair", o.pair, "hermite or laguerre")->capture_default_str();
    sub->add_option("--z", o.z, "shape parameter of the laguerre pair")->capture_default_str();
    sub->add_option("--measure1", o.measure1, "gaussian:<alpha> or gamma:<alpha>:<z>");
    sub->add_option("--measure2", o.measure2, "gaussian:<alpha> or gamma:<alpha>:<z>");
    sub->add_option("--moments-file", o.moments_file, "tabulated moments (CSV n,mu_n or JSON)");
    sub->add_option("--moments-slot", o.moments_slot, "measure replaced by --moments-file: 1 or 2")->capture_default_str();
    sub->add_flag("--exact", o.exact, "rational backend (default)");
    sub->add_flag("--float", o.use_float, "double backend");
    sub->add_option("--output", o.output, "write to this file instead of stdout");
}

void add_basis_flags(CLI::App* sub, Options& o) {
    sub->add_option("--N", o.dim, "dimension of the polynomial space")->capture_default_str();
    sub->add_option("--i", o.first, "constraint dimension; all when omitted");
    sub->add_option("--normalization", o.normalization, "monic, orthonormal or det-normalized")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Block orthogonal polynomials: tables, checks and the three-subspace solver", "bop"};
    app.require_subcommand(1);

    auto* table = app.add_subcommand("table", "polynomial table P_{i;n} with norms and block determinants");
    add_measure_flags(table, o);
    add_basis_flags(table, o);
    table->add_flag("--csv", o.csv, "long-form CSV instead of JSON");

    auto* verify = app.add_subcommand("verify", "run the invariant suite; exit 1 on any failure");
    add_measure_flags(verify, o);
    add_basis_flags(verify, o);
    verify->add_flag("--no-integrals", o.no_integrals, "skip the quadrature checks");

    auto* roots = app.add_subcommand("roots", "sign changes of P_{i;n} on the first measure's support");
    add_measure_flags(roots, o);
    add_basis_flags(roots, o);

    auto* projector = app.add_subcommand("projector", "projectors onto the constraint space and its complement");
    add_measure_flags(projector, o);
    add_basis_flags(projector, o);

    auto* three = app.add_subcommand("three-subspace", "third block for gamma weights, N1 = N2 = 1, N = 3");
    three->add_option("--z12", o.z12, "first-second shape parameter");
    three->add_flag("--symmetric12", o.symmetric12, "use a symmetric first-second product instead");
    three->add_option("--z23", o.z23, "second-third shape parameter");
    three->add_option("--z13", o.z13, "first-third shape parameter");
    three->add_option("--output", o.output, "write to this file instead of stdout");

    auto* moments = app.add_subcommand("moments", "normalized moments of a measure or a moment file");
    add_measure_flags(moments, o);
    moments->add_option("--order", o.order, "highest moment order")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        if (code == 0) return kExitOk;
        out << dump(error_object("UsageError", e.what()));
        return kExitUsage;
    }

    try {
        if (three->parsed()) return cmd_three_subspace(o, out);
        Resolved r = resolve_flags(o);
        try {
            load_moments(o, r);
            const bool exact = r.exact;
            if (table->parsed()) return exact ? cmd_table<Rational>(o, r, out) : cmd_table<double>(o, r, out);
            if (verify->parsed()) return exact ? cmd_verify<Rational>(o, r, out) : cmd_verify<double>(o, r, out);
            if (roots->parsed()) return exact ? cmd_roots<Rational>(o, r, out) : cmd_roots<double>(o, r, out);
            if (projector->parsed())
                return exact ? cmd_projector<Rational>(o, r, out) : cmd_projector<double>(o, r, out);
            return cmd_moments(o, r, out);
        } catch (const Error& e) {
            out << dump(error_object(e.kind(), e.what()));
            return kExitCheckFailed;
        }
    } catch (const UsageError& e) {
        out << dump(error_object("UsageError", e.what()));
        return kExitUsage;
    } catch (const Error& e) {
        out << dump(error_object(e.kind(), e.what()));
        return kExitCheckFailed;
    }
}

}  // namespace bop::cli
