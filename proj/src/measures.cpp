#include "blockortho/measures.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace bop {

MomentSequence MomentSequence::truncated(std::size_t order) const {
    if (order > max_order)
        throw InsufficientMoments("moments up to order " + std::to_string(order) + " requested, only " +
                                  std::to_string(max_order) + " available");
    MomentSequence out = *this;
    out.max_order = order;
    out.mu.resize(order + 1);
    if (exact) out.exact_mu.resize(order + 1);
    return out;
}

namespace {

MomentSequence from_exact(std::vector<Rational> mu, double c0, std::string symbol) {
    MomentSequence ms;
    ms.c0 = c0;
    ms.c0_symbol = std::move(symbol);
    ms.exact = true;
    ms.max_order = mu.size() - 1;
    ms.mu.reserve(mu.size());
    for (const auto& v : mu) ms.mu.push_back(v.get_d());
    ms.exact_mu = std::move(mu);
    return ms;
}

void require_positive(const Rational& v, const char* what) {
    if (v <= 0) throw NonPositiveParameter(std::string(what) + " must be positive, got " + v.get_str());
}

void check_normalized(const MomentSequence& ms) {
    if (ms.mu.empty()) throw MomentError("empty moment table");
    const bool unit = ms.exact ? ms.exact_mu[0] == 1 : std::fabs(ms.mu[0] - 1.0) <= 1e-12;
    if (!unit) throw MomentError("normalized moment table must start with mu_0 = 1");
    for (double v : ms.mu)
        if (!std::isfinite(v)) throw MomentError("non-finite moment in table");
}

bool odd_moments_vanish(const MomentSequence& ms) {
    for (std::size_t k = 1; k <= ms.max_order; k += 2) {
        if (ms.exact ? ms.exact_mu[k] != 0 : ms.mu[k] != 0.0) return false;
    }
    return true;
}

MomentSequence numeric_moments(const NumericWeight& w) {
    const auto& r = w.rule;
    if (!(r.lo < r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw MomentError("numeric weight rule needs a finite interval with lo < hi");
    if (r.nodes == 0 || r.panels == 0) throw MomentError("numeric weight rule needs nodes and panels");
    std::vector<double> x, wt;
    gauss_legendre(r.nodes, x, wt);
    std::vector<double> c(w.max_order + 1, 0.0);
    const double h = (r.hi - r.lo) / static_cast<double>(r.panels);
    for (std::size_t p = 0; p < r.panels; ++p) {
        const double a = r.lo + h * static_cast<double>(p);
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double t = a + h * (x[k] + 1) / 2;
            double f = w.weight(t) * wt[k] * h / 2;
            for (std::size_t n = 0; n <= w.max_order; ++n) {
                c[n] += f;
                f *= t;
            }
        }
    }
    for (double v : c)
        if (!std::isfinite(v)) throw MomentError("non-finite moment for weight " + w.name);
    if (!(c[0] > 0)) throw MomentError("weight " + w.name + " has non-positive total mass");
    MomentSequence ms;
    ms.c0 = c[0];
    ms.c0_symbol = "c0";
    ms.exact = false;
    ms.max_order = w.max_order;
    for (double v : c) ms.mu.push_back(v / c[0]);
    return ms;
}

bool weight_is_even(const NumericWeight& w) {
    const auto& r = w.rule;
    if (r.lo != -r.hi) return false;
    for (int k = 1; k <= 64; ++k) {
        const double t = r.hi * k / 64.0;
        if (w.weight(t) != w.weight(-t)) return false;
    }
    return true;
}

}  // namespace

Measure::Measure(Spec spec, Interval domain) : spec_(std::make_shared<const Spec>(std::move(spec))), domain_(domain) {}

Measure Measure::gaussian(const Rational& alpha) {
    require_positive(alpha, "Gaussian alpha");
    Measure m(GaussianWeight{alpha}, Interval{});
    m.symmetric_ = true;
    return m;
}

Measure Measure::gamma(const Rational& alpha, const Rational& z) {
    require_positive(alpha, "gamma weight alpha");
    require_positive(z, "gamma weight z");
    return Measure(GammaWeight{alpha, z}, Interval{0.0, std::numeric_limits<double>::infinity()});
}

Measure Measure::tabulated(MomentSequence table, Interval domain) {
    check_normalized(table);
    const bool even = domain.lo == -domain.hi && odd_moments_vanish(table);
    Measure m(TabulatedMoments{std::move(table)}, domain);
    m.symmetric_ = even;
    return m;
}

Measure Measure::numeric(std::string name, std::function<double(double)> weight, QuadratureRuleSpec rule,
                         std::size_t max_order) {
    NumericWeight w{std::move(name), std::move(weight), rule, max_order};
    auto ms = numeric_moments(w);
    const bool even = weight_is_even(w);
    if (even)
        for (std::size_t k = 1; k <= ms.max_order; k += 2) ms.mu[k] = 0.0;
    Measure m(std::move(w), Interval{rule.lo, rule.hi});
    m.numeric_moments_ = std::make_shared<const MomentSequence>(std::move(ms));
    m.symmetric_ = even;
    return m;
}

double Measure::weight(double x) const {
    return std::visit(
        [x](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GaussianWeight>) {
                return std::exp(-s.alpha.get_d() * x * x);
            } else if constexpr (std::is_same_v<S, GammaWeight>) {
                if (x < 0) return 0.0;
                return std::exp(-s.alpha.get_d() * x) * std::pow(x, s.z.get_d() - 1);
            } else if constexpr (std::is_same_v<S, NumericWeight>) {
                return s.weight(x);
            } else {
                throw MomentError("tabulated measure has no weight function");
            }
        },
        *spec_);
}

Interval Measure::truncated_support() const {
    const double log_cut = std::log(kWeightCutoff);
    return std::visit(
        [&](const auto& s) -> Interval {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GaussianWeight>) {
                const double r = std::sqrt(-log_cut / s.alpha.get_d());
                return {-r, r};
            } else if constexpr (std::is_same_v<S, GammaWeight>) {
                // log w = -alpha x + (z-1) log x decreases past the mode.
                const double a = s.alpha.get_d(), z = s.z.get_d();
                auto f = [&](double x) { return -a * x + (z - 1) * std::log(x) - log_cut; };
                double lo = std::max(1.0, (z - 1) / a), hi = 2 * lo;
                while (f(hi) > 0) hi *= 2;
                for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
                    const double mid = (lo + hi) / 2;
                    (f(mid) > 0 ? lo : hi) = mid;
                }
                return {0.0, hi};
            } else {
                return domain_;
            }
        },
        *spec_);
}

bool Measure::exact() const {
    if (std::holds_alternative<NumericWeight>(*spec_)) return false;
    if (const auto* t = std::get_if<TabulatedMoments>(spec_.get())) return t->table.exact;
    return true;
}

std::string Measure::describe() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GaussianWeight>) {
                return "gaussian:" + s.alpha.get_str();
            } else if constexpr (std::is_same_v<S, GammaWeight>) {
                return "gamma:" + s.alpha.get_str() + ":" + s.z.get_str();
            } else if constexpr (std::is_same_v<S, TabulatedMoments>) {
                return "tabulated:" + std::to_string(s.table.max_order);
            } else {
                return "numeric:" + s.name;
            }
        },
        *spec_);
}

MomentSequence Measure::moments(std::size_t max_order) const {
    return std::visit(
        [&](const auto& s) -> MomentSequence {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GaussianWeight>) {
                std::vector<Rational> mu(max_order + 1, Rational(0));
                Rational two_alpha_pow = 1;
                for (std::size_t k = 0; 2 * k <= max_order; ++k) {
                    mu[2 * k] = double_factorial_odd(static_cast<unsigned>(k)) / two_alpha_pow;
                    two_alpha_pow *= 2 * s.alpha;
                }
                const double c0 = std::sqrt(std::numbers::pi / s.alpha.get_d());
                return from_exact(std::move(mu), c0, "sqrt(pi/" + s.alpha.get_str() + ")");
            } else if constexpr (std::is_same_v<S, GammaWeight>) {
                std::vector<Rational> mu(max_order + 1);
                Rational p = 1, apow = 1;
                for (std::size_t n = 0; n <= max_order; ++n) {
                    mu[n] = p / apow;
                    p *= s.z + static_cast<unsigned long>(n);
                    apow *= s.alpha;
                }
                const double z = s.z.get_d(), a = s.alpha.get_d();
                const double c0 = std::exp(std::lgamma(z) - z * std::log(a));
                return from_exact(std::move(mu), c0, "Gamma(" + s.z.get_str() + ")/" + s.alpha.get_str() + "^" + s.z.get_str());
            } else if constexpr (std::is_same_v<S, TabulatedMoments>) {
                return s.table.truncated(max_order);
            } else {
                return numeric_moments_->truncated(max_order);
            }
        },
        *spec_);
}

bool operator==(const Measure& a, const Measure& b) {
    if (a.spec_ == b.spec_) return true;
    if (const auto* ga = std::get_if<GaussianWeight>(a.spec_.get())) {
        const auto* gb = std::get_if<GaussianWeight>(b.spec_.get());
        return gb && ga->alpha == gb->alpha;
    }
    if (const auto* ga = std::get_if<GammaWeight>(a.spec_.get())) {
        const auto* gb = std::get_if<GammaWeight>(b.spec_.get());
        return gb && ga->alpha == gb->alpha && ga->z == gb->z;
    }
    return false;
}

template <Scalar T>
GramMatrix<T> hankel_matrix(const MomentSequence& ms, std::size_t n) {
    if (n > 0 && 2 * (n - 1) > ms.max_order)
        throw InsufficientMoments("Hankel matrix of size " + std::to_string(n) + " needs moments to order " +
                                  std::to_string(2 * (n - 1)));
    const auto& mu = ms.values<T>();
    GramMatrix<T> g{Matrix<T>(n, n), "monomials x^0..x^" + std::to_string(n == 0 ? 0 : n - 1)};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) g.entries(j, k) = mu[j + k];
    return g;
}

template <Scalar T>
T moment_functional(const MomentSequence& ms, const Polynomial<T>& p, std::size_t shift) {
    if (p.is_zero()) return T(0);
    const std::size_t top = static_cast<std::size_t>(p.degree()) + shift;
    if (top > ms.max_order)
        throw InsufficientMoments("pairing needs moments to order " + std::to_string(top) + ", only " +
                                  std::to_string(ms.max_order) + " available");
    const auto& mu = ms.values<T>();
    T acc(0);
    const auto& c = p.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) acc += c[k] * mu[k + shift];
    return acc;
}

template <Scalar T>
T inner_product(const MomentSequence& ms, const Polynomial<T>& p, const Polynomial<T>& q) {
    if (p.is_zero() || q.is_zero()) return T(0);
    const std::size_t top = static_cast<std::size_t>(p.degree() + q.degree());
    if (top > ms.max_order)
        throw InsufficientMoments("inner product needs moments to order " + std::to_string(top) + ", only " +
                                  std::to_string(ms.max_order) + " available");
    const auto& mu = ms.values<T>();
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    T acc(0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        T row(0);
        for (std::size_t k = 0; k < b.size(); ++k)
            if (b[k] != 0) row += b[k] * mu[j + k];
        acc += a[j] * row;
    }
    return acc;
}

template <Scalar T>
T inner_product(const Measure& m, const Polynomial<T>& p, const Polynomial<T>& q) {
    if (p.is_zero() || q.is_zero()) return T(0);
    return inner_product(m.moments(static_cast<std::size_t>(p.degree() + q.degree())), p, q);
}

#define BOP_INSTANTIATE(T)                                                                          \
    template GramMatrix<T> hankel_matrix<T>(const MomentSequence&, std::size_t);                    \
    template T moment_functional<T>(const MomentSequence&, const Polynomial<T>&, std::size_t);      \
    template T inner_product<T>(const MomentSequence&, const Polynomial<T>&, const Polynomial<T>&); \
    template T inner_product<T>(const Measure&, const Polynomial<T>&, const Polynomial<T>&);
BOP_INSTANTIATE(Rational)
BOP_INSTANTIATE(double)
#undef BOP_INSTANTIATE

namespace {

struct Entry {
    bool exact;
    Rational q;
    double d;
};

Entry parse_entry(const std::string& token) {
    std::string t;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '"') t += c;
    if (t.empty()) throw ParseError("empty moment entry");
    const bool decimal = t.find_first_of(".eE") != std::string::npos && t.find('/') == std::string::npos;
    Rational q = parse_rational(t);
    if (decimal) {
        double d = std::strtod(t.c_str(), nullptr);
        return {false, q, d};
    }
    return {true, q, q.get_d()};
}

MomentSequence assemble(std::vector<Entry> entries, double c0, std::string c0_symbol) {
    if (entries.empty()) throw MomentError("moment table has no entries");
    bool exact = true;
    for (const auto& e : entries) exact = exact && e.exact;
    MomentSequence ms;
    ms.c0 = c0;
    ms.c0_symbol = std::move(c0_symbol);
    ms.exact = exact;
    ms.max_order = entries.size() - 1;
    for (const auto& e : entries) {
        ms.mu.push_back(e.d);
        if (exact) ms.exact_mu.push_back(e.q);
    }
    check_normalized(ms);
    return ms;
}

}  // namespace

MomentSequence parse_moment_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<long, Entry>> rows;
    double c0 = 1.0;
    std::string c0_symbol = "1";
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected 'n,mu_n'");
        std::string key = line.substr(0, comma), value = line.substr(comma + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        if (key == "n") continue;
        if (key == "c0") {
            value.erase(0, value.find_first_not_of(" \t"));
            value.erase(value.find_last_not_of(" \t\r") + 1);
            c0_symbol = value;
            c0 = parse_entry(value).d;
            continue;
        }
        long n = 0;
        try {
            std::size_t used = 0;
            n = std::stol(key, &used);
            if (used != key.size() || n < 0) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad moment index '" + key + "'");
        }
        rows.emplace_back(n, parse_entry(value));
    }
    std::vector<Entry> entries(rows.size(), Entry{true, 0, 0});
    std::vector<bool> seen(rows.size(), false);
    for (auto& [n, e] : rows) {
        if (static_cast<std::size_t>(n) >= rows.size() || seen[n])
            throw MomentError("moment indices must be exactly 0..max_order without gaps");
        seen[n] = true;
        entries[n] = e;
    }
    return assemble(std::move(entries), c0, c0_symbol);
}

MomentSequence parse_moment_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("moment JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("mu") || !doc["mu"].is_array())
        throw ParseError("moment JSON must be an object with a \"mu\" array");
    auto to_entry = [](const nlohmann::json& v) -> Entry {
        if (v.is_string()) {
            Rational q = parse_rational(v.get<std::string>());
            return {true, q, q.get_d()};
        }
        if (v.is_number_integer()) {
            Rational q(v.dump());
            return {true, q, q.get_d()};
        }
        if (v.is_number_float()) return {false, Rational(0), v.get<double>()};
        throw ParseError("moment entries must be numbers or \"p/q\" strings");
    };
    std::vector<Entry> entries;
    for (const auto& v : doc["mu"]) entries.push_back(to_entry(v));
    double c0 = 1.0;
    std::string c0_symbol = "1";
    if (doc.contains("c0")) {
        Entry e = to_entry(doc["c0"]);
        c0 = e.d;
        c0_symbol = doc["c0"].is_string() ? doc["c0"].get<std::string>() : doc["c0"].dump();
    }
    if (doc.contains("c0_symbol") && doc["c0_symbol"].is_string()) c0_symbol = doc["c0_symbol"].get<std::string>();
    return assemble(std::move(entries), c0, c0_symbol);
}

MomentSequence read_moment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open moment file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_moment_json(text);
    return parse_moment_csv(text);
}

std::string moment_table_json(const MomentSequence& ms) {
    nlohmann::ordered_json doc;
    doc["c0"] = ms.c0;
    doc["c0_symbol"] = ms.c0_symbol;
    doc["exact"] = ms.exact;
    auto& mu = doc["mu"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n <= ms.max_order; ++n) {
        if (ms.exact) {
            mu.push_back(ms.exact_mu[n].get_str());
        } else {
            mu.push_back(ms.mu[n]);
        }
    }
    return doc.dump();
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = weights[n - 1 - k] = 2 / ((1 - x * x) * dp * dp);
    }
}

}  // namespace bop
