// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Expected values come from the oracles in oracles.hpp, closed forms written
// out below, or exact identities; nothing is compared against itself.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blockortho/analysis.hpp"
#include "blockortho/block_ortho.hpp"
#include "blockortho/gso.hpp"
#include "blockortho/multiblock.hpp"
#include "blockortho/projectors.hpp"
#include "blockortho/serialize.hpp"
#include "blockortho/standard_ortho.hpp"
#include "cli.hpp"
#include "helpers.hpp"
#include "random_gram.hpp"

using namespace bop;
using oracle::Q;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records the first failure only; later ones rarely add information.
    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Pair {
    std::string name;
    Measure first;
    Measure second;
    std::vector<Q> mu1;
    std::vector<Q> mu2;
};

std::vector<Pair> pairs(std::size_t max_order) {
    return {{"hermite", Measure::gaussian(1), Measure::gaussian(2), oracle::gaussian_moments(1, max_order),
             oracle::gaussian_moments(2, max_order)},
            {"laguerre", Measure::gamma(1, 1), Measure::gamma(2, 1), oracle::gamma_moments(1, 1, max_order),
             oracle::gamma_moments(2, 1, max_order)}};
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string at(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// Doubles convert to rationals exactly, so float results can be tested against exact moments.
oracle::Coeffs exact_coeffs(const Polynomial<double>& p) {
    oracle::Coeffs c;
    for (double v : p.coeffs()) c.emplace_back(v);
    return c;
}

oracle::Coeffs monomial_coeffs(std::size_t m) {
    oracle::Coeffs c(m + 1, Q(0));
    c[m] = 1;
    return c;
}

double rel_poly_diff(const Polynomial<double>& a, const Polynomial<Rational>& b) {
    double scale = 0, worst = 0;
    for (const auto& v : b.coeffs()) scale = std::max(scale, std::abs(v.get_d()));
    const long top = std::max(a.degree(), b.degree());
    for (long k = 0; k <= top; ++k) worst = std::max(worst, std::abs(a.coeff(k) - b.coeff(k).get_d()));
    return worst / (scale > 0 ? scale : 1.0);
}

Q exact_det(std::vector<std::vector<Q>> a) {
    const std::size_t n = a.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Q f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

Json run_cli(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return Json::parse(out.str());
}

Polynomial<Rational> first_poly(const Json& list) { return polynomial_from_json<Rational>(list.at(0)); }

// Third block for N1 = N2 = 1, N = 3: the 2x2 system for (a02, a12) in
// x^2 + a12 x + a02, with a01 the constant of the second block x + a01.
struct WrittenSystem {
    std::vector<std::vector<Q>> a;
    std::vector<Q> b;
};

WrittenSystem written_system(const Q& a01, const Q& z23, const Q& z13) {
    return {{{1, z13}, {z23 + a01, z23 * (z23 + 1 + a01)}},
            {-z13 * (z13 + 1), -z23 * (z23 + 1) * (z23 + 2 + a01)}};
}

std::string written_classification(const WrittenSystem& s) {
    const std::size_t rg = oracle::rank(s.a);
    auto aug = s.a;
    for (std::size_t r = 0; r < 2; ++r) aug[r].push_back(s.b[r]);
    const std::size_t ra = oracle::rank(aug);
    if (rg < ra) return "NoSolution";
    return rg == 2 ? "Unique" : "Family(" + std::to_string(2 - rg) + ")";
}

Outcome three_subspace() {
    Outcome o;
    struct Case {
        std::string z12, z23, z13, expected;
    };
    for (const auto& c : {Case{"1", "2", "3", "Unique"}, Case{"1", "2", "4", "NoSolution"}}) {
        int code = 0;
        const Json doc = run_cli({"three-subspace", "--z12", c.z12, "--z23", c.z23, "--z13", c.z13}, code);
        const std::string label = doc.at("classification").get<std::string>();
        o.require(code == 0 && label == c.expected, "(" + c.z12 + "," + c.z23 + "," + c.z13 + ") gave " + label);
        const auto sys = written_system(-Q(c.z12), Q(c.z23), Q(c.z13));
        o.require(written_classification(sys) == c.expected, "written system disagrees for z13=" + c.z13);
        if (c.expected == "Unique") {
            const auto sol = oracle::solve(sys.a, sys.b);
            const auto basis = first_poly(doc.at("basis"));
            o.require(basis * (Rational(1) / basis.leading()) == poly_of({sol[0], sol[1], 1}), "unique basis differs");
        }
    }
    // Symmetric first-second product with z23 = z13 - 1.
    for (const char* z13s : {"2", "3", "5/2", "7", "13/3"}) {
        const Q z13(z13s);
        Q z23 = z13 - 1;
        z23.canonicalize();
        int code = 0;
        const Json doc = run_cli({"three-subspace", "--symmetric12", "--z23", z23.get_str(), "--z13", z13.get_str()}, code);
        const std::string tag = std::string("z13=") + z13s;
        o.require(code == 0 && doc.at("classification") == "Family(1)", tag + " gave " + doc.at("classification").dump());
        if (!o.pass) break;
        const auto particular = first_poly(doc.at("family").at("particular"));
        const auto kernel = first_poly(doc.at("family").at("kernel"));
        const auto lib = laguerre_three_subspace(std::nullopt, z23, z13).solution;
        o.require(lib.label() == "Family(1)" && lib.basis.at(0) == particular && lib.kernel.at(0) == kernel,
                  tag + ": CLI and library disagree");
        const auto sys = written_system(0, z23, z13);
        o.require(written_classification(sys) == "Family(1)", tag + ": written system is not singular-consistent");
        // Family x^2 - z13(z13+1) + a(x - z13): the kernel is x - z13 up to scale and
        // the particular member differs from the a = 0 member along it.
        const Polynomial<Rational> base = poly_of({-z13 * (z13 + 1), 0, 1});
        const Polynomial<Rational> direction = poly_of({-z13, 1});
        o.require(kernel.degree() == 1 && kernel * (Rational(1) / kernel.leading()) == direction, tag + ": kernel");
        const auto offset = particular * (Rational(1) / particular.leading()) - base;
        o.require(offset.is_zero() || (offset.degree() == 1 && offset * (Rational(1) / offset.leading()) == direction),
                  tag + ": particular member");
        for (const Q& a : {Q(0), Q(1), Q(-7, 2)}) {
            const auto member = base + direction * Rational(a);
            const auto& c = member.coeffs();
            o.require(sys.a[0][0] * c[0] + sys.a[0][1] * c[1] == sys.b[0] && sys.a[1][0] * c[0] + sys.a[1][1] * c[1] == sys.b[1],
                      tag + ": family member violates the system");
        }
    }
    if (o.pass) o.detail = "(1,2,3) Unique, (1,2,4) NoSolution, 5 singular cases Family(1)";
    return o;
}

Outcome boundary_identities() {
    Outcome o;
    const std::size_t dim = 8;
    for (const auto& p : pairs(2 * dim)) {
        const auto q1 = build_standard<Rational>(p.first, dim);
        const auto q2 = build_standard<Rational>(p.second, dim);
        std::vector<SboBasis<Rational>> t;
        for (std::size_t i = 0; i < dim; ++i) t.push_back(build_sbo<Rational>(p.first, p.second, i, dim));
        for (std::size_t n = 0; n < dim; ++n) {
            o.require(t[n].monic(n) == q1.monic(n), p.name + ": diagonal at n=" + std::to_string(n));
            o.require(t[0].monic(n) == q2.monic(n), p.name + ": first column at n=" + std::to_string(n));
        }
        if (!p.first.symmetric() || !p.second.symmetric()) continue;
        for (std::size_t i = 1; i < dim; ++i)
            for (std::size_t n = i; n < dim; ++n)
                if ((i + n) % 2 == 0) o.require(t[i - 1].monic(n) == t[i].monic(n), p.name + ": parity at " + at(i, n));
        for (std::size_t n = 1; n < dim; n += 2)
            o.require(t[1].monic(n) == q2.monic(n), p.name + ": odd degree at n=" + std::to_string(n));
    }
    if (o.pass) o.detail = "diagonal and first column on both pairs, parity identities on the symmetric pair";
    return o;
}

Outcome derived_values() {
    Outcome o;
    struct Case {
        Pair pair;
        std::size_t i, n;
        Polynomial<Rational> expected;
    };
    const auto ps = pairs(16);
    for (const auto& c : {Case{ps[0], 2, 4, rpoly({"1/8", "0", "-7/4", "0", "1"})}, Case{ps[1], 1, 2, rpoly({"1/2", "-5/2", "1"})}}) {
        const std::string tag = c.pair.name + " " + at(c.i, c.n);
        const auto s = build_sbo<Rational>(c.pair.first, c.pair.second, c.i, c.n + 1);
        o.require(s.monic(c.n) == c.expected, tag + ": orthogonalization path");
        o.require(sbo_determinant_oracle(*s.q_basis, s.second_gram, c.i, c.n).poly == c.expected, tag + ": determinant route");
        o.require(poly_of(oracle::block_orthogonal(c.pair.mu1, c.pair.mu2, c.i, c.n)) == c.expected, tag + ": linear-solve oracle");
    }
    if (o.pass) o.detail = "x^4 - 7/4 x^2 + 1/8 and x^2 - 5/2 x + 1/2 on three routes";
    return o;
}

Outcome orthogonality() {
    Outcome o;
    const std::size_t dim = 10;
    double worst = 0;
    for (const auto& p : pairs(2 * dim)) {
        for (std::size_t i = 0; i <= 4; ++i) {
            const auto e = build_sbo<Rational>(p.first, p.second, i, dim);
            const auto f = build_sbo<double>(p.first, p.second, i, dim);
            for (std::size_t n = i; n < dim; ++n) {
                const auto pe = coeffs_of(e.poly(n));
                const auto pf = exact_coeffs(f.poly(n));
                const double pf_norm1 = oracle::pair(p.mu1, pf, pf).get_d();
                for (std::size_t m = 0; m < i; ++m) {
                    const auto xm = monomial_coeffs(m);
                    o.require(oracle::pair(p.mu1, xm, pe) == 0, p.name + ": constraint " + at(m, n) + " i=" + std::to_string(i));
                    const double r = std::abs(oracle::pair(p.mu1, xm, pf).get_d()) /
                                     std::sqrt(oracle::pair(p.mu1, xm, xm).get_d() * pf_norm1);
                    worst = std::max(worst, r);
                }
                for (std::size_t m = i; m <= n; ++m) {
                    const Q ge = oracle::pair(p.mu2, coeffs_of(e.poly(m)), pe);
                    o.require(ge == (m == n ? Q(e.norm(n)) : Q(0)), p.name + ": block " + at(m, n) + " i=" + std::to_string(i));
                    double gf = oracle::pair(p.mu2, exact_coeffs(f.poly(m)), pf).get_d();
                    if (m == n) gf -= f.norm(n);
                    worst = std::max(worst, std::abs(gf) / std::sqrt(f.norm(m) * f.norm(n)));
                }
            }
        }
    }
    o.require(worst <= 1e-10, "float residual " + sci(worst));
    if (o.pass) o.detail = "exact zeros; worst float residual " + sci(worst);
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> f(1, 6);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial) % 7;
        const auto g = random_gram(rng, n);
        const auto gf = to_float(g);
        std::vector<Rational> factors(n);
        std::vector<double> factors_f(n);
        for (std::size_t k = 0; k < n; ++k) {
            factors[k] = Rational(f(rng), f(rng));
            factors[k].canonicalize();
            factors_f[k] = factors[k].get_d();
        }
        const auto r = gram_schmidt(g, factors);
        const auto rf = gram_schmidt(gf, factors_f);
        const std::string tag = "trial " + std::to_string(trial);
        for (std::size_t k = 0; k < n; ++k) {
            o.require(determinant_oracle_vector(g, k, factors[k]) == r.vector(k), tag + ": vector");
            o.require(norm_from_determinants(g, k, factors[k]) == r.h[k], tag + ": norm");
            const auto vf = determinant_oracle_vector(gf, k, factors_f[k]);
            double scale = 0;
            for (double v : vf) scale = std::max(scale, std::abs(v));
            for (std::size_t m = 0; m <= k; ++m) {
                o.require(signed_minor_coefficient(g, m, k, factors[k]) == r.a(m, k), tag + ": minor");
                o.require(connection_b(g, r, m, k) == r.b(m, k), tag + ": inverse connection");
                worst = std::max(worst, std::abs(vf[m] - rf.a(m, k)) / scale);
                worst = std::max(worst, std::abs(signed_minor_coefficient(gf, m, k, factors_f[k]) - rf.a(m, k)) / scale);
                worst = std::max(worst, rel_diff(connection_b(gf, rf, m, k), rf.b(m, k)));
            }
            worst = std::max(worst, rel_diff(norm_from_determinants(gf, k, factors_f[k]), rf.h[k]));
        }
    }
    // Built-in constructions: standard and block bases against their determinant routes.
    const std::size_t dim = 8;
    for (const auto& p : pairs(2 * dim)) {
        for (const auto& m : {p.first, p.second}) {
            const auto b = build_standard<Rational>(m, dim);
            const auto bf = build_standard<double>(m, dim);
            for (std::size_t n = 0; n < dim; ++n) {
                const auto so = standard_determinant_oracle(b, n);
                o.require(so.poly == b.polys[n] && so.norm == b.norms[n], p.name + ": standard n=" + std::to_string(n));
                const auto sf = standard_determinant_oracle(bf, n);
                worst = std::max(worst, rel_poly_diff(sf.poly, b.polys[n]));
                worst = std::max(worst, rel_diff(sf.norm, b.norms[n].get_d()));
            }
        }
        for (std::size_t i = 0; i < dim; ++i) {
            const auto s = build_sbo<Rational>(p.first, p.second, i, dim);
            const auto sf = build_sbo<double>(p.first, p.second, i, dim);
            for (std::size_t n = i; n < dim; ++n) {
                const std::string tag = p.name + ": block " + at(i, n);
                const auto so = sbo_determinant_oracle(*s.q_basis, s.second_gram, i, n);
                o.require(so.poly == s.monic(n) && so.monic_norm == s.monic_norm(n), tag);
                for (std::size_t m = i; m <= n; ++m)
                    o.require(so.monic_to_q[m - i] == s.a_hat(m, n) && so.monic_from_q[m - i] == s.b_hat(m, n), tag + " coefficients");
                const auto fo = sbo_determinant_oracle(*sf.q_basis, sf.second_gram, i, n);
                worst = std::max(worst, rel_poly_diff(fo.poly, s.monic(n)));
                worst = std::max(worst, rel_diff(fo.monic_norm, s.monic_norm(n).get_d()));
            }
        }
    }
    o.require(worst <= 1e-9, "float deviation " + sci(worst));
    if (o.pass) o.detail = "50 random Gram matrices and both pairs at N=8; worst float deviation " + sci(worst);
    return o;
}

Outcome checkerboard() {
    Outcome o;
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> d(-9, 9);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial) % 8;
        const bool free_last = trial % 2 == 1;
        std::vector<std::vector<Q>> a(n, std::vector<Q>(n, Q(0)));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if ((r + c) % 2 == 0 || (free_last && r + 1 == n)) a[r][c] = Q(d(rng), 1 + (r * c) % 4);
        for (std::size_t r = 0; r < n; ++r) a[r][r] += 20;  // keeps the blocks comfortably nonsingular
        for (auto& row : a)
            for (auto& v : row) v.canonicalize();
        const Q det = exact_det(a);
        Matrix<double> m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = a[r][c].get_d();
        const auto fac = checkerboard_det(m, free_last);
        worst = std::max(worst, rel_diff(fac.det, det.get_d()));
        worst = std::max(worst, rel_diff(fac.even_block_det * fac.odd_block_det, det.get_d()));
        if (!free_last) continue;
        // Entries of the last row that break the pattern do not move the determinant.
        auto b = a;
        for (std::size_t c = 0; c < n; ++c)
            if ((n - 1 + c) % 2 == 1) b[n - 1][c] += Q(d(rng) + 11);
        o.require(exact_det(b) == det, "perturbation changed the exact determinant, trial " + std::to_string(trial));
        Matrix<double> mb(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) mb(r, c) = b[r][c].get_d();
        const auto fb = checkerboard_det(mb, true);
        worst = std::max(worst, rel_diff(fb.det, det.get_d()));
        worst = std::max(worst, rel_diff(fb.even_block_det * fb.odd_block_det, det.get_d()));
    }
    o.require(worst <= 1e-10, "relative error " + sci(worst));
    if (o.pass) o.detail = "100 matrices of sizes 1-8; worst relative error " + sci(worst);
    return o;
}

Outcome integrals() {
    Outcome o;
    double worst = 0;
    std::size_t count = 0;
    for (const auto& p : pairs(8)) {
        for (auto [i, n] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}) {
            const auto s = build_sbo<Rational>(p.first, p.second, i, n + 1);
            const std::string tag = p.name + " " + at(i, n);
            std::vector<IntegralReport> all = verify_Z_integral(s, n, n + 2);
            const auto pr = verify_P_integral(s, n, n + 2);
            all.insert(all.end(), pr.checks.begin(), pr.checks.end());
            o.require(!all.empty(), tag + ": no checks ran");
            for (const auto& r : all) {
                ++count;
                o.require(r.pass, tag + ": " + r.check);
                worst = std::max(worst, r.rel_err);
            }
            double scale = 1;
            for (double v : pr.reference.coeffs()) scale = std::max(scale, std::abs(v));
            worst = std::max(worst, pr.max_coeff_err / scale);
        }
    }
    o.require(worst <= 1e-10, "relative error " + sci(worst));
    if (o.pass) o.detail = std::to_string(count) + " quadrature checks; worst relative error " + sci(worst);
    return o;
}

Outcome recurrence_facts() {
    Outcome o;
    const std::size_t dim = 10;
    for (const auto& p : pairs(2 * dim))
        for (int slot = 0; slot < 2; ++slot) {
            const Measure& m = slot == 0 ? p.first : p.second;
            const auto b = build_standard<Rational>(m, dim);
            const auto r = build_by_recurrence<Rational>(m, dim);
            for (std::size_t n = 0; n < dim; ++n) {
                o.require(r.at(n) == b.monic(n), p.name + ": recurrence n=" + std::to_string(n));
                o.require(r.at(n) == poly_of(oracle::monic_orthogonal(slot == 0 ? p.mu1 : p.mu2, n)),
                          p.name + ": recurrence vs oracle n=" + std::to_string(n));
            }
        }
    const auto ps = pairs(12);
    const auto s = build_sbo<Rational>(ps[0].first, ps[0].second, 2, 6);
    const auto e = expand_x_times_P(s, 4);
    bool witness = false;
    for (std::size_t m : e.nonzero_below) witness |= m + 1 < 4;
    o.require(witness && e.below != 0, "no coefficient below n-1 for the Hermite pair at (2,4)");
    Polynomial<Rational> rebuilt = s.q_basis->monic(1) * e.below;
    for (std::size_t m = 2; m <= 5; ++m) rebuilt.add_scaled(s.monic(m), e.eta[m - 2]);
    o.require(rebuilt == s.monic(4).mul_x(), "expansion does not rebuild x P(2,4)");
    for (const auto& p : ps) {
        std::vector<SboBasis<Rational>> t;
        for (std::size_t i = 0; i < 6; ++i) t.push_back(build_sbo<Rational>(p.first, p.second, i, 6));
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i; j < 6; ++j) {
                const auto c = cross_i_connection(t[i], t[j]);
                for (std::size_t r = i; r < 6; ++r)
                    for (std::size_t k = j; k < 6; ++k) {
                        if (i == j) o.require(c(r, k) == (r == k ? 1 : 0), p.name + ": self connection i=" + std::to_string(i));
                        if (r == k) o.require(c(r, k) == 1, p.name + ": diagonal " + at(i, j));
                    }
            }
    }
    if (o.pass) o.detail = "recurrence rebuild to N=10, witness below n-1 at (2,4), connection diagonals";
    return o;
}

Outcome projector_suite() {
    Outcome o;
    for (const auto& p : pairs(20))
        for (std::size_t dim : {4, 7, 10}) {
            const auto q = build_standard<Rational>(p.first, dim);
            const auto id = Matrix<Rational>::identity(dim);
            for (std::size_t i = 0; i <= dim; ++i) {
                const std::string tag = p.name + " " + at(i, dim);
                const auto [onto, comp] = projectors_from_q(q, i);
                const auto [onto2, comp2] = projectors_from_second<Rational>(p.first, p.second, i, dim);
                o.require(onto.entries * onto.entries == onto.entries && comp.entries * comp.entries == comp.entries,
                          tag + ": idempotence");
                o.require(onto.entries + comp.entries == id, tag + ": complementarity");
                o.require(onto.entries == onto2.entries && comp.entries == comp2.entries, tag + ": route equivalence");
                for (std::size_t a = 0; a < dim; ++a) {
                    const auto xa = Polynomial<Rational>::monomial(a);
                    if (a < i) o.require(onto.apply(xa) == xa, tag + ": constraint space not fixed");
                    for (std::size_t b = 0; b < i; ++b)
                        o.require(inner_product(p.first, comp.apply(xa), Polynomial<Rational>::monomial(b)) == 0,
                                  tag + ": complement not orthogonal");
                }
            }
        }
    if (o.pass) o.detail = "N in {4,7,10}, every constraint dimension, both pairs";
    return o;
}

Polynomial<Rational> derivative(const Polynomial<Rational>& p) {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < p.coeffs().size(); ++k) c.push_back(p.coeffs()[k] * static_cast<long>(k));
    return Polynomial<Rational>(std::move(c));
}

// A bracket is certified by opposite exact signs at its ends, or, when it has
// collapsed onto a root, by an exact simple zero there.
bool certified_bracket(const Polynomial<Rational>& p, const Bracket& b) {
    const Rational lo(b.lo), hi(b.hi);
    if (b.lo == b.hi) return p(lo) == 0 && derivative(p)(lo) != 0;
    return sgn(p(lo)) * sgn(p(hi)) < 0;
}

// Certifies each reported sign change by exact evaluation.
Outcome zeros() {
    Outcome o;
    const std::size_t dim = 9;
    for (const auto& p : pairs(2 * dim)) {
        for (std::size_t i = 0; i < dim; ++i) {
            const auto s = build_sbo<Rational>(p.first, p.second, i, dim);
            for (std::size_t n = std::max<std::size_t>(i, 1); n < dim; ++n) {
                const std::string tag = p.name + " " + at(i, n);
                const auto z = zero_report(s, n);
                double previous_hi = -std::numeric_limits<double>::infinity();
                std::size_t certified = 0;
                for (const auto& b : z.brackets) {
                    const bool inside = p.first.symmetric() || b.lo >= 0;
                    if (inside && b.lo >= previous_hi && certified_bracket(s.poly(n), b)) ++certified;
                    previous_hi = b.hi;
                }
                o.require(certified == z.count, tag + ": uncertified bracket");
                o.require(certified >= i, tag + ": " + std::to_string(certified) + " sign changes");
                if (i + 1 == n) o.require(certified == n, tag + ": not all zeros simple and inside");
            }
        }
    }
    if (o.pass) o.detail = "all P(i,n) with n < 9 on both pairs";
    return o;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    double seconds_limit;  // 0 for no limit
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "three-subspace classification", three_subspace, 1.0},
        {2, "boundary identities", boundary_identities, 0},
        {3, "worked block polynomials", derived_values, 0},
        {4, "orthogonality suite", orthogonality, 10.0},
        {5, "oracle equivalence", oracle_equivalence, 0},
        {6, "checkerboard factorization", checkerboard, 0},
        {7, "integral representations", integrals, 60.0},
        {8, "recurrence facts", recurrence_facts, 0},
        {9, "projector suite", projector_suite, 0},
        {10, "zeros", zeros, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.seconds_limit > 0 && secs >= c.seconds_limit) out.require(false, "over the time limit");
        if (!out.pass) ++failures;
        std::printf("%s %2d %-30s %7.3f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, out.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
