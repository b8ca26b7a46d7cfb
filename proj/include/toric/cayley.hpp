#pragma once

// Codimension-2 Cayley configurations: r binomials x_i t_i^gamma_i + y_i and
// one trinomial z1 t^alpha + z2 t^beta + z3. Their mixed resultant is the
// A-discriminant of the (2r+3)-row Gale dual.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "discriminant.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "poly.hpp"
#include "polygon.hpp"

namespace toric {

struct CayleyConfig {
    std::vector<Vec2> b;  // b_1..b_r
    Vec2 c1{}, c2{};
    BConfig derived_B;    // (b_1..b_r, c1, c2, -b_1..-b_r, -c1-c2)
    std::vector<std::int64_t> gammas, alphas, betas;
    std::int64_t Gamma = 0;          // |det(c1, c2)|
    std::int64_t gamma_product = 0;  // prod gamma_i

    std::size_t r() const { return b.size(); }
    // D_A^power is what the product formula over the binomial roots yields.
    std::int64_t power() const { return gamma_product / Gamma; }
};

// Names in derived_B row order: x_1..x_r, z1, z2, y_1..y_r, z3.
inline ContextPtr cayley_context(std::size_t r) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("z1");
    names.push_back("z2");
    for (std::size_t i = 1; i <= r; ++i) names.push_back("y" + std::to_string(i));
    names.push_back("z3");
    return make_context(std::move(names));
}

// Row i of the diagonal Gale dual of (b_1..b_r, c1, c2) is
// gamma_i e_i + alpha_i e_{r+1} + beta_i e_{r+2} with gamma_i minimal.
inline CayleyConfig build_cayley(std::vector<Vec2> b, Vec2 c1, Vec2 c2) {
    if (b.empty()) throw PreconditionError("Cayley configuration needs at least one vector b_i");
    for (const auto& v : b)
        if (is_zero(v)) throw PreconditionError("Cayley configuration requires all b_i to be nonzero");
    const std::int64_t D = det2(c1, c2);
    if (D == 0) throw PreconditionError("Cayley configuration requires det(c1, c2) != 0");
    std::int64_t g = std::abs(D);
    for (const auto& v : b) g = std::gcd(g, std::gcd(det2(v, c1), det2(v, c2)));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) g = std::gcd(g, det2(b[i], b[j]));
    if (g != 1) throw PreconditionError("rows b_1..b_r, c1, c2 must span Z^2");

    CayleyConfig cfg;
    cfg.b = b;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.Gamma = std::abs(D);
    cfg.gamma_product = 1;
    for (const auto& v : b) {
        const std::int64_t p = det2(v, c2), q = det2(c1, v);
        const std::int64_t gamma = std::abs(D) / std::gcd(std::abs(D), std::gcd(p, q));
        cfg.gammas.push_back(gamma);
        cfg.alphas.push_back(-gamma * p / D);
        cfg.betas.push_back(-gamma * q / D);
        cfg.gamma_product *= gamma;
    }
    std::vector<Vec2> rows = b;
    rows.push_back(c1);
    rows.push_back(c2);
    for (const auto& v : b) rows.push_back({-v[0], -v[1]});
    rows.push_back({-c1[0] - c2[0], -c1[1] - c2[1]});
    cfg.derived_B = validate_b(std::move(rows));
    return cfg;
}

// Laurent trinomial and binomials over (t_1..t_r) with coefficients named as
// in cayley_context.
struct SparseSystem {
    std::vector<std::int64_t> alpha, beta, gamma;
    std::string to_string() const {
        auto mono = [&](const std::vector<std::int64_t>& e) {
            std::string s;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) s += "*t" + std::to_string(i + 1) + (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
            return s;
        };
        std::string s = "f0 = z1" + mono(alpha) + " + z2" + mono(beta) + " + z3\n";
        for (std::size_t i = 0; i < gamma.size(); ++i)
            s += "f" + std::to_string(i + 1) + " = x" + std::to_string(i + 1) + "*t" + std::to_string(i + 1) + "^" +
                 std::to_string(gamma[i]) + " + y" + std::to_string(i + 1) + "\n";
        return s;
    }
};

inline SparseSystem sparse_system(const CayleyConfig& cfg) { return {cfg.alphas, cfg.betas, cfg.gammas}; }

inline Polynomial mixed_resultant(const CayleyConfig& cfg) {
    auto bundle = a_discriminant(cfg.derived_B, cayley_context(cfg.r()), {false});
    return bundle.D_A;
}

struct TermBoundReport {
    std::size_t terms = 0;
    std::int64_t bound = 0;            // floor(5 Gamma / 4 + 7 / 4)
    std::int64_t triangle_points = 0;  // #(conv{0, c1, c2} cap Z^2)
    bool holds = false;
    bool tight = false;
};

inline TermBoundReport check_term_bound(const CayleyConfig& cfg, const Polynomial& resultant) {
    TermBoundReport rep;
    rep.terms = resultant.size();
    rep.bound = (5 * cfg.Gamma + 7) / 4;
    const Vec2 s{cfg.c1[0] + cfg.c2[0], cfg.c1[1] + cfg.c2[1]};
    rep.triangle_points = 1 + (cfg.Gamma + gcd2(cfg.c1) + gcd2(cfg.c2) + gcd2(s)) / 2;
    const auto t = static_cast<std::int64_t>(rep.terms);
    rep.holds = t <= rep.bound && t <= rep.triangle_points;
    rep.tight = t == rep.bound;
    return rep;
}

struct ProductFormulaReport {
    std::size_t trials = 0;
    std::vector<double> monomial;  // inferred exponents of the Laurent monomial
    double max_exponent_error = 0;  // distance of the inferred exponents from integers
    double max_relative_deviation = 0;
    bool passed = false;
};

namespace detail {

// prod over common roots of f_1..f_r of f_0; coefficient vector in
// cayley_context order.
inline std::complex<double> cayley_root_product(const CayleyConfig& cfg, const std::vector<std::complex<double>>& c) {
    const std::size_t r = cfg.r();
    std::vector<std::vector<std::complex<double>>> roots(r);
    for (std::size_t i = 0; i < r; ++i) {
        const std::complex<double> base = -c[r + 2 + i] / c[i];
        const auto g = static_cast<double>(cfg.gammas[i]);
        const std::complex<double> root = std::pow(base, 1.0 / g);
        for (std::int64_t k = 0; k < cfg.gammas[i]; ++k)
            roots[i].push_back(root * std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / g));
    }
    std::complex<double> prod(1.0);
    std::vector<std::size_t> idx(r, 0);
    while (true) {
        std::complex<double> ta(1.0), tb(1.0);
        for (std::size_t i = 0; i < r; ++i) {
            ta *= std::pow(roots[i][idx[i]], static_cast<double>(cfg.alphas[i]));
            tb *= std::pow(roots[i][idx[i]], static_cast<double>(cfg.betas[i]));
        }
        prod *= c[r] * ta + c[r + 1] * tb + c[2 * r + 2];
        std::size_t k = 0;
        while (k < r && ++idx[k] == roots[k].size()) idx[k++] = 0;
        if (k == r) break;
    }
    return prod;
}

}  // namespace detail

// Checks that prod_roots f_0 / D_A^power is a fixed Laurent monomial times a
// constant, at random points of the torus.
inline ProductFormulaReport product_formula_check(const CayleyConfig& cfg, const Polynomial& resultant,
                                                  std::size_t trials, std::uint64_t seed = 1) {
    ProductFormulaReport rep;
    rep.trials = trials;
    const std::size_t n = cfg.derived_B.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mod(0.7, 1.4), arg(0.0, 2.0 * M_PI);
    auto sample = [&] {
        std::vector<std::complex<double>> c(n);
        for (auto& v : c) v = std::polar(mod(rng), arg(rng));
        return c;
    };
    const double k = static_cast<double>(cfg.power());
    auto ratio = [&](const std::vector<std::complex<double>>& c) {
        const std::complex<double> d = evaluate(resultant, std::span<const std::complex<double>>(c));
        return detail::cayley_root_product(cfg, c) / std::pow(d, k);
    };
    // Exponents from scaling one coordinate at a time by a real factor.
    const auto c0 = sample();
    const std::complex<double> r0 = ratio(c0);
    constexpr double scale = 1.5;
    rep.monomial.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto c = c0;
        c[j] *= scale;
        const double e = std::log(std::abs(ratio(c) / r0)) / std::log(scale);
        rep.monomial[j] = std::round(e);
        rep.max_exponent_error = std::max(rep.max_exponent_error, std::abs(e - rep.monomial[j]));
    }
    auto monomial_at = [&](const std::vector<std::complex<double>>& c) {
        std::complex<double> m(1.0);
        for (std::size_t j = 0; j < n; ++j) m *= std::pow(c[j], rep.monomial[j]);
        return m;
    };
    const std::complex<double> kappa = r0 / monomial_at(c0);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto c = sample();
        const std::complex<double> kt = ratio(c) / monomial_at(c);
        rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(kt - kappa) / std::abs(kappa));
    }
    rep.passed = rep.max_exponent_error < 1e-6 && rep.max_relative_deviation < 1e-6;
    return rep;
}

}  // namespace toric
