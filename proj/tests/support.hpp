#pragma once

#include <random>
#include <vector>

#include <gmpxx.h>

#include "toric/lattice.hpp"
#include "toric/poly.hpp"

namespace toric::testing {

// Random valid B with n rows in [3, max_rows] and entries in [-bound, bound].
inline BConfig random_b(std::mt19937_64& rng, std::size_t max_rows, std::int64_t bound, bool nonzero_rows) {
    std::uniform_int_distribution<std::size_t> nd(3, max_rows);
    std::uniform_int_distribution<std::int64_t> ed(-bound, bound);
    while (true) {
        const std::size_t n = nd(rng);
        std::vector<Vec2> rows(n);
        Vec2 sum{0, 0};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            rows[i] = {ed(rng), ed(rng)};
            sum = {sum[0] + rows[i][0], sum[1] + rows[i][1]};
        }
        rows[n - 1] = {-sum[0], -sum[1]};
        if (std::abs(sum[0]) > bound || std::abs(sum[1]) > bound) continue;
        bool ok = true;
        if (nonzero_rows)
            for (const auto& r : rows) ok = ok && !is_zero(r);
        if (!ok) continue;
        try {
            return validate_b(std::move(rows));
        } catch (const PreconditionError&) {
        }
    }
}

inline mpq_class random_rational(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, 7);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline mpq_class random_nonzero_rational(std::mt19937_64& rng, long lo, long hi) {
    while (true) {
        auto q = random_rational(rng, lo, hi);
        if (q != 0) return q;
    }
}

// Random polynomial with small coefficients and exponents.
inline Polynomial random_polynomial(std::mt19937_64& rng, const ContextPtr& ctx, std::size_t terms, int max_exp,
                                    long coeff = 9) {
    std::uniform_int_distribution<int> ed(0, max_exp);
    std::uniform_int_distribution<long> cd(-coeff, coeff);
    std::vector<std::pair<std::vector<Exponent>, Integer>> t;
    for (std::size_t k = 0; k < terms; ++k) {
        std::vector<Exponent> e(ctx->size());
        for (auto& x : e) x = ed(rng);
        t.emplace_back(std::move(e), Integer(cd(rng)));
    }
    return Polynomial::from_terms(ctx, std::move(t));
}

inline std::vector<mpq_class> random_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<mpq_class> p(n);
    for (auto& x : p) x = random_nonzero_rational(rng, -9, 9);
    return p;
}

inline mpq_class eval(const Polynomial& f, const std::vector<mpq_class>& p) {
    return evaluate(f, std::span<const mpq_class>(p));
}

}  // namespace toric::testing
