#pragma once

// Integer configurations B (n x 2) and A ((n-2) x n), Gale duality, and the
// combinatorial statistics beta, nu, d_B and relevant lines.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace toric {

using Vec2 = std::array<std::int64_t, 2>;

inline std::int64_t det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline std::int64_t gcd2(const Vec2& a) { return std::gcd(a[0], a[1]); }
inline bool is_zero(const Vec2& a) { return a[0] == 0 && a[1] == 0; }

struct BConfig {
    std::vector<Vec2> rows;
    std::size_t size() const noexcept { return rows.size(); }
    const Vec2& operator[](std::size_t i) const { return rows[i]; }
    bool has_zero_row() const {
        return std::any_of(rows.begin(), rows.end(), [](const Vec2& r) { return is_zero(r); });
    }
};

struct AConfig {
    std::vector<std::vector<std::int64_t>> rows;  // n-2 rows of length n
    std::size_t columns() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct NuEntry {
    std::size_t r, s;  // r < s, 0-based
    std::int64_t nu;
};

struct ConfigStats {
    std::int64_t beta1 = 0, beta2 = 0;
    std::vector<NuEntry> nu;  // nonzero entries only
    std::int64_t nu_sum = 0;
    std::int64_t degree = 0;  // d_B

    std::int64_t nu_of(std::size_t r, std::size_t s) const {
        if (r > s) std::swap(r, s);
        for (const auto& e : nu)
            if (e.r == r && e.s == s) return e.nu;
        return 0;
    }
};

struct RelevantLine {
    Vec2 v{};                              // primitive, alpha >= 0
    std::vector<std::size_t> members;      // rows parallel to v
    std::vector<std::int64_t> lambdas;     // b_member = lambda * v
    std::int64_t alpha = 0;
    std::int64_t delta = 0;
    Vec2 b_v() const { return {alpha * v[0], alpha * v[1]}; }
};

inline BConfig validate_b(std::vector<Vec2> rows) {
    if (rows.size() < 3) throw PreconditionError("B needs at least 3 rows");
    std::int64_t s1 = 0, s2 = 0;
    for (const auto& r : rows) {
        s1 += r[0];
        s2 += r[1];
    }
    if (s1 != 0 || s2 != 0)
        throw PreconditionError("column sums must be zero (column 1 sums to " + std::to_string(s1) +
                                ", column 2 sums to " + std::to_string(s2) + ")");
    bool rank2 = false;
    for (std::size_t i = 0; i < rows.size() && !rank2; ++i)
        for (std::size_t j = i + 1; j < rows.size() && !rank2; ++j) rank2 = det2(rows[i], rows[j]) != 0;
    if (!rank2) throw PreconditionError("rows of B must span a rank-2 lattice (B has rank < 2)");
    return BConfig{std::move(rows)};
}

// gcd of the 2x2 minors equals 1 iff Z^n / im(B) is torsion-free.
inline bool is_prime(const BConfig& b) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) g = std::gcd(g, det2(b[i], b[j]));
    return g == 1;
}

namespace detail {

using ZMatrix = std::vector<std::vector<mpz_class>>;

// Z-basis of {x in Z^n : M x = 0}, returned as rows.
inline ZMatrix integer_kernel(const ZMatrix& m, std::size_t n) {
    const std::size_t rows = m.size();
    // Column operations on the stacked matrix [M; I].
    ZMatrix a(rows + n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    for (std::size_t j = 0; j < n; ++j) a[rows + j][j] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        for (auto& row : a) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (auto& row : a) std::swap(row[x], row[y]);
    };
    std::size_t pivot_col = 0;
    for (std::size_t i = 0; i < rows && pivot_col < n; ++i) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t j = pivot_col; j < n; ++j)
                if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[i][*best]))) best = j;
            if (!best) break;
            col_swap(pivot_col, *best);
            bool done = true;
            for (std::size_t j = pivot_col + 1; j < n; ++j) {
                if (a[i][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][pivot_col].get_mpz_t());
                col_axpy(j, pivot_col, q);
                if (a[i][j] != 0) done = false;
            }
            if (done) {
                ++pivot_col;
                break;
            }
        }
    }
    ZMatrix basis;
    for (std::size_t j = pivot_col; j < n; ++j) {
        std::vector<mpz_class> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = a[rows + k][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row Hermite normal form of a full-row-rank integer matrix.
inline ZMatrix hermite_rows(ZMatrix h) {
    if (h.empty()) return h;
    const std::size_t n = h.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < h.size(); ++c) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < h.size(); ++i)
                if (h[i][c] != 0 && (!best || abs(h[i][c]) < abs(h[*best][c]))) best = i;
            if (!best) break;
            std::swap(h[r], h[*best]);
            bool done = true;
            for (std::size_t i = r + 1; i < h.size(); ++i) {
                if (h[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
                for (std::size_t k = 0; k < n; ++k) h[i][k] -= q * h[r][k];
                if (h[i][c] != 0) done = false;
            }
            if (!done) continue;
            if (h[r][c] < 0)
                for (auto& x : h[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
                if (q != 0)
                    for (std::size_t k = 0; k < n; ++k) h[i][k] -= q * h[r][k];
            }
            ++r;
            break;
        }
    }
    return h;
}

inline std::int64_t to_int64(const mpz_class& v) {
    if (!v.fits_slong_p()) throw InternalError("integer matrix entry exceeds 64 bits");
    return v.get_si();
}

}  // namespace detail

// Integer (n-2) x n matrix A, Hermite-reduced, with A * B = 0 and rows a
// Z-basis of the kernel of B^T.
inline AConfig gale_dual_a(const BConfig& b) {
    if (!is_prime(b)) throw NotPrime();
    const std::size_t n = b.size();
    detail::ZMatrix bt(2, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        bt[0][i] = static_cast<long>(b[i][0]);
        bt[1][i] = static_cast<long>(b[i][1]);
    }
    auto h = detail::hermite_rows(detail::integer_kernel(bt, n));
    AConfig a;
    for (auto& row : h) {
        std::vector<std::int64_t> r;
        for (auto& x : row) r.push_back(detail::to_int64(x));
        a.rows.push_back(std::move(r));
    }
    return a;
}

// B whose columns are a Hermite-reduced Z-basis of ker(A).
inline BConfig gale_dual_b(const AConfig& a) {
    const std::size_t n = a.columns();
    for (const auto& r : a.rows)
        if (r.size() != n) throw PreconditionError("rows of A have different lengths");
    detail::ZMatrix m;
    for (const auto& r : a.rows) {
        std::vector<mpz_class> row;
        for (auto x : r) row.emplace_back(static_cast<long>(x));
        m.push_back(std::move(row));
    }
    auto k = detail::hermite_rows(detail::integer_kernel(m, n));
    if (k.size() != 2)
        throw PreconditionError("kernel of A has rank " + std::to_string(k.size()) + ", expected 2 (A must have rank n-2)");
    std::vector<Vec2> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = {detail::to_int64(k[0][i]), detail::to_int64(k[1][i])};
    std::int64_t s1 = 0, s2 = 0;
    for (const auto& r : rows) {
        s1 += r[0];
        s2 += r[1];
    }
    if (s1 != 0 || s2 != 0)
        throw PreconditionError("no rational w with w . a_i = 1 for all columns a_i of A (X is not projective)");
    return BConfig{std::move(rows)};
}

inline ConfigStats compute_stats(const BConfig& b) {
    ConfigStats st;
    for (const auto& r : b.rows) {
        st.beta1 += std::max<std::int64_t>(r[0], 0);
        st.beta2 += std::max<std::int64_t>(r[1], 0);
    }
    auto sgn = [](std::int64_t x) { return (x > 0) - (x < 0); };
    for (std::size_t r = 0; r < b.size(); ++r)
        for (std::size_t s = r + 1; s < b.size(); ++s) {
            const auto &u = b[r], &w = b[s];
            if (u[0] == 0 || u[1] == 0 || w[0] == 0 || w[1] == 0) continue;
            if (sgn(u[0]) != -sgn(w[0]) || sgn(u[1]) != -sgn(w[1])) continue;
            const std::int64_t nu = std::min(std::abs(u[0] * w[1]), std::abs(u[1] * w[0]));
            st.nu.push_back({r, s, nu});
            st.nu_sum += nu;
        }
    st.degree = st.beta1 * st.beta2 - st.nu_sum;
    return st;
}

inline Vec2 primitive_direction(const Vec2& a) {
    const std::int64_t g = gcd2(a);
    return {a[0] / g, a[1] / g};
}

inline bool lex_positive(const Vec2& v) { return v[0] > 0 || (v[0] == 0 && v[1] > 0); }

// Lines through the origin containing rows of B in both directions.
inline std::vector<RelevantLine> relevant_lines(const BConfig& b) {
    std::vector<RelevantLine> lines;
    std::vector<bool> seen(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (seen[i] || is_zero(b[i])) continue;
        Vec2 u = primitive_direction(b[i]);
        RelevantLine line;
        line.v = u;
        bool pos = false, neg = false;
        for (std::size_t j = i; j < b.size(); ++j) {
            if (is_zero(b[j]) || det2(u, b[j]) != 0) continue;
            seen[j] = true;
            const std::int64_t lambda = u[0] != 0 ? b[j][0] / u[0] : b[j][1] / u[1];
            line.members.push_back(j);
            line.lambdas.push_back(lambda);
            (lambda > 0 ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        line.alpha = std::accumulate(line.lambdas.begin(), line.lambdas.end(), std::int64_t{0});
        if (line.alpha < 0 || (line.alpha == 0 && !lex_positive(line.v))) {
            line.v = {-line.v[0], -line.v[1]};
            line.alpha = -line.alpha;
            for (auto& l : line.lambdas) l = -l;
        }
        for (auto l : line.lambdas)
            if (l < 0) line.delta -= l;
        lines.push_back(std::move(line));
    }
    return lines;
}

// Index of the relevant line containing row i, if any.
inline std::optional<std::size_t> line_of_row(const std::vector<RelevantLine>& lines, std::size_t i) {
    for (std::size_t k = 0; k < lines.size(); ++k)
        if (std::find(lines[k].members.begin(), lines[k].members.end(), i) != lines[k].members.end()) return k;
    return std::nullopt;
}

}  // namespace toric
