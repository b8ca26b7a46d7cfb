#pragma once

// Chow form of the codimension-2 lattice ideal I_B: the Sylvester resultant
// of the two binomials restricted to a generic line, divided by the bracket
// factors of the coordinate-flat components; and the Bezout determinant for
// Cohen-Macaulay presentations.

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "elimination.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "poly.hpp"

namespace toric {

// Variables y_i1, y_i2 per row. With row names a, b, ... the pair is a0, a1.
inline ContextPtr chow_context(std::size_t n, const std::vector<std::string>& row_names = {}) {
    if (!row_names.empty() && row_names.size() != n)
        throw PreconditionError("expected " + std::to_string(n) + " variable names, got " +
                                std::to_string(row_names.size()));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        if (!row_names.empty()) {
            names.push_back(row_names[i] + "0");
            names.push_back(row_names[i] + "1");
        } else {
            const std::string sep = n >= 10 ? "_" : "";
            names.push_back("y" + std::to_string(i + 1) + sep + "1");
            names.push_back("y" + std::to_string(i + 1) + sep + "2");
        }
    }
    return make_context(std::move(names));
}

inline Polynomial bracket(const ContextPtr& y, std::size_t r, std::size_t s) {
    return Polynomial::variable(y, 2 * r) * Polynomial::variable(y, 2 * s + 1) -
           Polynomial::variable(y, 2 * r + 1) * Polynomial::variable(y, 2 * s);
}

// Products over the rows with positive resp. negative entry in column l of
// linear[i]^|b_il|.
inline std::pair<UniPoly, UniPoly> column_products(const BConfig& b, int l, const std::vector<UniPoly>& linear) {
    const ContextPtr& ctx = linear.front().context();
    UniPoly pos = UniPoly::constant(Polynomial::constant(ctx, 1)), neg = pos;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::int64_t e = b[i][static_cast<std::size_t>(l)];
        if (e > 0) pos = pos * linear[i].pow(static_cast<unsigned>(e));
        if (e < 0) neg = neg * linear[i].pow(static_cast<unsigned>(-e));
    }
    return {std::move(pos), std::move(neg)};
}

inline std::pair<UniPoly, UniPoly> binomials_on_lines(const BConfig& b, const std::vector<UniPoly>& linear) {
    auto [p1, n1] = column_products(b, 0, linear);
    auto [p2, n2] = column_products(b, 1, linear);
    return {p1 - n1, p2 - n2};
}

// H_l(t) = prod_{b_il > 0} (y_i1 + y_i2 t)^b_il - prod_{b_il < 0} (y_i1 + y_i2 t)^-b_il
inline std::pair<UniPoly, UniPoly> build_H(const BConfig& b, const ContextPtr& y) {
    if (y->size() != 2 * b.size()) throw PreconditionError("context must have two variables per row of B");
    std::vector<UniPoly> lines;
    for (std::size_t i = 0; i < b.size(); ++i)
        lines.push_back(UniPoly::linear(Polynomial::variable(y, 2 * i), Polynomial::variable(y, 2 * i + 1)));
    return binomials_on_lines(b, lines);
}

struct ChowForm {
    Polynomial polynomial;
    std::int64_t degree = 0;  // 2 d_B
    ConfigStats stats;
};

// Res_t(H1, H2) / prod [rs]^nu_rs, sign-normalized. Formal degrees beta_l.
inline ChowForm chow_form(const BConfig& b, ContextPtr y = nullptr) {
    if (!y) y = chow_context(b.size());
    ChowForm out{Polynomial(y), 0, compute_stats(b)};
    auto [h1, h2] = build_H(b, y);
    Polynomial res = sylvester_resultant(h1, static_cast<int>(out.stats.beta1), h2, static_cast<int>(out.stats.beta2));
    auto nu = out.stats.nu;
    std::stable_sort(nu.begin(), nu.end(), [](const NuEntry& a, const NuEntry& c) { return a.nu < c.nu; });
    for (const auto& e : nu) {
        const Polynomial br = bracket(y, e.r, e.s);
        for (std::int64_t k = 0; k < e.nu; ++k) res = exact_divide(res, br);
    }
    out.polynomial = sign_normalized(std::move(res));
    out.degree = 2 * out.stats.degree;
    return out;
}

// ---------------------------------------------------------------------------
// Bezout determinant

struct BezoutInput {
    // m[0..2] top row, m[3..5] bottom row; exponent vectors over x_1..x_n.
    std::array<std::vector<std::int64_t>, 6> m;

    std::int64_t degree(std::size_t k) const {
        std::int64_t d = 0;
        for (auto e : m[k]) d += e;
        return d;
    }
    std::int64_t delta() const { return degree(0) + degree(3); }
};

// Coordinates (p, q) with u = p * column1 + q * column2 of B, if integral.
inline std::optional<Vec2> column_lattice_coordinates(const BConfig& b, const std::vector<std::int64_t>& u) {
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            const std::int64_t d = det2(b[i], b[j]);
            if (d == 0) continue;
            // Solve [b_i; b_j] (p, q)^T = (u_i, u_j)^T.
            const std::int64_t pn = u[i] * b[j][1] - u[j] * b[i][1];
            const std::int64_t qn = b[i][0] * u[j] - b[j][0] * u[i];
            if (pn % d != 0 || qn % d != 0) return std::nullopt;
            const std::int64_t p = pn / d, q = qn / d;
            for (std::size_t k = 0; k < b.size(); ++k)
                if (p * b[k][0] + q * b[k][1] != u[k]) return std::nullopt;
            return Vec2{p, q};
        }
    return std::nullopt;
}

// Checks the hypotheses of the Bezout formula; swaps the rows when the
// bottom row carries the larger degree.
inline BezoutInput validate_bezout(const BConfig& b, BezoutInput in) {
    for (const auto& e : in.m) {
        if (e.size() != b.size()) throw PreconditionError("Bezout monomials must have one exponent per row of B");
        for (auto x : e)
            if (x < 0) throw PreconditionError("Bezout matrix entries must be monomials with nonnegative exponents");
    }
    if (in.degree(0) < in.degree(3)) {
        std::swap(in.m[0], in.m[3]);
        std::swap(in.m[1], in.m[4]);
        std::swap(in.m[2], in.m[5]);
    }
    const auto d = [&](std::size_t k) { return in.degree(k); };
    if (d(0) + d(4) != d(1) + d(3) || d(0) + d(5) != d(2) + d(3))
        throw PreconditionError("Bezout input is not homogeneous: need d1 + d5 = d2 + d4 and d1 + d6 = d3 + d4");
    if (d(0) != d(1) || d(1) != d(2) || d(3) != d(4) || d(4) != d(5))
        throw PreconditionError("Bezout formula requires d1 = d2 = d3 >= d4 = d5 = d6");
    const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : pairs) {
        std::vector<std::int64_t> u(b.size());
        for (std::size_t k = 0; k < b.size(); ++k) u[k] = in.m[i][k] + in.m[j + 3][k] - in.m[j][k] - in.m[i + 3][k];
        if (!column_lattice_coordinates(b, u))
            throw PreconditionError("a 2x2 minor of the monomial matrix is not a binomial of the lattice L_B");
    }
    return in;
}

struct BezoutResult {
    PolyMatrix matrix;  // delta x delta over the chow context
    Polynomial determinant;
};

// Bezout polynomial det(...) / ((s - u)(t - v)) expanded against
// (1, v, .., v^{d1-1}, u, uv, .., uv^{d4-1}) x (1, t, .., t^{delta-1}).
inline BezoutResult bezout_matrix(const BConfig& b, const BezoutInput& raw, const ContextPtr& y) {
    const BezoutInput in = validate_bezout(b, raw);
    const std::size_t n = b.size();
    auto names = y->names();
    for (const char* extra : {"s", "t", "u", "v"}) {
        if (y->find(extra)) throw PreconditionError(std::string("variable name '") + extra + "' is reserved");
        names.emplace_back(extra);
    }
    auto big = make_context(names);
    const std::size_t S = 2 * n, T = S + 1, U = S + 2, V = S + 3;
    auto var = [&](std::size_t k) { return Polynomial::variable(big, k); };
    // m_k under x_i -> y_i1 + y_i2 * z
    auto line_image = [&](std::size_t k, std::size_t z) {
        Polynomial r = Polynomial::constant(big, 1);
        for (std::size_t i = 0; i < n; ++i)
            if (in.m[k][i] > 0) r *= (var(2 * i) + var(2 * i + 1) * var(z)).pow(static_cast<unsigned>(in.m[k][i]));
        return r;
    };
    PolyMatrix m3(big, 3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        const Polynomial top_t = line_image(r, T), bot_t = line_image(r + 3, T);
        m3.at(r, 0) = top_t + bot_t * var(S);
        m3.at(r, 1) = top_t + bot_t * var(U);
        m3.at(r, 2) = line_image(r, V) + line_image(r + 3, V) * var(U);
    }
    Polynomial bez = cofactor_determinant(m3);
    auto q = try_exact_divide(bez, (var(S) - var(U)) * (var(T) - var(V)));
    if (!q) throw InexactDivision("Bezout determinant is not divisible by (s - u)(t - v)");
    const std::int64_t d1 = in.degree(0), d4 = in.degree(3), delta = d1 + d4;
    std::vector<std::vector<std::vector<std::pair<std::vector<Exponent>, Integer>>>> cells(
        static_cast<std::size_t>(delta), std::vector<std::vector<std::pair<std::vector<Exponent>, Integer>>>(
                                             static_cast<std::size_t>(delta)));
    for (std::size_t i = 0; i < q->size(); ++i) {
        auto e = q->exponents(i);
        const Exponent es = e[S], et = e[T], eu = e[U], ev = e[V];
        std::int64_t row = -1;
        if (es == 0 && eu == 0 && ev < d1) row = ev;
        if (es == 0 && eu == 1 && ev < d4) row = d1 + ev;
        if (row < 0 || et >= delta) throw InternalError("Bezout polynomial has a term outside the expected basis");
        cells[static_cast<std::size_t>(row)][static_cast<std::size_t>(et)].emplace_back(
            std::vector<Exponent>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(2 * n)), q->coeff(i));
    }
    BezoutResult out{PolyMatrix(y, static_cast<std::size_t>(delta), static_cast<std::size_t>(delta)), Polynomial(y)};
    for (std::size_t r = 0; r < cells.size(); ++r)
        for (std::size_t c = 0; c < cells.size(); ++c) out.matrix.at(r, c) = Polynomial::from_terms(y, std::move(cells[r][c]));
    const std::size_t k = static_cast<std::size_t>(delta) / 2;
    out.determinant = sign_normalized(out.matrix.rows() >= 4 ? block_laplace_determinant(out.matrix, k)
                                                             : determinant(out.matrix));
    return out;
}

inline ChowForm bezout_chow_form(const BConfig& b, const BezoutInput& in, ContextPtr y = nullptr) {
    if (!y) y = chow_context(b.size());
    auto r = bezout_matrix(b, in, y);
    auto st = compute_stats(b);
    return {std::move(r.determinant), 2 * st.degree, st};
}

}  // namespace toric
