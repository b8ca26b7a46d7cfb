#pragma once

// Dual full discriminant, full discriminant (principal A-determinant),
// facet binomials, residual resultant and the A-discriminant, plus the Horn
// implicitization used as an independent pipeline.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chow.hpp"
#include "elimination.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "poly.hpp"
#include "polygon.hpp"

namespace toric {

inline ContextPtr x_context(std::size_t n, const std::vector<std::string>& names = {}) {
    if (names.empty()) return numbered_context("x", n);
    if (names.size() != n)
        throw PreconditionError("expected " + std::to_string(n) + " variable names, got " + std::to_string(names.size()));
    return make_context(names);
}

// h_l: H_l under y_il -> b_il x_i.
inline std::pair<UniPoly, UniPoly> specialized_h(const BConfig& b, const ContextPtr& x) {
    if (x->size() != b.size()) throw PreconditionError("context must have one variable per row of B");
    std::vector<UniPoly> lines;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Polynomial xi = Polynomial::variable(x, i);
        lines.push_back(UniPoly::linear(xi * Integer(b[i][0]), xi * Integer(b[i][1])));
    }
    return binomials_on_lines(b, lines);
}

inline bool has_off_axis_relevant_line(const BConfig& b) {
    for (const auto& l : relevant_lines(b))
        if (l.v[0] != 0 && l.v[1] != 0) return true;
    return false;
}

// Res_t(h1, h2) / (prod det B(r,s)^nu_rs * prod (x_r x_s)^nu_rs), valid when
// every relevant line is a coordinate axis.
inline Polynomial fast_dual_full_discriminant(const BConfig& b, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    if (has_off_axis_relevant_line(b))
        throw PreconditionError("fast dual full discriminant requires that every relevant line is a coordinate axis "
                                "(h1 and h2 share a factor otherwise)");
    const auto st = compute_stats(b);
    auto [h1, h2] = specialized_h(b, x);
    Polynomial res = sylvester_resultant(h1, static_cast<int>(st.beta1), h2, static_cast<int>(st.beta2));
    Integer c(1);
    std::vector<Exponent> mono(b.size(), 0);
    for (const auto& e : st.nu) {
        c *= Integer::pow(Integer(det2(b[e.r], b[e.s])), static_cast<unsigned long>(e.nu));
        mono[e.r] += static_cast<Exponent>(e.nu);
        mono[e.s] += static_cast<Exponent>(e.nu);
    }
    return sign_normalized(exact_divide(res, Polynomial::term(x, mono, c)));
}

// C~_B(b_il x_i). The Chow form is specialized along y_i1 = b_i1 x_i,
// y_i2 = (b_i2 + s) x_i: the bracket factors stay nonzero polynomials in
// (x, s) because rows in opposite open quadrants have b_r1 != b_s1, so the
// quotient of the Chow form theorem can be taken exactly before s = 0.
inline Polynomial dual_full_discriminant(const BConfig& b, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    const auto st = compute_stats(b);
    auto names = x->names();
    std::string sname = "s";
    while (x->find(sname)) sname += "_";
    names.push_back(sname);
    auto xs = make_context(names);
    const std::size_t n = b.size(), S = n;
    const Polynomial s = Polynomial::variable(xs, S);
    std::vector<Polynomial> y1(n, Polynomial(xs)), y2(n, Polynomial(xs));
    std::vector<UniPoly> lines;
    for (std::size_t i = 0; i < n; ++i) {
        const Polynomial xi = Polynomial::variable(xs, i);
        y1[i] = xi * Integer(b[i][0]);
        y2[i] = (Polynomial::constant(xs, b[i][1]) + s) * xi;
        lines.push_back(UniPoly::linear(y1[i], y2[i]));
    }
    auto [h1, h2] = binomials_on_lines(b, lines);
    Polynomial res = sylvester_resultant(h1, static_cast<int>(st.beta1), h2, static_cast<int>(st.beta2));
    auto nu = st.nu;
    std::stable_sort(nu.begin(), nu.end(), [](const NuEntry& a, const NuEntry& c) { return a.nu < c.nu; });
    for (const auto& e : nu) {
        const Polynomial br = y1[e.r] * y2[e.s] - y2[e.r] * y1[e.s];
        for (std::int64_t k = 0; k < e.nu; ++k) res = exact_divide(res, br);
    }
    // Drop every term carrying s.
    PolynomialBuilder out(x);
    for (std::size_t i = 0; i < res.size(); ++i) {
        auto e = res.exponents(i);
        if (e[S] != 0) continue;
        out.push(e.data(), res.coeff(i));
    }
    return sign_normalized(std::move(out).finish());
}

// Literal substitution y_il -> b_il x_i into a computed Chow form.
inline Polynomial dual_full_discriminant_from_chow(const BConfig& b, const Polynomial& chow, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    if (chow.nvars() != 2 * b.size()) throw PreconditionError("Chow form has the wrong number of variables");
    Substitution sub(chow.context(), x);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t l = 0; l < 2; ++l) {
            VariableImage im{Integer(b[i][l]), Integer(1), std::vector<Exponent>(b.size(), 0)};
            im.monomial[i] = 1;
            sub.map(2 * i + l, std::move(im));
        }
    auto r = sub.apply(chow);
    if (!r.denominator.is_one() || !r.denominator_monomial.is_one())
        throw InternalError("polynomial substitution produced a denominator");
    return sign_normalized(std::move(r.numerator));
}

// E_A(x) = (x_1...x_n)^{d_B} E~_B(1/x).
inline Polynomial reciprocity(const Polynomial& f, std::int64_t d) {
    std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
    terms.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto e = f.exponents(i);
        std::vector<Exponent> r(e.size());
        for (std::size_t v = 0; v < e.size(); ++v) {
            r[v] = static_cast<Exponent>(d - e[v]);
            if (r[v] < 0) throw InternalError("reciprocal exponent is negative (degree bound violated)");
        }
        terms.emplace_back(std::move(r), f.coeff(i));
    }
    return Polynomial::from_terms(f.context(), std::move(terms));
}

inline Polynomial full_discriminant_from_dual(const BConfig& b, const Polynomial& dual) {
    if (!is_prime(b)) throw NotPrime();
    return reciprocity(dual, compute_stats(b).degree);
}

inline Polynomial full_discriminant(const BConfig& b, ContextPtr x = nullptr) {
    if (!is_prime(b)) throw NotPrime();
    return full_discriminant_from_dual(b, dual_full_discriminant(b, std::move(x)));
}

// D_v = prod_{c_j<0} c_j^{-c_j} prod_{c_i>0} x_i^{c_i} - prod_{c_i>0} c_i^{c_i} prod_{c_j<0} x_j^{-c_j}
// with c_i = det(b_i, v).
inline Polynomial facet_binomial(const BConfig& b, const RelevantLine& line, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    Integer c_pos(1), c_neg(1);
    std::vector<Exponent> e_pos(b.size(), 0), e_neg(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::int64_t c = det2(b[i], line.v);
        if (c > 0) {
            e_pos[i] = static_cast<Exponent>(c);
            c_pos *= Integer::pow(Integer(c), static_cast<unsigned long>(c));
        } else if (c < 0) {
            e_neg[i] = static_cast<Exponent>(-c);
            c_neg *= Integer::pow(Integer(c), static_cast<unsigned long>(-c));
        }
    }
    return Polynomial::term(x, e_pos, c_neg) - Polynomial::term(x, e_neg, c_pos);
}

// ---------------------------------------------------------------------------
// Residual factors

struct LineMultiplicity {
    std::size_t line = 0;  // index into relevant_lines(B)
    int column = 0;        // l = 0, 1
    std::int64_t expected = 0;  // delta_v * |v_l|
    std::int64_t found = 0;     // by trial division
};

struct ResidualFactors {
    UniPoly p1, p2;
    int degree1 = 0, degree2 = 0;  // formal degrees
    std::vector<LineMultiplicity> multiplicities;
    std::vector<std::string> notes;
};

namespace detail {

// Strips the largest power of the binary form v1 s + v2 t from h (formal
// degree deg); returns the multiplicity.
inline std::int64_t strip_linear_factor(UniPoly& h, int& deg, const Vec2& v) {
    std::int64_t k = 0;
    if (v[1] == 0) {
        // Root at infinity: the top coefficients of the formal degree vanish.
        while (deg > 0 && h.degree() < deg) {
            --deg;
            ++k;
        }
        if (v[0] < 0 && (k & 1)) h = Polynomial::constant(h.context(), -1) * h;
        return k;
    }
    const auto& ctx = h.context();
    const UniPoly lin = UniPoly::linear(Polynomial::constant(ctx, v[0]), Polynomial::constant(ctx, v[1]));
    while (deg > 0 && !h.is_zero()) {
        auto q = try_exact_divide(h, lin);
        if (!q) break;
        h = std::move(*q);
        --deg;
        ++k;
    }
    return k;
}

}  // namespace detail

inline ResidualFactors residual_factors(const BConfig& b, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    if (b.has_zero_row()) throw PreconditionError("the residual resultant requires all rows b_i to be nonzero");
    const auto st = compute_stats(b);
    auto [h1, h2] = specialized_h(b, x);
    ResidualFactors out{std::move(h1), std::move(h2), static_cast<int>(st.beta1), static_cast<int>(st.beta2), {}, {}};
    const auto lines = relevant_lines(b);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& l = lines[k];
        for (int col = 0; col < 2; ++col) {
            UniPoly& p = col == 0 ? out.p1 : out.p2;
            int& deg = col == 0 ? out.degree1 : out.degree2;
            LineMultiplicity m{k, col, l.delta * std::abs(l.v[static_cast<std::size_t>(col)]), 0};
            m.found = detail::strip_linear_factor(p, deg, l.v);
            if (m.found != m.expected)
                out.notes.push_back("line (" + std::to_string(l.v[0]) + "," + std::to_string(l.v[1]) + "), h" +
                                    std::to_string(col + 1) + ": trial division found exponent " +
                                    std::to_string(m.found) + ", formula delta_v*|v_l| gives " +
                                    std::to_string(m.expected));
            out.multiplicities.push_back(m);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// A-discriminant

struct FacetFactor {
    RelevantLine line;
    Polynomial binomial;
    std::int64_t delta = 0;
};

struct DiscriminantBundle {
    Polynomial D_A;             // primitive, sign-normalized; 1 when trivial
    Polynomial r_B;             // residual resultant
    Integer nu{1};              // D_A = (1/nu) x^u r_B(1/x)
    Monomial u;
    std::vector<FacetFactor> facets;
    std::optional<Polynomial> E_dual;  // E~_B
    std::optional<Polynomial> E_A;
    Integer nu_prime{1};        // E_A = nu' x^u' D_A prod prim(D_v)^delta_v
    Monomial u_prime;
    std::vector<std::string> notes;
};

struct DiscriminantOptions {
    bool with_full = true;  // also compute E~_B, E_A and verify the factorization
};

inline DiscriminantBundle a_discriminant(const BConfig& b, ContextPtr x = nullptr, DiscriminantOptions opt = {}) {
    if (!x) x = x_context(b.size());
    if (b.has_zero_row()) throw PreconditionError("the A-discriminant formula requires all rows b_i to be nonzero");
    if (!is_prime(b)) throw NotPrime();
    DiscriminantBundle out{Polynomial::constant(x, 1), Polynomial(x), Integer(1), {}, {}, {}, {}, Integer(1), {}, {}};
    out.u.exponents.assign(b.size(), 0);
    out.u_prime.exponents.assign(b.size(), 0);
    for (const auto& l : relevant_lines(b)) out.facets.push_back({l, facet_binomial(b, l, x), l.delta});

    auto rf = residual_factors(b, x);
    out.notes = rf.notes;
    if (rf.degree1 == 0 && rf.degree2 == 0) {
        out.r_B = Polynomial::constant(x, 1);
    } else {
        out.r_B = sylvester_resultant(rf.p1, rf.degree1, rf.p2, rf.degree2);
        if (out.r_B.is_zero()) throw InternalError("residual resultant vanished: p1 and p2 share a root");
        auto [rec, shift] = reciprocal(out.r_B);
        auto cd = integer_content_and_primitive(rec);
        out.D_A = cd.primitive;
        // rec = +-content * x^m * D_A, so D_A = (1/nu) x^(shift - m) r_B(1/x).
        const bool negated = rec.leading_coeff().sign() < 0;
        out.nu = negated ? -cd.content : cd.content;
        for (std::size_t v = 0; v < b.size(); ++v) out.u.exponents[v] = shift.exponents[v] - cd.monomial.exponents[v];
    }

    if (opt.with_full) {
        out.E_dual = dual_full_discriminant(b, x);
        for (std::size_t v = 0; v < b.size(); ++v)
            if (out.E_dual->min_exponent(v) != 0)
                throw InternalError("dual full discriminant has the monomial factor " + x->name(v));
        out.E_A = full_discriminant_from_dual(b, *out.E_dual);
        Polynomial q = *out.E_A;
        try {
            q = exact_divide(q, out.D_A);
            for (const auto& f : out.facets)
                for (std::int64_t k = 0; k < f.delta; ++k) q = exact_divide(q, primitive_part(f.binomial));
        } catch (const InexactDivision&) {
            throw InternalError("full discriminant is not divisible by D_A times the facet binomials");
        }
        if (!q.is_monomial()) throw InternalError("E_A / (D_A prod D_v^delta_v) is not a monomial");
        out.nu_prime = q.coeff(0);
        auto e = q.exponents(0);
        out.u_prime.exponents.assign(e.begin(), e.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Horn uniformization w_l = prod_i (b_i1 + b_i2 t)^{b_il}

struct LinearFactor {
    Vec2 form;  // b_i1 + b_i2 t
    std::int64_t multiplicity;
};

struct HornCurve {
    // Per coordinate l: numerator factors (b_il > 0) and denominator factors.
    std::array<std::vector<LinearFactor>, 2> numerators, denominators;
    std::array<std::vector<LinearFactor>, 2> reduced_numerators, reduced_denominators;
    ContextPtr w;       // (w1, w2)
    Polynomial delta;   // implicit equation, primitive
    Polynomial lifted;  // Delta(prod x^b_i1, prod x^b_i2), primitive and sign-normalized
};

namespace detail {

inline UniPoly expand_factors(const ContextPtr& ctx, const std::vector<LinearFactor>& fs) {
    UniPoly r = UniPoly::constant(Polynomial::constant(ctx, 1));
    for (const auto& f : fs)
        r = r * UniPoly::linear(Polynomial::constant(ctx, f.form[0]), Polynomial::constant(ctx, f.form[1]))
                    .pow(static_cast<unsigned>(f.multiplicity));
    return r;
}

// Merge proportional forms; returns factors keyed by primitive direction with
// accumulated integer scale.
struct FactorSet {
    std::vector<std::pair<Vec2, std::int64_t>> prim;  // primitive form, multiplicity
    Integer scale{1};
};

inline FactorSet normalize_factors(const std::vector<LinearFactor>& fs) {
    FactorSet out;
    for (const auto& f : fs) {
        Vec2 p = primitive_direction(f.form);
        if (p[1] < 0 || (p[1] == 0 && p[0] < 0)) p = {-p[0], -p[1]};
        const std::int64_t c = f.form[0] != 0 ? f.form[0] / p[0] : f.form[1] / p[1];
        out.scale *= Integer::pow(Integer(c), static_cast<unsigned long>(f.multiplicity));
        auto it = std::find_if(out.prim.begin(), out.prim.end(), [&](const auto& q) { return q.first == p; });
        if (it == out.prim.end())
            out.prim.push_back({p, f.multiplicity});
        else
            it->second += f.multiplicity;
    }
    return out;
}

}  // namespace detail

inline HornCurve horn_implicitize(const BConfig& b, ContextPtr x = nullptr) {
    if (!x) x = x_context(b.size());
    if (b.has_zero_row()) throw PreconditionError("the Horn uniformization requires all rows b_i to be nonzero");
    HornCurve hc;
    hc.w = make_context({"w1", "w2"});
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t l = 0; l < 2; ++l) {
            const std::int64_t e = b[i][l];
            if (e > 0) hc.numerators[l].push_back({b[i], e});
            if (e < 0) hc.denominators[l].push_back({b[i], -e});
        }
    std::array<UniPoly, 2> eq{UniPoly(hc.w), UniPoly(hc.w)};
    for (std::size_t l = 0; l < 2; ++l) {
        // Cancel linear factors common to numerator and denominator. Constant
        // factors (forms with b_i2 = 0) are kept as they are.
        auto num = detail::normalize_factors(hc.numerators[l]);
        auto den = detail::normalize_factors(hc.denominators[l]);
        for (auto& [p, m] : num.prim) {
            if (p[1] == 0) continue;
            auto it = std::find_if(den.prim.begin(), den.prim.end(), [&](const auto& q) { return q.first == p; });
            if (it == den.prim.end()) continue;
            const std::int64_t c = std::min(m, it->second);
            m -= c;
            it->second -= c;
        }
        auto rebuild = [](const detail::FactorSet& s) {
            std::vector<LinearFactor> out;
            for (const auto& [p, m] : s.prim)
                if (m > 0) out.push_back({p, m});
            return out;
        };
        hc.reduced_numerators[l] = rebuild(num);
        hc.reduced_denominators[l] = rebuild(den);
        // w_l * M_l - N_l with the integer scales carried along.
        const Polynomial wl = Polynomial::variable(hc.w, l);
        UniPoly N = detail::expand_factors(hc.w, hc.reduced_numerators[l]);
        UniPoly M = detail::expand_factors(hc.w, hc.reduced_denominators[l]);
        eq[l] = (wl * Polynomial::constant(hc.w, den.scale)) * M - Polynomial::constant(hc.w, num.scale) * N;
    }
    if (eq[0].degree() == 0 && eq[1].degree() == 0) {
        // w(t) is constant: the image is a point, not a curve.
        hc.delta = Polynomial::constant(hc.w, 1);
        hc.lifted = Polynomial::constant(x, 1);
        return hc;
    }
    Polynomial res = sylvester_resultant(eq[0], eq[1]);
    if (res.is_zero()) throw InternalError("Horn resultant vanished identically");
    hc.delta = primitive_part(res);
    // Lift w_l -> prod x_i^{b_il}.
    Substitution sub(hc.w, x);
    for (std::size_t l = 0; l < 2; ++l) {
        VariableImage im{Integer(1), Integer(1), std::vector<Exponent>(b.size(), 0)};
        for (std::size_t i = 0; i < b.size(); ++i) im.monomial[i] = static_cast<Exponent>(b[i][l]);
        sub.map(l, std::move(im));
    }
    hc.lifted = primitive_part(sub.apply(hc.delta).numerator);
    return hc;
}

// ---------------------------------------------------------------------------
// Points of the discriminant locus

// Integer n x 2 matrix C with B^T C = I.
inline std::vector<Vec2> integer_right_inverse(const BConfig& b) {
    if (!is_prime(b)) throw NotPrime();
    const std::size_t n = b.size();
    // Column operations on [B^T; I] until B^T = [H 0].
    std::vector<std::vector<mpz_class>> a(2 + n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        a[0][i] = static_cast<long>(b[i][0]);
        a[1][i] = static_cast<long>(b[i][1]);
        a[2 + i][i] = 1;
    }
    for (std::size_t r = 0; r < 2; ++r) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t j = r; j < n; ++j)
                if (a[r][j] != 0 && (!best || abs(a[r][j]) < abs(a[r][*best]))) best = j;
            if (!best) throw InternalError("B has rank < 2");
            for (auto& row : a) std::swap(row[r], row[*best]);
            bool done = true;
            for (std::size_t j = r + 1; j < n; ++j) {
                if (a[r][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][r].get_mpz_t());
                for (auto& row : a) row[j] -= q * row[r];
                if (a[r][j] != 0) done = false;
            }
            if (done) break;
        }
    }
    // H = [[h00, 0], [h10, h11]] is unimodular; C = U[:, 0..1] H^{-1}.
    const mpz_class h00 = a[0][0], h10 = a[1][0], h11 = a[1][1];
    if (abs(h00) != 1 || abs(h11) != 1) throw InternalError("rows of B do not span Z^2");
    // H^{-1} = [[1/h00, 0], [-h10/(h00 h11), 1/h11]]
    const mpz_class i00 = h00, i10 = -h10 * h00 * h11, i11 = h11;
    std::vector<Vec2> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const mpz_class& u0 = a[2 + i][0];
        const mpz_class& u1 = a[2 + i][1];
        c[i] = {detail::to_int64(u0 * i00 + u1 * i10), detail::to_int64(u1 * i11)};
    }
    return c;
}

// Horn uniformization w_l(t) = prod_i (b_i1 + b_i2 t)^{b_il}; nullopt when t
// hits a root of some factor.
inline std::optional<std::array<mpq_class, 2>> horn_point(const BConfig& b, const mpq_class& t) {
    std::array<mpq_class, 2> w{mpq_class(1), mpq_class(1)};
    for (std::size_t i = 0; i < b.size(); ++i) {
        const mpq_class f = mpq_class(static_cast<long>(b[i][0])) + mpq_class(static_cast<long>(b[i][1])) * t;
        if (f == 0) return std::nullopt;
        for (std::size_t l = 0; l < 2; ++l) {
            const std::int64_t e = b[i][l];
            for (std::int64_t k = 0; k < std::abs(e); ++k) w[l] = e > 0 ? mpq_class(w[l] * f) : mpq_class(w[l] / f);
        }
    }
    return w;
}

// A point x of the torus with (prod x^b_i1, prod x^b_i2) = w(t), moved along
// the torus orbit given by the rows of A with parameters s_j.
inline std::optional<std::vector<mpq_class>> discriminant_locus_point(const BConfig& b, const mpq_class& t,
                                                                      const std::vector<mpq_class>& s) {
    auto w = horn_point(b, t);
    if (!w) return std::nullopt;
    const auto c = integer_right_inverse(b);
    const auto a = gale_dual_a(b);
    if (s.size() != a.rows.size()) throw PreconditionError("need one torus parameter per row of A");
    auto ipow = [](const mpq_class& base, std::int64_t e) {
        mpq_class r(1);
        for (std::int64_t k = 0; k < std::abs(e); ++k) r *= base;
        return e >= 0 ? r : mpq_class(1 / r);
    };
    std::vector<mpq_class> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        x[i] = ipow((*w)[0], c[i][0]) * ipow((*w)[1], c[i][1]);
        for (std::size_t j = 0; j < s.size(); ++j) x[i] *= ipow(s[j], a.rows[j][i]);
    }
    return x;
}

}  // namespace toric
