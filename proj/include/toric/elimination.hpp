#pragma once

// Univariate polynomials over Z[x1..xn], polynomial matrices, fraction-free
// determinants and Sylvester resultants.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <unordered_map>
#include <optional>
#include <utility>
#include <vector>

#include "cancel.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace toric {

// Dense polynomial in an auxiliary variable t; coefficient k multiplies t^k.
class UniPoly {
public:
    explicit UniPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    UniPoly(ContextPtr ctx, std::vector<Polynomial> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (!same_context(c.context(), ctx_)) throw ContextMismatch();
        trim();
    }
    static UniPoly constant(const Polynomial& c) { return UniPoly(c.context(), {c}); }
    // a + b*t
    static UniPoly linear(const Polynomial& a, const Polynomial& b) { return UniPoly(a.context(), {a, b}); }

    const ContextPtr& context() const noexcept { return ctx_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Polynomial>& coefficients() const noexcept { return c_; }
    Polynomial coeff(int k) const {
        if (k < 0 || k > degree()) return Polynomial(ctx_);
        return c_[static_cast<std::size_t>(k)];
    }
    const Polynomial& leading() const { return c_.back(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) { return combine(a, b, false); }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return combine(a, b, true); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (!same_context(a.ctx_, b.ctx_)) throw ContextMismatch();
        if (a.is_zero() || b.is_zero()) return UniPoly(a.ctx_);
        std::vector<Polynomial> r(a.c_.size() + b.c_.size() - 1, Polynomial(a.ctx_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(a.ctx_, std::move(r));
    }
    friend UniPoly operator*(const Polynomial& s, const UniPoly& a) {
        std::vector<Polynomial> r;
        r.reserve(a.c_.size());
        for (const auto& c : a.c_) r.push_back(s * c);
        return UniPoly(a.ctx_, std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return same_context(a.ctx_, b.ctx_) && a.c_ == b.c_;
    }

    UniPoly pow(unsigned e) const {
        UniPoly result = constant(Polynomial::constant(ctx_, 1)), base = *this;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    // Applies fn to every coefficient.
    template <class F>
    UniPoly map_coefficients(F&& fn, ContextPtr target = nullptr) const {
        std::vector<Polynomial> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(fn(c));
        return UniPoly(target ? std::move(target) : ctx_, std::move(r));
    }

private:
    static UniPoly combine(const UniPoly& a, const UniPoly& b, bool subtract) {
        if (!same_context(a.ctx_, b.ctx_)) throw ContextMismatch();
        std::vector<Polynomial> r(std::max(a.c_.size(), b.c_.size()), Polynomial(a.ctx_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = subtract ? r[i] - b.c_[i] : r[i] + b.c_[i];
        return UniPoly(a.ctx_, std::move(r));
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    ContextPtr ctx_;
    std::vector<Polynomial> c_;
};

// Exact quotient f / g over Z[x][t], or nullopt.
inline std::optional<UniPoly> try_exact_divide(const UniPoly& f, const UniPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (f.is_zero()) return UniPoly(f.context());
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<Polynomial> r = f.coefficients();
    std::vector<Polynomial> q(static_cast<std::size_t>(f.degree() - g.degree() + 1), Polynomial(f.context()));
    for (int k = f.degree(); k >= g.degree(); --k) {
        auto& top = r[static_cast<std::size_t>(k)];
        if (top.is_zero()) continue;
        auto qk = try_exact_divide(top, g.leading());
        if (!qk) return std::nullopt;
        const int shift = k - g.degree();
        for (int j = 0; j <= g.degree(); ++j) {
            const auto& gj = g.coefficients()[static_cast<std::size_t>(j)];
            if (!gj.is_zero()) r[static_cast<std::size_t>(j + shift)] -= *qk * gj;
        }
        q[static_cast<std::size_t>(shift)] = std::move(*qk);
    }
    for (const auto& x : r)
        if (!x.is_zero()) return std::nullopt;
    return UniPoly(f.context(), std::move(q));
}

class PolyMatrix {
public:
    PolyMatrix(ContextPtr ctx, std::size_t rows, std::size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, Polynomial(ctx_)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const ContextPtr& context() const noexcept { return ctx_; }
    Polynomial& at(std::size_t i, std::size_t j) { return a_.at(i * cols_ + j); }
    const Polynomial& at(std::size_t i, std::size_t j) const { return a_.at(i * cols_ + j); }
    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(a_[i * cols_ + j], a_[k * cols_ + j]);
    }

private:
    ContextPtr ctx_;
    std::size_t rows_, cols_;
    std::vector<Polynomial> a_;
};

// Laplace expansion along the first row. Exponential; intended for n <= 4.
inline Polynomial cofactor_determinant(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    if (n == 0) return Polynomial::constant(m.context(), 1);
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    Polynomial det(m.context());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor(m.context(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor.at(r - 1, cc++) = m.at(r, c);
        Polynomial term = m.at(0, j) * cofactor_determinant(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

// Fraction-free Gaussian elimination (Bareiss). Each step divides exactly by
// the previous pivot; pivots are chosen as the nonzero entry with the fewest
// terms in the current column. Matrices of size <= 3 use cofactor expansion.
inline Polynomial determinant(PolyMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    if (n <= 3) return cofactor_determinant(m);
    bool negate = false;
    Polynomial prev = Polynomial::constant(m.context(), 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        check_cancelled();
        std::size_t best = n;
        for (std::size_t i = k; i < n; ++i)
            if (!m.at(i, k).is_zero() && (best == n || m.at(i, k).size() < m.at(best, k).size())) best = i;
        if (best == n) return Polynomial(m.context());
        if (best != k) {
            m.swap_rows(best, k);
            negate = !negate;
        }
        const Polynomial& pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                check_cancelled();
                Polynomial num = pivot * m.at(i, j);
                if (!m.at(i, k).is_zero() && !m.at(k, j).is_zero()) num -= m.at(i, k) * m.at(k, j);
                m.at(i, j) = prev.is_one() ? std::move(num) : exact_divide(num, prev);
            }
            m.at(i, k) = Polynomial(m.context());
        }
        prev = pivot;
    }
    Polynomial d = m.at(n - 1, n - 1);
    return negate ? -d : d;
}

// Sylvester matrix of f and g with formal degrees df >= deg f, dg >= deg g.
// Rows 0..dg-1 carry shifted coefficients of f (highest first), rows
// dg..dg+df-1 those of g.
inline PolyMatrix sylvester_matrix(const UniPoly& f, int df, const UniPoly& g, int dg) {
    if (!same_context(f.context(), g.context())) throw ContextMismatch();
    if (df < f.degree() || dg < g.degree()) throw PreconditionError("formal degree below actual degree");
    const std::size_t n = static_cast<std::size_t>(df + dg);
    PolyMatrix m(f.context(), n, n);
    for (int i = 0; i < dg; ++i)
        for (int k = 0; k <= df; ++k) m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i + df - k)) = f.coeff(k);
    for (int i = 0; i < df; ++i)
        for (int k = 0; k <= dg; ++k)
            m.at(static_cast<std::size_t>(dg + i), static_cast<std::size_t>(i + dg - k)) = g.coeff(k);
    return m;
}

namespace detail {

// All maximal minors of rows [r0, r0+k) of m, keyed by column bitmask.
// Built row by row, expanding along the last row added.
inline std::unordered_map<std::uint32_t, Polynomial> row_block_minors(const PolyMatrix& m, std::size_t r0,
                                                                      std::size_t k) {
    std::unordered_map<std::uint32_t, Polynomial> layer;
    layer.emplace(0u, Polynomial::constant(m.context(), 1));
    for (std::size_t r = 0; r < k; ++r) {
        check_cancelled();
        std::unordered_map<std::uint32_t, Polynomial> next;
        for (const auto& [mask, minor] : layer) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (mask >> j & 1u) continue;
                const Polynomial& a = m.at(r0 + r, j);
                if (a.is_zero()) continue;
                // Column j lands at position pos within mask | bit(j); the new
                // row is last, so the cofactor sign is (-1)^(r + pos).
                const int pos = __builtin_popcount(mask & ((1u << j) - 1u));
                Polynomial term = a * minor;
                auto [it, inserted] = next.try_emplace(mask | (1u << j), m.context());
                if ((r + static_cast<std::size_t>(pos)) % 2 == 0)
                    it->second += term;
                else
                    it->second -= term;
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        layer = std::move(next);
    }
    return layer;
}

inline double binomial(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace detail

// Generalized Laplace expansion along the first k rows:
// det M = sum over k-subsets S of columns of
// (-1)^(0+..+k-1 + sum S) * minor(top, S) * minor(bottom, complement S).
// Efficient when both row blocks are sparse, as in a Sylvester matrix, whose
// blocks each involve the coefficients of one polynomial only.
inline Polynomial block_laplace_determinant(const PolyMatrix& m, std::size_t k) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    if (n > 31) throw PreconditionError("block Laplace expansion supports at most 31 columns");
    if (k == 0 || k >= n) return determinant(m);
    auto top = detail::row_block_minors(m, 0, k);
    auto bottom = detail::row_block_minors(m, k, n - k);
    const std::uint32_t full = (1u << n) - 1u;
    Polynomial det(m.context());
    const std::size_t base = k * (k - 1) / 2;
    for (const auto& [mask, minor] : top) {
        check_cancelled();
        auto it = bottom.find(full & ~mask);
        if (it == bottom.end()) continue;
        std::size_t colsum = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1u) colsum += j;
        Polynomial term = minor * it->second;
        if ((base + colsum) % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

// Res_t(f, g) with the given formal degrees; equals
// lc(f)^dg * prod g(root of f) when the degrees are attained.
inline Polynomial sylvester_resultant(const UniPoly& f, int df, const UniPoly& g, int dg) {
    if (df <= 0 && dg <= 0) throw DegenerateResultant();
    if (df == 0) return f.coeff(0).pow(static_cast<unsigned>(dg));
    if (dg == 0) return g.coeff(0).pow(static_cast<unsigned>(df));
    const std::size_t n = static_cast<std::size_t>(df + dg);
    if (n <= 24 && detail::binomial(n, static_cast<std::size_t>(dg)) <= 1e5)
        return block_laplace_determinant(sylvester_matrix(f, df, g, dg), static_cast<std::size_t>(dg));
    return determinant(sylvester_matrix(f, df, g, dg));
}

inline Polynomial sylvester_resultant(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() || g.is_zero()) return Polynomial(f.context());
    return sylvester_resultant(f, f.degree(), g, g.degree());
}

}  // namespace toric
