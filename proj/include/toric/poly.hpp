#pragma once

// Sparse multivariate Laurent polynomials with arbitrary-precision integer
// coefficients.
//
// Terms are kept sorted in descending graded-lexicographic order (total degree
// first, then x1 > x2 > ...). Inner loops of multiplication and division work
// on exponent vectors packed into 128-bit keys whose integer order is the
// graded-lex order; when a layout does not fit, a vector-keyed fallback with
// the same interface is used.

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cancel.hpp"
#include "errors.hpp"
#include "integer.hpp"

namespace toric {

using Exponent = std::int32_t;

class VariableContext {
public:
    explicit VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw PreconditionError("empty variable name");
            if (!index_.emplace(names_[i], i).second)
                throw PreconditionError("duplicate variable name '" + names_[i] + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(std::string_view n) const {
        auto it = index_.find(std::string(n));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index(std::string_view n) const {
        if (auto i = find(n)) return *i;
        throw PreconditionError("unknown variable '" + std::string(n) + "'");
    }

    friend bool operator==(const VariableContext& a, const VariableContext& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

inline ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VariableContext>(std::move(names));
}

// prefix1, prefix2, ..., prefixN
inline ContextPtr numbered_context(std::string_view prefix, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
    return make_context(std::move(names));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
    return a == b || (a && b && *a == *b);
}

struct Monomial {
    std::vector<Exponent> exponents;

    std::int64_t degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), std::int64_t{0});
    }
    bool is_one() const {
        return std::all_of(exponents.begin(), exponents.end(), [](Exponent e) { return e == 0; });
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

namespace detail {

inline std::int64_t degree_of(const Exponent* e, std::size_t n) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < n; ++i) d += e[i];
    return d;
}

// Three-way graded-lex comparison.
inline int grlex_compare(const Exponent* a, const Exponent* b, std::size_t n) {
    std::int64_t da = degree_of(a, n), db = degree_of(b, n);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

// Box of exponent values (per variable) and total degrees a key must hold.
struct ExponentBox {
    std::vector<std::int64_t> lo, hi;
    std::int64_t dlo = 0, dhi = 0;
};

class PackedCodec {
public:
    using Key = unsigned __int128;

    static std::optional<PackedCodec> make(const ExponentBox& box) {
        PackedCodec c;
        const std::size_t n = box.lo.size();
        c.shift_.resize(n);
        c.mask_.resize(n);
        int bits = 0;
        for (std::size_t i = n; i-- > 0;) {
            int w = width(box.hi[i] - box.lo[i]);
            if (w > 60) return std::nullopt;
            c.shift_[i] = bits;
            c.mask_[i] = w == 0 ? 0 : ((std::uint64_t{1} << w) - 1);
            bits += w;
            if (bits > 120) return std::nullopt;
        }
        c.dshift_ = bits;
        bits += width(box.dhi - box.dlo);
        if (bits > 127) return std::nullopt;
        return c;
    }

    Key encode(const Exponent* e, const std::int64_t* base, std::int64_t dbase) const {
        const std::size_t n = shift_.size();
        std::int64_t d = 0;
        Key k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            d += e[i];
            k |= static_cast<Key>(static_cast<std::uint64_t>(e[i] - base[i])) << shift_[i];
        }
        k |= static_cast<Key>(static_cast<std::uint64_t>(d - dbase)) << dshift_;
        return k;
    }
    void decode(const Key& k, const std::int64_t* base, Exponent* out) const {
        const std::size_t n = shift_.size();
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<Exponent>(static_cast<std::int64_t>(static_cast<std::uint64_t>(k >> shift_[i]) & mask_[i]) +
                                           base[i]);
    }
    static Key add(const Key& a, const Key& b) { return a + b; }
    static std::size_t hash(const Key& k) {
        std::uint64_t lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6) + (lo >> 2));
        h ^= h >> 29;
        h *= 0xBF58476D1CE4E5B9ull;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }

private:
    static int width(std::int64_t range) {
        int w = 0;
        while (range > 0) {
            ++w;
            range >>= 1;
        }
        return w;
    }
    std::vector<int> shift_;
    std::vector<std::uint64_t> mask_;
    int dshift_ = 0;
};

// Fallback codec: keys are (degree, e1, ..., en) vectors of raw values.
class WideCodec {
public:
    using Key = std::vector<std::int64_t>;

    explicit WideCodec(std::size_t n) : n_(n) {}

    Key encode(const Exponent* e, const std::int64_t*, std::int64_t) const {
        Key k(n_ + 1);
        k[0] = degree_of(e, n_);
        for (std::size_t i = 0; i < n_; ++i) k[i + 1] = e[i];
        return k;
    }
    void decode(const Key& k, const std::int64_t*, Exponent* out) const {
        for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<Exponent>(k[i + 1]);
    }
    static Key add(const Key& a, const Key& b) {
        Key r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    static std::size_t hash(const Key& k) {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }

private:
    std::size_t n_;
};

// Packed codec when the box fits, wide codec otherwise. The wide codec
// ignores bases, so callers must pass consistent bases either way.
template <class F>
decltype(auto) with_codec(const ExponentBox& box, F&& f) {
    if (auto packed = PackedCodec::make(box)) return f(*packed);
    WideCodec wide(box.lo.size());
    return f(wide);
}

// Open-addressing map from keys to dense indices.
template <class Codec>
class KeyTable {
public:
    using Key = typename Codec::Key;
    static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

    explicit KeyTable(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < 2 * expected) cap <<= 1;
        slots_.assign(cap, kEmpty);
        slot_keys_.resize(cap);
        mask_ = cap - 1;
    }

    // Returns the index stored for k, or inserts `fresh` and returns it.
    std::pair<std::uint32_t, bool> find_or_insert(const Key& k, std::uint32_t fresh) {
        if (2 * (count_ + 1) > slots_.size()) grow();
        std::size_t p = Codec::hash(k) & mask_;
        while (slots_[p] != kEmpty) {
            if (slot_keys_[p] == k) return {slots_[p], false};
            p = (p + 1) & mask_;
        }
        slots_[p] = fresh;
        slot_keys_[p] = k;
        ++count_;
        return {fresh, true};
    }

private:
    void grow() {
        std::vector<std::uint32_t> old_slots(slots_.size() * 2, kEmpty);
        std::vector<Key> old_keys(slots_.size() * 2);
        std::swap(old_slots, slots_);
        std::swap(old_keys, slot_keys_);
        mask_ = slots_.size() - 1;
        for (std::size_t i = 0; i < old_slots.size(); ++i) {
            if (old_slots[i] == kEmpty) continue;
            std::size_t p = Codec::hash(old_keys[i]) & mask_;
            while (slots_[p] != kEmpty) p = (p + 1) & mask_;
            slots_[p] = old_slots[i];
            slot_keys_[p] = std::move(old_keys[i]);
        }
    }

    std::vector<std::uint32_t> slots_;
    std::vector<Key> slot_keys_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
};

}  // namespace detail

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)), nvars_(ctx_ ? ctx_->size() : 0) {}

    static Polynomial constant(ContextPtr ctx, Integer c) {
        Polynomial p(std::move(ctx));
        if (!c.is_zero()) {
            p.exps_.assign(p.nvars_, 0);
            p.coeffs_.push_back(std::move(c));
        }
        return p;
    }
    static Polynomial variable(ContextPtr ctx, std::size_t index) {
        Polynomial p(std::move(ctx));
        if (index >= p.nvars_) throw PreconditionError("variable index out of range");
        p.exps_.assign(p.nvars_, 0);
        p.exps_[index] = 1;
        p.coeffs_.emplace_back(1);
        return p;
    }
    static Polynomial variable(const ContextPtr& ctx, std::string_view name) { return variable(ctx, ctx->index(name)); }
    static Polynomial term(ContextPtr ctx, std::span<const Exponent> e, Integer c) {
        Polynomial p(std::move(ctx));
        if (e.size() != p.nvars_) throw PreconditionError("exponent vector length does not match context");
        if (!c.is_zero()) {
            p.exps_.assign(e.begin(), e.end());
            p.coeffs_.push_back(std::move(c));
        }
        return p;
    }
    // Combines like terms, drops zeros and sorts.
    static Polynomial from_terms(ContextPtr ctx, std::vector<std::pair<std::vector<Exponent>, Integer>> terms);

    const ContextPtr& context() const noexcept { return ctx_; }
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const {
        return is_zero() || (size() == 1 && std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; }));
    }
    bool is_monomial() const noexcept { return size() == 1; }
    bool is_one() const { return is_constant() && !is_zero() && coeffs_[0].is_one(); }

    std::span<const Exponent> exponents(std::size_t i) const { return {exps_.data() + i * nvars_, nvars_}; }
    const Integer& coeff(std::size_t i) const { return coeffs_[i]; }
    const Integer& leading_coeff() const { return coeffs_.front(); }
    Monomial leading_monomial() const {
        auto e = exponents(0);
        return Monomial{{e.begin(), e.end()}};
    }

    std::int64_t total_degree() const { return is_zero() ? -1 : detail::degree_of(exps_.data(), nvars_); }
    std::int64_t min_total_degree() const {
        if (is_zero()) return -1;
        return detail::degree_of(exps_.data() + (size() - 1) * nvars_, nvars_);
    }
    bool is_homogeneous() const { return is_zero() || total_degree() == min_total_degree(); }
    Exponent max_exponent(std::size_t var) const {
        Exponent m = std::numeric_limits<Exponent>::min();
        for (std::size_t i = 0; i < size(); ++i) m = std::max(m, exps_[i * nvars_ + var]);
        return is_zero() ? 0 : m;
    }
    Exponent min_exponent(std::size_t var) const {
        Exponent m = std::numeric_limits<Exponent>::max();
        for (std::size_t i = 0; i < size(); ++i) m = std::min(m, exps_[i * nvars_ + var]);
        return is_zero() ? 0 : m;
    }
    bool is_polynomial() const {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e >= 0; });
    }

    // Coefficient of the monomial x^e (zero when absent).
    Integer coefficient_of(std::span<const Exponent> e) const {
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            int c = detail::grlex_compare(exps_.data() + mid * nvars_, e.data(), nvars_);
            if (c == 0) return coeffs_[mid];
            if (c > 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return Integer(0);
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& c : r.coeffs_) c.negate();
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = merge(*this, o, false); }
    Polynomial& operator-=(const Polynomial& o) { return *this = merge(*this, o, true); }
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Integer& c) {
        if (c.is_zero()) {
            exps_.clear();
            coeffs_.clear();
        } else {
            for (auto& x : coeffs_) x *= c;
        }
        return *this;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Integer& c) { return a *= c; }
    friend Polynomial operator*(const Integer& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_ || !same_context(a.ctx_, b.ctx_)) return false;
        return a.exps_ == b.exps_ && a.coeffs_ == b.coeffs_;
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(ctx_, 1), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    // Multiplies by c * x^shift; term order is preserved.
    Polynomial shifted(std::span<const Exponent> shift, const Integer& c = Integer(1)) const {
        Polynomial r(ctx_);
        if (c.is_zero() || is_zero()) return r;
        r.exps_ = exps_;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t v = 0; v < nvars_; ++v) r.exps_[i * nvars_ + v] += shift[v];
        r.coeffs_ = coeffs_;
        if (!c.is_one())
            for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    // Same terms under a context with the same number of variables.
    Polynomial renamed(ContextPtr other) const {
        if (!other || other->size() != nvars_) throw PreconditionError("renaming requires equal variable counts");
        Polynomial r(*this);
        r.ctx_ = std::move(other);
        return r;
    }

    // Moves terms into `target`: source variable i becomes target variable
    // var_map[i]. Source variables mapped to npos must not occur.
    Polynomial embedded(ContextPtr target, std::span<const std::size_t> var_map) const {
        std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
        terms.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) {
            std::vector<Exponent> e(target->size(), 0);
            for (std::size_t v = 0; v < nvars_; ++v) {
                Exponent x = exps_[i * nvars_ + v];
                if (x == 0) continue;
                if (var_map[v] == npos)
                    throw PreconditionError("variable '" + ctx_->name(v) + "' has no image in the target context");
                e[var_map[v]] += x;
            }
            terms.emplace_back(std::move(e), coeffs_[i]);
        }
        return from_terms(std::move(target), std::move(terms));
    }
    // Embedding by variable name.
    Polynomial embedded(const ContextPtr& target) const {
        std::vector<std::size_t> map(nvars_);
        for (std::size_t v = 0; v < nvars_; ++v) map[v] = target->find(ctx_->name(v)).value_or(npos);
        return embedded(target, map);
    }

    std::string to_string() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract);
    friend Polynomial exact_divide(const Polynomial& f, const Polynomial& g);
    friend std::optional<Polynomial> try_exact_divide(const Polynomial& f, const Polynomial& g);
    friend class PolynomialBuilder;

    detail::ExponentBox box() const {
        detail::ExponentBox b;
        b.lo.assign(nvars_, std::numeric_limits<std::int64_t>::max());
        b.hi.assign(nvars_, std::numeric_limits<std::int64_t>::min());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t v = 0; v < nvars_; ++v) {
                std::int64_t e = exps_[i * nvars_ + v];
                b.lo[v] = std::min(b.lo[v], e);
                b.hi[v] = std::max(b.hi[v], e);
            }
        b.dlo = min_total_degree();
        b.dhi = total_degree();
        return b;
    }

    ContextPtr ctx_;
    std::size_t nvars_ = 0;
    std::vector<Exponent> exps_;
    std::vector<Integer> coeffs_;
};

// Assembles a polynomial from terms already known to be distinct and in
// descending graded-lex order.
class PolynomialBuilder {
public:
    explicit PolynomialBuilder(ContextPtr ctx) : p_(std::move(ctx)) {}
    void reserve(std::size_t n) {
        p_.exps_.reserve(n * p_.nvars_);
        p_.coeffs_.reserve(n);
    }
    void push(const Exponent* e, Integer c) {
        if (c.is_zero()) return;
        p_.exps_.insert(p_.exps_.end(), e, e + p_.nvars_);
        p_.coeffs_.push_back(std::move(c));
    }
    Polynomial finish() && { return std::move(p_); }

private:
    Polynomial p_;
};

inline void require_same_context(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars() || !same_context(a.context(), b.context())) throw ContextMismatch();
}

inline Polynomial Polynomial::merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    require_same_context(a, b);
    const std::size_t n = a.nvars_;
    PolynomialBuilder out(a.ctx_);
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size())
            c = -1;
        else if (j == b.size())
            c = 1;
        else
            c = detail::grlex_compare(a.exps_.data() + i * n, b.exps_.data() + j * n, n);
        if (c > 0) {
            out.push(a.exps_.data() + i * n, a.coeffs_[i]);
            ++i;
        } else if (c < 0) {
            out.push(b.exps_.data() + j * n, subtract ? -b.coeffs_[j] : b.coeffs_[j]);
            ++j;
        } else {
            Integer s = a.coeffs_[i];
            if (subtract)
                s -= b.coeffs_[j];
            else
                s += b.coeffs_[j];
            out.push(a.exps_.data() + i * n, std::move(s));
            ++i;
            ++j;
        }
    }
    return std::move(out).finish();
}

inline Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<std::pair<std::vector<Exponent>, Integer>> terms) {
    const std::size_t n = ctx->size();
    for (auto& t : terms)
        if (t.first.size() != n) throw PreconditionError("exponent vector length does not match context");
    std::sort(terms.begin(), terms.end(), [n](const auto& x, const auto& y) {
        return detail::grlex_compare(x.first.data(), y.first.data(), n) > 0;
    });
    PolynomialBuilder out(ctx);
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        Integer c = terms[i].second;
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j].first == terms[i].first) c += terms[j++].second;
        out.push(terms[i].first.data(), std::move(c));
        i = j;
    }
    return std::move(out).finish();
}

inline Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    require_same_context(f, g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.ctx_);
    if (f.size() == 1) return g.shifted(f.exponents(0), f.coeffs_[0]);
    if (g.size() == 1) return f.shifted(g.exponents(0), g.coeffs_[0]);
    const std::size_t n = f.nvars_;
    const auto fb = f.box(), gb = g.box();
    detail::ExponentBox rb;
    rb.lo.resize(n);
    rb.hi.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        rb.lo[v] = fb.lo[v] + gb.lo[v];
        rb.hi[v] = fb.hi[v] + gb.hi[v];
    }
    rb.dlo = fb.dlo + gb.dlo;
    rb.dhi = fb.dhi + gb.dhi;
    const Polynomial& outer = f.size() <= g.size() ? f : g;
    const Polynomial& inner = f.size() <= g.size() ? g : f;
    const auto& ob = &outer == &f ? fb : gb;
    const auto& ib = &outer == &f ? gb : fb;

    return detail::with_codec(rb, [&](const auto& codec) {
        using Codec = std::decay_t<decltype(codec)>;
        using Key = typename Codec::Key;
        std::vector<Key> ik(inner.size());
        for (std::size_t j = 0; j < inner.size(); ++j)
            ik[j] = codec.encode(inner.exps_.data() + j * n, ib.lo.data(), ib.dlo);
        detail::KeyTable<Codec> table(std::min(outer.size() * inner.size(), 4 * (outer.size() + inner.size()) + 1024));
        std::vector<Key> keys;
        std::vector<Integer> acc;
        for (std::size_t i = 0; i < outer.size(); ++i) {
            if ((i & 63) == 0) check_cancelled();
            const Key ok = codec.encode(outer.exps_.data() + i * n, ob.lo.data(), ob.dlo);
            const Integer& oc = outer.coeffs_[i];
            for (std::size_t j = 0; j < inner.size(); ++j) {
                Key k = Codec::add(ok, ik[j]);
                auto [id, fresh] = table.find_or_insert(k, static_cast<std::uint32_t>(acc.size()));
                if (fresh) {
                    keys.push_back(std::move(k));
                    acc.push_back(oc * inner.coeffs_[j]);
                } else {
                    acc[id].addmul(oc, inner.coeffs_[j]);
                }
            }
        }
        std::vector<std::uint32_t> order;
        order.reserve(acc.size());
        for (std::uint32_t i = 0; i < acc.size(); ++i)
            if (!acc[i].is_zero()) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return keys[b] < keys[a]; });
        PolynomialBuilder out(f.ctx_);
        out.reserve(order.size());
        std::vector<Exponent> e(n);
        for (auto id : order) {
            codec.decode(keys[id], rb.lo.data(), e.data());
            out.push(e.data(), std::move(acc[id]));
        }
        return std::move(out).finish();
    });
}

inline Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

// Exact quotient f / g in the Laurent ring, or nullopt when none exists.
inline std::optional<Polynomial> try_exact_divide(const Polynomial& f, const Polynomial& g) {
    require_same_context(f, g);
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (f.is_zero()) return Polynomial(f.ctx_);
    const std::size_t n = f.nvars_;
    if (g.size() == 1) {
        PolynomialBuilder out(f.ctx_);
        out.reserve(f.size());
        const Integer& gc = g.coeffs_[0];
        std::vector<Exponent> e(n);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!f.coeffs_[i].divisible_by(gc)) return std::nullopt;
            for (std::size_t v = 0; v < n; ++v) e[v] = f.exps_[i * n + v] - g.exps_[v];
            out.push(e.data(), Integer::divexact(f.coeffs_[i], gc));
        }
        return std::move(out).finish();
    }
    if (f.size() < g.size()) return std::nullopt;
    const auto fb = f.box(), gb = g.box();
    // Quotient exponents are confined to [lo_f - lo_g, hi_f - hi_g]; then every
    // product q_term * g_term stays inside the box of f.
    detail::ExponentBox qb;
    qb.lo.resize(n);
    qb.hi.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        qb.lo[v] = fb.lo[v] - gb.lo[v];
        qb.hi[v] = fb.hi[v] - gb.hi[v];
        if (qb.lo[v] > qb.hi[v]) return std::nullopt;
    }
    qb.dlo = fb.dlo - gb.dlo;
    qb.dhi = fb.dhi - gb.dhi;
    if (qb.dlo > qb.dhi) return std::nullopt;

    return detail::with_codec(fb, [&](const auto& codec) -> std::optional<Polynomial> {
        using Codec = std::decay_t<decltype(codec)>;
        using Key = typename Codec::Key;
        std::vector<Key> gk(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) gk[j] = codec.encode(g.exps_.data() + j * n, gb.lo.data(), gb.dlo);

        detail::KeyTable<Codec> table(f.size() * 2);
        std::vector<Integer> rem;
        std::priority_queue<Key> heap;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Key k = codec.encode(f.exps_.data() + i * n, fb.lo.data(), fb.dlo);
            table.find_or_insert(k, static_cast<std::uint32_t>(rem.size()));
            rem.push_back(f.coeffs_[i]);
            heap.push(std::move(k));
        }
        const Integer& lc = g.coeffs_[0];
        PolynomialBuilder out(f.ctx_);
        std::vector<Exponent> e(n), q(n);
        std::size_t steps = 0;
        while (!heap.empty()) {
            Key k = heap.top();
            heap.pop();
            while (!heap.empty() && heap.top() == k) heap.pop();
            auto [id, fresh] = table.find_or_insert(k, 0);
            (void)fresh;
            if (rem[id].is_zero()) continue;
            if ((++steps & 255) == 0) check_cancelled();
            codec.decode(k, fb.lo.data(), e.data());
            std::int64_t qd = 0;
            for (std::size_t v = 0; v < n; ++v) {
                q[v] = e[v] - g.exps_[v];
                if (q[v] < qb.lo[v] || q[v] > qb.hi[v]) return std::nullopt;
                qd += q[v];
            }
            if (qd < qb.dlo || qd > qb.dhi) return std::nullopt;
            if (!rem[id].divisible_by(lc)) return std::nullopt;
            Integer qc = Integer::divexact(rem[id], lc);
            rem[id] = Integer(0);
            const Key qk = codec.encode(q.data(), qb.lo.data(), qb.dlo);
            for (std::size_t j = 1; j < g.size(); ++j) {
                Key pk = Codec::add(qk, gk[j]);
                auto [pid, inserted] = table.find_or_insert(pk, static_cast<std::uint32_t>(rem.size()));
                if (inserted) {
                    rem.push_back(-(qc * g.coeffs_[j]));
                    heap.push(std::move(pk));
                } else {
                    if (rem[pid].is_zero()) heap.push(pk);
                    rem[pid].submul(qc, g.coeffs_[j]);
                }
            }
            out.push(q.data(), std::move(qc));
        }
        return std::move(out).finish();
    });
}

inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (auto q = try_exact_divide(f, g)) return std::move(*q);
    throw InexactDivision();
}

inline bool divides(const Polynomial& g, const Polynomial& f) { return try_exact_divide(f, g).has_value(); }

// Positive leading coefficient.
inline Polynomial sign_normalized(Polynomial f) {
    if (!f.is_zero() && f.leading_coeff().sign() < 0) f = -f;
    return f;
}

struct ContentDecomposition {
    Integer content;    // positive gcd of the coefficients
    Monomial monomial;  // componentwise minimum exponent
    Polynomial primitive;
};

// f = ±content * x^monomial * primitive, primitive sign-normalized.
inline ContentDecomposition integer_content_and_primitive(const Polynomial& f) {
    if (f.is_zero()) throw PreconditionError("content of the zero polynomial is undefined");
    Integer g(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        g = Integer::gcd(g, f.coeff(i));
        if (g.is_one()) break;
    }
    Monomial m;
    m.exponents.resize(f.nvars());
    for (std::size_t v = 0; v < f.nvars(); ++v) m.exponents[v] = f.min_exponent(v);
    std::vector<Exponent> neg(f.nvars());
    for (std::size_t v = 0; v < f.nvars(); ++v) neg[v] = -m.exponents[v];
    Integer scale = f.leading_coeff().sign() < 0 ? -g : g;
    Polynomial p = f.shifted(neg);
    PolynomialBuilder out(f.context());
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.push(p.exponents(i).data(), Integer::divexact(p.coeff(i), scale));
    return {std::move(g), std::move(m), std::move(out).finish()};
}

// Primitive, monomial-free and sign-normalized part of f.
inline Polynomial primitive_part(const Polynomial& f) { return integer_content_and_primitive(f).primitive; }

inline Polynomial monomial_polynomial(const ContextPtr& ctx, const Monomial& m, Integer c = Integer(1)) {
    return Polynomial::term(ctx, m.exponents, std::move(c));
}

// Terms of f grouped by the exponent of one variable; that variable is set
// to zero in the returned pieces.
inline std::vector<std::pair<Exponent, Polynomial>> collect_by_variable(const Polynomial& f, std::size_t var) {
    std::vector<std::pair<Exponent, std::vector<std::size_t>>> groups;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Exponent e = f.exponents(i)[var];
        auto it = std::find_if(groups.begin(), groups.end(), [e](const auto& g) { return g.first == e; });
        if (it == groups.end()) {
            groups.push_back({e, {}});
            it = std::prev(groups.end());
        }
        it->second.push_back(i);
    }
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Exponent, Polynomial>> out;
    for (auto& [e, idx] : groups) {
        std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
        for (auto i : idx) {
            auto ex = f.exponents(i);
            std::vector<Exponent> v(ex.begin(), ex.end());
            v[var] = 0;
            terms.emplace_back(std::move(v), f.coeff(i));
        }
        out.emplace_back(e, Polynomial::from_terms(f.context(), std::move(terms)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

// Image of one variable: (num/den) * x^monomial in the target context.
struct VariableImage {
    Integer num{1};
    Integer den{1};
    std::vector<Exponent> monomial;
};

// f(images) = numerator / (denominator * x^denominator_monomial).
struct SubstitutionResult {
    Polynomial numerator;
    Integer denominator{1};
    Monomial denominator_monomial;
};

class Substitution {
public:
    Substitution(ContextPtr source, ContextPtr target)
        : source_(std::move(source)), target_(std::move(target)), images_(source_->size()) {}

    Substitution& map(std::size_t var, VariableImage image) {
        if (image.monomial.size() != target_->size())
            throw PreconditionError("substitution monomial does not match target context");
        if (image.den.is_zero()) throw PreconditionError("zero denominator in substitution");
        if (image.den.sign() < 0) {
            image.num.negate();
            image.den.negate();
        }
        images_.at(var) = std::move(image);
        return *this;
    }
    // var -> (num/den) * target_var^power
    Substitution& map(std::string_view var, Integer num, Integer den, std::string_view target_var, Exponent power = 1) {
        VariableImage im{std::move(num), std::move(den), std::vector<Exponent>(target_->size(), 0)};
        if (!target_var.empty()) im.monomial[target_->index(target_var)] = power;
        return map(source_->index(var), std::move(im));
    }

    // strict: every variable occurring in f must be mapped. Otherwise unmapped
    // variables pass through to the same-named target variable.
    SubstitutionResult apply(const Polynomial& f, bool strict = true) const;

    const ContextPtr& target() const { return target_; }

private:
    ContextPtr source_, target_;
    std::vector<std::optional<VariableImage>> images_;
};

inline SubstitutionResult Substitution::apply(const Polynomial& f, bool strict) const {
    if (!same_context(f.context(), source_)) throw ContextMismatch();
    const std::size_t n = f.nvars(), m = target_->size();
    std::vector<VariableImage> im(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (images_[v]) {
            im[v] = *images_[v];
            continue;
        }
        if (f.max_exponent(v) == 0 && f.min_exponent(v) == 0) continue;
        if (strict) throw PreconditionError("variable '" + source_->name(v) + "' is not mapped by the substitution");
        auto t = target_->find(source_->name(v));
        if (!t) throw PreconditionError("variable '" + source_->name(v) + "' has no counterpart in the target context");
        im[v].monomial.assign(m, 0);
        im[v].monomial[*t] = 1;
    }
    // Exponent extremes per source variable determine the common denominator.
    std::vector<Exponent> pos(n, 0), neg(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        pos[v] = std::max<Exponent>(0, f.max_exponent(v));
        neg[v] = std::max<Exponent>(0, -f.min_exponent(v));
        if (neg[v] > 0 && im[v].num.is_zero()) throw std::domain_error("negative power of a variable mapped to zero");
    }
    Integer denom(1);
    for (std::size_t v = 0; v < n; ++v) {
        if (pos[v]) denom *= Integer::pow(im[v].den, pos[v]);
        if (neg[v]) denom *= Integer::pow(im[v].num.abs(), neg[v]);
    }
    std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
    terms.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto e = f.exponents(i);
        Integer c = f.coeff(i);
        std::vector<Exponent> out(m, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (pos[v] == 0 && neg[v] == 0) continue;
            const Exponent x = e[v];
            const auto& I = im[v];
            if (x >= 0) {
                c *= Integer::pow(I.num, x) * Integer::pow(I.den, pos[v] - x);
                if (neg[v]) c *= Integer::pow(I.num.abs(), neg[v]);
            } else {
                // (num/den)^x * den^pos * |num|^neg
                Integer sgn = (I.num.sign() < 0 && ((-x) & 1)) ? Integer(-1) : Integer(1);
                c *= sgn * Integer::pow(I.den, pos[v] - x) * Integer::pow(I.num.abs(), neg[v] + x);
            }
            if (c.is_zero()) break;
            for (std::size_t t = 0; t < m; ++t) out[t] += x * I.monomial[t];
        }
        if (!c.is_zero()) terms.emplace_back(std::move(out), std::move(c));
    }
    Polynomial num = Polynomial::from_terms(target_, std::move(terms));
    Monomial dm;
    dm.exponents.assign(m, 0);
    if (!num.is_zero()) {
        std::vector<Exponent> shift(m, 0);
        for (std::size_t t = 0; t < m; ++t) {
            Exponent lo = num.min_exponent(t);
            if (lo < 0) {
                dm.exponents[t] = -lo;
                shift[t] = -lo;
            }
        }
        num = num.shifted(shift);
        Integer g = denom;
        for (std::size_t i = 0; i < num.size() && !g.is_one(); ++i) g = Integer::gcd(g, num.coeff(i));
        if (!g.is_one()) {
            num = *try_exact_divide(num, Polynomial::constant(target_, g));
            denom = Integer::divexact(denom, g);
        }
    }
    return {std::move(num), std::move(denom), std::move(dm)};
}

// f(x) -> x^shift * f(1/x) with the smallest shift making the result a
// polynomial; returns the shift alongside.
inline std::pair<Polynomial, Monomial> reciprocal(const Polynomial& f) {
    const std::size_t n = f.nvars();
    Monomial shift;
    shift.exponents.resize(n);
    for (std::size_t v = 0; v < n; ++v) shift.exponents[v] = f.is_zero() ? 0 : f.max_exponent(v);
    std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
    terms.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto e = f.exponents(i);
        std::vector<Exponent> r(n);
        for (std::size_t v = 0; v < n; ++v) r[v] = shift.exponents[v] - e[v];
        terms.emplace_back(std::move(r), f.coeff(i));
    }
    return {Polynomial::from_terms(f.context(), std::move(terms)), std::move(shift)};
}

// ---------------------------------------------------------------------------
// Evaluation

inline mpq_class evaluate(const Polynomial& f, std::span<const mpq_class> point) {
    if (point.size() != f.nvars()) throw PreconditionError("evaluation point has wrong dimension");
    mpq_class sum = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpq_class t(f.coeff(i).to_mpz());
        auto e = f.exponents(i);
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            if (e[v] == 0) continue;
            mpz_class num, den;
            unsigned long k = static_cast<unsigned long>(e[v] < 0 ? -e[v] : e[v]);
            mpz_pow_ui(num.get_mpz_t(), point[v].get_num_mpz_t(), k);
            mpz_pow_ui(den.get_mpz_t(), point[v].get_den_mpz_t(), k);
            if (e[v] < 0) std::swap(num, den);
            if (den == 0) throw std::domain_error("negative power of zero in evaluation");
            mpq_class p(num, den);
            p.canonicalize();
            t *= p;
        }
        sum += t;
    }
    return sum;
}

inline std::complex<double> evaluate(const Polynomial& f, std::span<const std::complex<double>> point) {
    if (point.size() != f.nvars()) throw PreconditionError("evaluation point has wrong dimension");
    std::complex<double> sum = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::complex<double> t = f.coeff(i).to_double();
        auto e = f.exponents(i);
        for (std::size_t v = 0; v < f.nvars(); ++v)
            if (e[v] != 0) t *= std::pow(point[v], e[v]);
        sum += t;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Canonical text form: "3*x1^2*x2 - x3 + 5", terms in descending graded-lex order.

inline std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < size(); ++i) {
        const Integer& c = coeffs_[i];
        bool negative = c.sign() < 0;
        if (i == 0)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        Integer a = c.abs();
        auto e = exponents(i);
        bool unit_mono = std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
        bool first = true;
        if (!a.is_one() || unit_mono) {
            os << a.to_string();
            first = false;
        }
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (!first) os << '*';
            first = false;
            os << ctx_->name(v);
            if (e[v] != 1) os << '^' << e[v];
        }
    }
    return os.str();
}

// Parses sums of products of integers and variables with integer powers,
// e.g. "x1^2 - 2*x1*x2 + 5" or "y11^-1*y21". Inverse of to_string().
inline Polynomial parse_polynomial(const ContextPtr& ctx, std::string_view text) {
    const std::size_t n = ctx->size();
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) -> PreconditionError {
        return PreconditionError("polynomial parse error at offset " + std::to_string(pos) + ": " + what);
    };
    auto read_digits = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw fail("expected digits");
        return text.substr(start, pos - start);
    };
    std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
    skip();
    if (text.substr(pos) == "0") return Polynomial(ctx);
    bool first = true;
    while (true) {
        skip();
        if (pos >= text.size()) {
            if (first) throw fail("empty polynomial");
            break;
        }
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            throw fail("expected '+' or '-'");
        }
        first = false;
        Integer c(sign);
        std::vector<Exponent> e(n, 0);
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                c *= Integer::from_string(read_digits());
            } else if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                std::size_t v = ctx->index(text.substr(start, pos - start));
                skip();
                Exponent p = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    bool neg = false;
                    if (pos < text.size() && text[pos] == '-') {
                        neg = true;
                        ++pos;
                    }
                    p = static_cast<Exponent>(std::stol(std::string(read_digits())));
                    if (neg) p = -p;
                }
                e[v] += p;
            } else {
                throw fail("expected a number or a variable");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        terms.emplace_back(std::move(e), std::move(c));
    }
    return Polynomial::from_terms(ctx, std::move(terms));
}

}  // namespace toric
