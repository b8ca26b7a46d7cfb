#pragma once

// Signed arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger lives in a
// heap-allocated GMP integer. Every operation demotes back to the inline
// form when the result fits, so equality can compare representations.

#include <gmp.h>
#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace toric {

class Integer {
public:
    Integer() noexcept = default;
    Integer(int v) noexcept : small_(v) {}
    Integer(long v) noexcept : small_(v) {}
    Integer(long long v) noexcept : small_(v) {}
    explicit Integer(const mpz_class& v) { assign_mpz(v.get_mpz_t()); }

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) {
            big_ = new_mpz();
            mpz_set(big_, o.big_);
        }
    }
    Integer(Integer&& o) noexcept : small_(o.small_), big_(std::exchange(o.big_, nullptr)) {}
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            if (o.big_) {
                if (!big_) big_ = new_mpz();
                mpz_set(big_, o.big_);
            } else {
                release();
                small_ = o.small_;
            }
        }
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        if (this != &o) {
            release();
            small_ = o.small_;
            big_ = std::exchange(o.big_, nullptr);
        }
        return *this;
    }
    ~Integer() { release(); }

    static Integer from_string(std::string_view s) {
        mpz_class v;
        if (s.empty() || v.set_str(std::string(s), 10) != 0)
            throw std::invalid_argument("invalid integer literal '" + std::string(s) + "'");
        return Integer(v);
    }

    static Integer pow(const Integer& base, unsigned long e) {
        mpz_class b = base.to_mpz(), r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return Integer(r);
    }

    bool is_small() const noexcept { return big_ == nullptr; }
    int64_t small_value() const noexcept { return small_; }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    int sign() const noexcept {
        if (big_) return mpz_sgn(big_);
        return (small_ > 0) - (small_ < 0);
    }

    mpz_class to_mpz() const {
        mpz_class r;
        if (big_)
            mpz_set(r.get_mpz_t(), big_);
        else
            mpz_set_si(r.get_mpz_t(), small_);
        return r;
    }
    double to_double() const { return big_ ? mpz_get_d(big_) : static_cast<double>(small_); }
    std::string to_string() const { return big_ ? to_mpz().get_str() : std::to_string(small_); }

    // Number of bits in |value|; 0 for zero.
    std::size_t bit_length() const {
        if (big_) return mpz_sizeinbase(big_, 2);
        if (small_ == 0) return 0;
        unsigned long long a = small_ < 0 ? 0ull - static_cast<unsigned long long>(small_)
                                          : static_cast<unsigned long long>(small_);
        return 64 - static_cast<std::size_t>(__builtin_clzll(a));
    }

    Integer operator-() const {
        Integer r(*this);
        r.negate();
        return r;
    }
    void negate() {
        if (!big_ && small_ != std::numeric_limits<int64_t>::min()) {
            small_ = -small_;
            return;
        }
        promote();
        mpz_neg(big_, big_);
        normalize();
    }
    Integer abs() const { return sign() < 0 ? -*this : *this; }

    Integer& operator+=(const Integer& o) {
        if (!big_ && !o.big_) {
            int64_t r;
            if (!__builtin_add_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        promote();
        with_mpz(o, [&](mpz_srcptr b) { mpz_add(big_, big_, b); });
        normalize();
        return *this;
    }
    Integer& operator-=(const Integer& o) {
        if (!big_ && !o.big_) {
            int64_t r;
            if (!__builtin_sub_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        promote();
        with_mpz(o, [&](mpz_srcptr b) { mpz_sub(big_, big_, b); });
        normalize();
        return *this;
    }
    Integer& operator*=(const Integer& o) {
        if (!big_ && !o.big_) {
            int64_t r;
            if (!__builtin_mul_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        promote();
        with_mpz(o, [&](mpz_srcptr b) { mpz_mul(big_, big_, b); });
        normalize();
        return *this;
    }

    // *this += a * b
    void addmul(const Integer& a, const Integer& b) {
        if (!big_ && !a.big_ && !b.big_) {
            __int128 r = static_cast<__int128>(a.small_) * b.small_ + small_;
            if (r >= std::numeric_limits<int64_t>::min() && r <= std::numeric_limits<int64_t>::max()) {
                small_ = static_cast<int64_t>(r);
                return;
            }
        }
        promote();
        with_mpz(a, [&](mpz_srcptr pa) {
            with_mpz(b, [&](mpz_srcptr pb) { mpz_addmul(big_, pa, pb); });
        });
        normalize();
    }
    // *this -= a * b
    void submul(const Integer& a, const Integer& b) {
        if (!big_ && !a.big_ && !b.big_) {
            __int128 r = static_cast<__int128>(small_) - static_cast<__int128>(a.small_) * b.small_;
            if (r >= std::numeric_limits<int64_t>::min() && r <= std::numeric_limits<int64_t>::max()) {
                small_ = static_cast<int64_t>(r);
                return;
            }
        }
        promote();
        with_mpz(a, [&](mpz_srcptr pa) {
            with_mpz(b, [&](mpz_srcptr pb) { mpz_submul(big_, pa, pb); });
        });
        normalize();
    }

    // Exact quotient; the caller guarantees divisibility.
    static Integer divexact(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("integer division by zero");
        if (a.is_small() && b.is_small() &&
            !(a.small_ == std::numeric_limits<int64_t>::min() && b.small_ == -1))
            return Integer(a.small_ / b.small_);
        mpz_class q, x = a.to_mpz(), y = b.to_mpz();
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return Integer(q);
    }
    bool divisible_by(const Integer& b) const {
        if (b.is_zero()) return is_zero();
        if (is_small() && b.is_small()) {
            if (b.small_ == -1) return true;
            return small_ % b.small_ == 0;
        }
        mpz_class x = to_mpz(), y = b.to_mpz();
        return mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t()) != 0;
    }
    static Integer gcd(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) {
            unsigned long long x = a.small_ < 0 ? 0ull - static_cast<unsigned long long>(a.small_)
                                                : static_cast<unsigned long long>(a.small_);
            unsigned long long y = b.small_ < 0 ? 0ull - static_cast<unsigned long long>(b.small_)
                                                : static_cast<unsigned long long>(b.small_);
            while (y) x = std::exchange(y, x % y);
            if (x <= static_cast<unsigned long long>(std::numeric_limits<int64_t>::max()))
                return Integer(static_cast<long long>(x));
        }
        mpz_class r, x = a.to_mpz(), y = b.to_mpz();
        mpz_gcd(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return Integer(r);
    }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    friend int compare(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return (a.small_ > b.small_) - (a.small_ < b.small_);
        mpz_class x = a.to_mpz(), y = b.to_mpz();
        int c = mpz_cmp(x.get_mpz_t(), y.get_mpz_t());
        return (c > 0) - (c < 0);
    }
    friend bool operator==(const Integer& a, const Integer& b) {
        if (a.is_small() != b.is_small()) return false;  // normalized representations
        if (a.is_small()) return a.small_ == b.small_;
        return mpz_cmp(a.big_, b.big_) == 0;
    }
    friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

private:
    static mpz_ptr new_mpz() {
        auto* p = new __mpz_struct;
        mpz_init(p);
        return p;
    }
    void release() noexcept {
        if (big_) {
            mpz_clear(big_);
            delete big_;
            big_ = nullptr;
        }
    }
    void promote() {
        if (!big_) {
            big_ = new_mpz();
            mpz_set_si(big_, small_);
        }
    }
    void normalize() {
        if (big_ && mpz_fits_slong_p(big_)) {
            small_ = mpz_get_si(big_);
            release();
        }
    }
    void assign_mpz(mpz_srcptr v) {
        if (mpz_fits_slong_p(v)) {
            release();
            small_ = mpz_get_si(v);
        } else {
            if (!big_) big_ = new_mpz();
            mpz_set(big_, v);
        }
    }
    template <class F>
    static void with_mpz(const Integer& v, F&& f) {
        if (v.big_) {
            f(v.big_);
        } else {
            mpz_t tmp;
            mpz_init_set_si(tmp, v.small_);
            f(tmp);
            mpz_clear(tmp);
        }
    }

    int64_t small_ = 0;
    mpz_ptr big_ = nullptr;
};

static_assert(sizeof(long) == 8, "inline fast path assumes LP64");

}  // namespace toric
