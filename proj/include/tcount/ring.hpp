#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace tcount {

#ifdef TCOUNT_WIDE_INTEGERS
using Int = __int128;
#else
using Int = std::int64_t;
#endif

[[noreturn]] inline void overflow_abort(const char* what) {
    throw std::overflow_error(std::string("integer overflow in ") + what);
}

inline Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) overflow_abort("add");
    return r;
}

inline Int checked_sub(Int x, Int y) {
    Int r;
    if (__builtin_sub_overflow(x, y, &r)) overflow_abort("sub");
    return r;
}

inline Int checked_mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) overflow_abort("mul");
    return r;
}

inline Int checked_neg(Int x) { return checked_sub(0, x); }

inline std::string int_to_string(Int v) {
#ifdef TCOUNT_WIDE_INTEGERS
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
#else
    return std::to_string(v);
#endif
}

/// Element of Z[1/sqrt(2)]: value (a + b*sqrt(2)) / sqrt(2)^k.
///
/// Kept in canonical form at all times: either k == 0 or a is odd, and zero
/// is always (0, 0, 0). With that normalization k is the smallest denominator
/// exponent (sde) of the value and equality is plain field equality.
class RingReal {
  public:
    RingReal() = default;

    RingReal(Int a, Int b, std::uint32_t k) : a_(a), b_(b), k_(k) { canonicalize(); }

    static RingReal from_int(Int v) { return RingReal(v, 0, 0); }
    static RingReal zero() { return RingReal(); }
    static RingReal one() { return RingReal(1, 0, 0); }
    static RingReal sqrt2() { return RingReal(0, 1, 0); }
    static RingReal inv_sqrt2() { return RingReal(1, 0, 1); }

    Int a() const { return a_; }
    Int b() const { return b_; }
    std::uint32_t k() const { return k_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    std::uint32_t sde() const { return k_; }

    /// Numerator (a, b) rewritten at denominator exponent `target >= k`.
    /// One step of the rewrite maps (a, b) -> (2b, a).
    std::pair<Int, Int> numerator_at(std::uint32_t target) const {
        if (target < k_) throw std::invalid_argument("numerator_at: target below sde");
        Int a = a_;
        Int b = b_;
        for (std::uint32_t i = k_; i < target; ++i) {
            Int na = checked_mul(b, 2);
            b = a;
            a = na;
        }
        return {a, b};
    }

    RingReal operator+(const RingReal& o) const {
        std::uint32_t kk = k_ > o.k_ ? k_ : o.k_;
        auto [xa, xb] = numerator_at(kk);
        auto [ya, yb] = o.numerator_at(kk);
        return RingReal(checked_add(xa, ya), checked_add(xb, yb), kk);
    }

    RingReal operator-() const { return RingReal(checked_neg(a_), checked_neg(b_), k_); }

    RingReal operator-(const RingReal& o) const { return *this + (-o); }

    RingReal operator*(const RingReal& o) const {
        Int na = checked_add(checked_mul(a_, o.a_), checked_mul(2, checked_mul(b_, o.b_)));
        Int nb = checked_add(checked_mul(a_, o.b_), checked_mul(b_, o.a_));
        return RingReal(na, nb, k_ + o.k_);
    }

    bool operator==(const RingReal& o) const { return a_ == o.a_ && b_ == o.b_ && k_ == o.k_; }
    bool operator!=(const RingReal& o) const { return !(*this == o); }

    double to_double() const {
        return (static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0)) *
               std::pow(2.0, -0.5 * static_cast<double>(k_));
    }

    /// Renders "a,b,k".
    std::string to_string() const {
        return int_to_string(a_) + "," + int_to_string(b_) + "," + std::to_string(k_);
    }

  private:
    void canonicalize() {
        if (a_ == 0 && b_ == 0) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && (a_ % 2) == 0) {
            Int half = a_ / 2;
            a_ = b_;
            b_ = half;
            --k_;
        }
    }

    Int a_ = 0;
    Int b_ = 0;
    std::uint32_t k_ = 0;
};

/// Fixed total order on RingReal used by coset labeling: lexicographic on
/// the canonical triple (k, a, b). Canonical forms are unique per value, so
/// this is a genuine total order; it is deterministic, not numeric.
inline bool ring_less(const RingReal& x, const RingReal& y) {
    if (x.k() != y.k()) return x.k() < y.k();
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
}

inline std::ostream& operator<<(std::ostream& os, const RingReal& v) { return os << v.to_string(); }

/// Element of Z[omega, 1/sqrt(2)] with omega = exp(i*pi/4):
/// value (a + b*omega + c*omega^2 + d*omega^3) / sqrt(2)^k, omega^4 = -1.
///
/// Canonical form: k == 0, or the numerator is not divisible by sqrt(2).
/// Using sqrt(2) = omega - omega^3, the numerator is divisible exactly when
/// a + c and b + d are both even, and then
///   (a, b, c, d) / sqrt(2) = ((b - d)/2, (a + c)/2, (b + d)/2, (c - a)/2).
class CycloElem {
  public:
    CycloElem() = default;

    CycloElem(Int a, Int b, Int c, Int d, std::uint32_t k) : a_(a), b_(b), c_(c), d_(d), k_(k) {
        canonicalize();
    }

    static CycloElem from_int(Int v) { return CycloElem(v, 0, 0, 0, 0); }
    static CycloElem zero() { return CycloElem(); }
    static CycloElem one() { return CycloElem(1, 0, 0, 0, 0); }

    static CycloElem omega_power(int e) {
        int r = ((e % 8) + 8) % 8;
        Int coeff[4] = {0, 0, 0, 0};
        coeff[r % 4] = (r < 4) ? 1 : -1;
        return CycloElem(coeff[0], coeff[1], coeff[2], coeff[3], 0);
    }

    static CycloElem from_ring_real(const RingReal& r) {
        return CycloElem(r.a(), r.b(), 0, checked_neg(r.b()), r.k());
    }

    Int a() const { return a_; }
    Int b() const { return b_; }
    Int c() const { return c_; }
    Int d() const { return d_; }
    std::uint32_t k() const { return k_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }

    /// Numerator coefficients rewritten at denominator exponent `target >= k`.
    /// One step multiplies the numerator by sqrt(2) = omega - omega^3:
    /// (a, b, c, d) -> (b - d, a + c, b + d, c - a).
    void numerator_at(std::uint32_t target, Int out[4]) const {
        if (target < k_) throw std::invalid_argument("numerator_at: target below sde");
        out[0] = a_;
        out[1] = b_;
        out[2] = c_;
        out[3] = d_;
        for (std::uint32_t i = k_; i < target; ++i) {
            Int na = checked_sub(out[1], out[3]);
            Int nb = checked_add(out[0], out[2]);
            Int nc = checked_add(out[1], out[3]);
            Int nd = checked_sub(out[2], out[0]);
            out[0] = na;
            out[1] = nb;
            out[2] = nc;
            out[3] = nd;
        }
    }

    CycloElem operator+(const CycloElem& o) const {
        std::uint32_t kk = k_ > o.k_ ? k_ : o.k_;
        Int x[4], y[4];
        numerator_at(kk, x);
        o.numerator_at(kk, y);
        return CycloElem(checked_add(x[0], y[0]), checked_add(x[1], y[1]),
                         checked_add(x[2], y[2]), checked_add(x[3], y[3]), kk);
    }

    CycloElem operator-() const {
        return CycloElem(checked_neg(a_), checked_neg(b_), checked_neg(c_), checked_neg(d_), k_);
    }

    CycloElem operator-(const CycloElem& o) const { return *this + (-o); }

    CycloElem operator*(const CycloElem& o) const {
        const Int p[4] = {a_, b_, c_, d_};
        const Int q[4] = {o.a_, o.b_, o.c_, o.d_};
        Int r[4];
        for (int s = 0; s < 4; ++s) {
            Int acc = 0;
            for (int i = 0; i <= s; ++i) acc = checked_add(acc, checked_mul(p[i], q[s - i]));
            for (int i = s + 1; i < 4; ++i)
                acc = checked_sub(acc, checked_mul(p[i], q[s + 4 - i]));
            r[s] = acc;
        }
        return CycloElem(r[0], r[1], r[2], r[3], k_ + o.k_);
    }

    /// Complex conjugate: omega -> omega^7 = -omega^3.
    CycloElem conj() const {
        return CycloElem(a_, checked_neg(d_), checked_neg(c_), checked_neg(b_), k_);
    }

    bool operator==(const CycloElem& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_ && k_ == o.k_;
    }
    bool operator!=(const CycloElem& o) const { return !(*this == o); }

    bool is_real() const { return c_ == 0 && b_ == checked_neg(d_); }

    /// Real part as RingReal: Re = ((b - d) + a*sqrt(2)) / sqrt(2)^(k+1).
    RingReal real_part() const { return RingReal(checked_sub(b_, d_), a_, k_ + 1); }

    /// Imaginary part as RingReal: Im = ((b + d) + c*sqrt(2)) / sqrt(2)^(k+1).
    RingReal imag_part() const { return RingReal(checked_add(b_, d_), c_, k_ + 1); }

    double real_to_double() const { return real_part().to_double(); }
    double imag_to_double() const { return imag_part().to_double(); }

    /// Renders "a,b,c,d,k".
    std::string to_string() const {
        return int_to_string(a_) + "," + int_to_string(b_) + "," + int_to_string(c_) + "," +
               int_to_string(d_) + "," + std::to_string(k_);
    }

  private:
    void canonicalize() {
        if (is_zero()) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && ((a_ + c_) % 2) == 0 && ((b_ + d_) % 2) == 0) {
            Int na = checked_sub(b_, d_) / 2;
            Int nb = checked_add(a_, c_) / 2;
            Int nc = checked_add(b_, d_) / 2;
            Int nd = checked_sub(c_, a_) / 2;
            a_ = na;
            b_ = nb;
            c_ = nc;
            d_ = nd;
            --k_;
        }
    }

    Int a_ = 0;
    Int b_ = 0;
    Int c_ = 0;
    Int d_ = 0;
    std::uint32_t k_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const CycloElem& v) { return os << v.to_string(); }

}  // namespace tcount
