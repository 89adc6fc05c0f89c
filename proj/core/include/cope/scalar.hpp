#ifndef COPE_SCALAR_HPP
#define COPE_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "cope/errors.hpp"

namespace cope {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RoundDir { Down, Up };

/// Exact element a + b*sqrt(d) of the quadratic field Q(sqrt(d)).
///
/// The radicand d is a square-free positive integer fixed per computation
/// context (default 5). Purely rational values carry radicand 0 and combine
/// with any field; mixing two distinct nonzero radicands throws.
class QuadraticScalar {
public:
    QuadraticScalar() : a_(0), b_(0), d_(0) {}
    QuadraticScalar(long v) : a_(v), b_(0), d_(0) {}
    QuadraticScalar(const Rational& a) : a_(a), b_(0), d_(0) { a_.canonicalize(); }
    QuadraticScalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        a_.canonicalize();
        b_.canonicalize();
        if (b_ == 0) {
            d_ = 0;
        } else {
            check_radicand(d_);
        }
    }

    static QuadraticScalar sqrt_of(long d) { return QuadraticScalar(Rational(0), Rational(1), d); }
    static QuadraticScalar from_fraction(long num, long den) {
        if (den == 0) throw DomainError("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return QuadraticScalar(q);
    }

    const Rational& rat() const { return a_; }
    const Rational& irr() const { return b_; }
    long radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    friend QuadraticScalar operator+(const QuadraticScalar& x, const QuadraticScalar& y) {
        long d = join(x, y);
        return QuadraticScalar(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadraticScalar operator-(const QuadraticScalar& x, const QuadraticScalar& y) {
        long d = join(x, y);
        return QuadraticScalar(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend QuadraticScalar operator-(const QuadraticScalar& x) {
        return QuadraticScalar(-x.a_, -x.b_, x.d_);
    }
    friend QuadraticScalar operator*(const QuadraticScalar& x, const QuadraticScalar& y) {
        long d = join(x, y);
        return QuadraticScalar(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    // (a+b*sqrt(d))^{-1} = (a-b*sqrt(d)) / (a^2-b^2 d)
    friend QuadraticScalar operator/(const QuadraticScalar& x, const QuadraticScalar& y) {
        long d = join(x, y);
        Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
        if (norm == 0) throw DomainError("division by zero");
        return QuadraticScalar((x.a_ * y.a_ - x.b_ * y.b_ * d) / norm,
                               (x.b_ * y.a_ - x.a_ * y.b_) / norm, d);
    }
    QuadraticScalar& operator+=(const QuadraticScalar& y) { return *this = *this + y; }
    QuadraticScalar& operator-=(const QuadraticScalar& y) { return *this = *this - y; }
    QuadraticScalar& operator*=(const QuadraticScalar& y) { return *this = *this * y; }
    QuadraticScalar& operator/=(const QuadraticScalar& y) { return *this = *this / y; }

    friend bool operator==(const QuadraticScalar& x, const QuadraticScalar& y) {
        if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadraticScalar& x, const QuadraticScalar& y) { return !(x == y); }

    /// Exact sign of a + b*sqrt(d): case analysis on the signs of a and b,
    /// falling back to comparing a^2 against b^2 d.
    int sign() const {
        int sa = sgn(a_);
        int sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: |a| vs |b| sqrt(d); a^2 = b^2 d cannot happen for
        // square-free d with a, b != 0
        Rational lhs = a_ * a_;
        Rational rhs = b_ * b_ * d_;
        int cmp = cmp_rat(lhs, rhs);
        return cmp > 0 ? sa : sb;
    }

    friend bool operator<(const QuadraticScalar& x, const QuadraticScalar& y) {
        return (x - y).sign() < 0;
    }
    friend bool operator<=(const QuadraticScalar& x, const QuadraticScalar& y) {
        return (x - y).sign() <= 0;
    }
    friend bool operator>(const QuadraticScalar& x, const QuadraticScalar& y) {
        return (x - y).sign() > 0;
    }
    friend bool operator>=(const QuadraticScalar& x, const QuadraticScalar& y) {
        return (x - y).sign() >= 0;
    }

    QuadraticScalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        double v = a_.get_d();
        if (b_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
        return v;
    }

    /// Rational q with |q - value| < 2^-bits, via interval refinement of sqrt(d).
    Rational approx(unsigned bits) const;

    /// The power of two 2^z with 2^z <= x < 2^{z+1} (Down) or
    /// 2^{z-1} < x <= 2^z (Up). Requires x > 0.
    Rational round_pow2(RoundDir dir) const;

    std::string str() const;
    static QuadraticScalar parse(std::string_view text, long default_radicand = 5);

    /// Combined bit size of the numerators and denominators, for growth guards.
    std::size_t bit_size() const {
        return mpz_sizeinbase(a_.get_num_mpz_t(), 2) + mpz_sizeinbase(a_.get_den_mpz_t(), 2) +
               mpz_sizeinbase(b_.get_num_mpz_t(), 2) + mpz_sizeinbase(b_.get_den_mpz_t(), 2);
    }

private:
    static int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
    static int cmp_rat(const Rational& x, const Rational& y) { return mpq_cmp(x.get_mpq_t(), y.get_mpq_t()); }
    static void check_radicand(long d);
    static long join(const QuadraticScalar& x, const QuadraticScalar& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
        throw FieldMismatchError(x.d_, y.d_);
    }

    Rational a_;
    Rational b_;
    long d_;
};

/// Floating backend. Sign tests treat |x| <= tolerance as zero.
class FloatScalar {
public:
    FloatScalar() : v_(0.0) {}
    FloatScalar(int v) : v_(static_cast<double>(v)) {}
    FloatScalar(long v) : v_(static_cast<double>(v)) {}
    FloatScalar(double v) : v_(v) {}

    static double tolerance() { return tol_; }
    static void set_tolerance(double t) {
        if (t < 0) throw DomainError("negative tolerance");
        tol_ = t;
    }

    static FloatScalar sqrt_of(long d) { return FloatScalar(std::sqrt(static_cast<double>(d))); }
    static FloatScalar from_fraction(long num, long den) {
        if (den == 0) throw DomainError("zero denominator");
        return FloatScalar(static_cast<double>(num) / static_cast<double>(den));
    }

    double value() const { return v_; }
    bool is_zero() const { return sign() == 0; }

    friend FloatScalar operator+(FloatScalar x, FloatScalar y) { return FloatScalar(x.v_ + y.v_); }
    friend FloatScalar operator-(FloatScalar x, FloatScalar y) { return FloatScalar(x.v_ - y.v_); }
    friend FloatScalar operator-(FloatScalar x) { return FloatScalar(-x.v_); }
    friend FloatScalar operator*(FloatScalar x, FloatScalar y) { return FloatScalar(x.v_ * y.v_); }
    friend FloatScalar operator/(FloatScalar x, FloatScalar y) {
        if (y.sign() == 0) throw DomainError("division by zero");
        return FloatScalar(x.v_ / y.v_);
    }
    FloatScalar& operator+=(FloatScalar y) { v_ += y.v_; return *this; }
    FloatScalar& operator-=(FloatScalar y) { v_ -= y.v_; return *this; }
    FloatScalar& operator*=(FloatScalar y) { v_ *= y.v_; return *this; }
    FloatScalar& operator/=(FloatScalar y) { *this = *this / y; return *this; }

    friend bool operator==(FloatScalar x, FloatScalar y) { return (x - y).sign() == 0; }
    friend bool operator!=(FloatScalar x, FloatScalar y) { return !(x == y); }
    friend bool operator<(FloatScalar x, FloatScalar y) { return (x - y).sign() < 0; }
    friend bool operator<=(FloatScalar x, FloatScalar y) { return (x - y).sign() <= 0; }
    friend bool operator>(FloatScalar x, FloatScalar y) { return (x - y).sign() > 0; }
    friend bool operator>=(FloatScalar x, FloatScalar y) { return (x - y).sign() >= 0; }

    int sign() const {
        if (std::abs(v_) <= tol_) return 0;
        return v_ > 0 ? 1 : -1;
    }
    FloatScalar abs() const { return FloatScalar(std::abs(v_)); }
    double to_double() const { return v_; }

    FloatScalar round_pow2(RoundDir dir) const;

    std::string str() const;
    static FloatScalar parse(std::string_view text, long default_radicand = 5);

    std::size_t bit_size() const { return 64; }

private:
    static double tol_;
    double v_;
};

template <class S> inline constexpr bool is_exact_v = false;
template <> inline constexpr bool is_exact_v<QuadraticScalar> = true;

template <class S> int sign(const S& x) { return x.sign(); }
template <class S> S abs(const S& x) { return x.abs(); }

template <class S> bool approx_equal(const S& x, const S& y) { return (x - y).sign() == 0; }

template <class S> S round_pow2(const S& x, RoundDir dir);
template <> inline QuadraticScalar round_pow2(const QuadraticScalar& x, RoundDir dir) {
    return QuadraticScalar(x.round_pow2(dir));
}
template <> inline FloatScalar round_pow2(const FloatScalar& x, RoundDir dir) {
    return x.round_pow2(dir);
}

std::string rational_str(const Rational& q);

} // namespace cope

#endif
