#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "frsgap/errors.hpp"

namespace frsgap {

// Exact rational number with int64 numerator/denominator.
//
// Distances, densities and gap thresholds are compared exactly, never through
// floating point.  All intermediates are computed in 128-bit arithmetic; a
// result whose reduced form leaves int64 range throws OverflowError instead
// of wrapping.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) {
        if (d == 0) throw DivisionByZero("Rational: zero denominator");
        normalize_(n, d);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DivisionByZero("Rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    // Cross-multiplied comparisons are exact: |num|, den < 2^63 keeps the
    // products inside __int128.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Serialized form is always "num/den", e.g. "0/1", "-3/4".
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(text));
            long long n = std::stoll(text.substr(0, slash));
            long long d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        } catch (const DivisionByZero&) {
            throw;
        } catch (const std::exception&) {
            throw OverflowError("Rational::parse: cannot parse '" + text + "'");
        }
    }

    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Exact floor; rounds toward negative infinity.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) q -= 1;
        return q;
    }

  private:
    using i128 = __int128;

    static Rational from_i128(i128 n, i128 d) {
        Rational r;
        r.normalize128_(n, d);
        return r;
    }

    void normalize_(long long n, long long d) { normalize128_(i128(n), i128(d)); }

    void normalize128_(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128_(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
            throw OverflowError("Rational: value exceeds 64-bit range");
        }
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
        if (num_ == 0) den_ = 1;
    }

    static i128 gcd128_(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    long long num_;
    long long den_;
};

}  // namespace frsgap
