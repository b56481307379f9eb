#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "frsgap/errors.hpp"

namespace frsgap {

// Element of a prime field F_q, stored as the canonical residue in [0, q).
// The modulus lives in an ambient FieldContext; elements are plain values.
struct FieldElement {
    std::uint64_t value = 0;

    friend bool operator==(FieldElement a, FieldElement b) { return a.value == b.value; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.value != b.value; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.value < b.value; }
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e > 0) {
        if (e & 1u) r = mulmod_u64(r, a, q);
        a = mulmod_u64(a, a, q);
        e >>= 1u;
    }
    return r;
}

// Deterministic Miller-Rabin; the fixed base set decides primality for every
// 64-bit integer.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t pollard_rho_u64(std::uint64_t n) {
    if ((n & 1u) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto step = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> stack{n};
    while (!stack.empty()) {
        std::uint64_t v = stack.back();
        stack.pop_back();
        if (v < 2) continue;
        if (is_prime_u64(v)) {
            primes.push_back(v);
            continue;
        }
        std::uint64_t d = pollard_rho_u64(v);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

}  // namespace detail

// Arithmetic context for F_q with a distinguished folding generator gamma.
//
// q must be prime (checked once here) and at most 2^62 so that products fit
// in 128 bits and counts over F_q stay inside exact Rational range.
class FieldContext {
  public:
    static constexpr std::uint64_t kMaxModulus = 1ull << 62;

    FieldContext(std::uint64_t q, std::uint64_t gamma) : q_(q) {
        if (q < 2 || q > kMaxModulus) {
            throw InvalidParameter("FieldContext: modulus out of range [2, 2^62]");
        }
        if (!detail::is_prime_u64(q)) {
            throw NotPrime("FieldContext: modulus " + std::to_string(q) + " is not prime");
        }
        gamma_ = element(gamma);
        if (gamma_.value == 0) {
            throw InvalidParameter("FieldContext: gamma must be a unit");
        }
        unit_group_factors_ = detail::prime_factors_u64(q_ - 1);
        gamma_order_ = element_order(gamma_);
    }

    std::uint64_t modulus() const { return q_; }
    FieldElement gamma() const { return gamma_; }
    std::uint64_t gamma_order() const { return gamma_order_; }

    friend bool operator==(const FieldContext& a, const FieldContext& b) {
        return a.q_ == b.q_ && a.gamma_ == b.gamma_;
    }
    friend bool operator!=(const FieldContext& a, const FieldContext& b) { return !(a == b); }

    FieldElement element(std::uint64_t v) const { return FieldElement{v % q_}; }
    FieldElement from_int(long long v) const {
        long long m = static_cast<long long>(q_);
        long long r = v % m;
        if (r < 0) r += m;
        return FieldElement{static_cast<std::uint64_t>(r)};
    }
    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1 % q_}; }

    // A value outside [0, q) is evidence the element came from another
    // context; every operation rejects it.
    void require(FieldElement a) const {
        if (a.value >= q_) {
            throw ContextMismatch("FieldContext: element " + std::to_string(a.value) +
                                  " does not belong to F_" + std::to_string(q_));
        }
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        require(a);
        require(b);
        std::uint64_t r = a.value >= q_ - b.value && b.value != 0 ? a.value - (q_ - b.value)
                                                                  : a.value + b.value;
        return FieldElement{r};
    }
    FieldElement sub(FieldElement a, FieldElement b) const {
        require(a);
        require(b);
        return FieldElement{a.value >= b.value ? a.value - b.value : a.value + (q_ - b.value)};
    }
    FieldElement neg(FieldElement a) const {
        require(a);
        return FieldElement{a.value == 0 ? 0 : q_ - a.value};
    }
    FieldElement mul(FieldElement a, FieldElement b) const {
        require(a);
        require(b);
        return FieldElement{detail::mulmod_u64(a.value, b.value, q_)};
    }
    FieldElement pow(FieldElement a, std::uint64_t e) const {
        require(a);
        return FieldElement{detail::powmod_u64(a.value, e, q_)};
    }
    FieldElement inv(FieldElement a) const {
        require(a);
        if (a.value == 0) throw DivisionByZero("FieldContext::inv: inverse of zero");
        return pow(a, q_ - 2);
    }
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    // Multiplicative order; exact via the factorization of q-1.
    std::uint64_t element_order(FieldElement a) const {
        require(a);
        if (a.value == 0) throw DivisionByZero("FieldContext::element_order: zero element");
        std::uint64_t t = q_ - 1;
        for (std::uint64_t p : unit_group_factors_) {
            while (t % p == 0 && detail::powmod_u64(a.value, t / p, q_) == 1) t /= p;
        }
        return t;
    }

    // Smallest generator of F_q^x.
    FieldElement smallest_primitive_root() const {
        for (std::uint64_t g = 1; g < q_; ++g) {
            bool primitive = true;
            for (std::uint64_t p : unit_group_factors_) {
                if (detail::powmod_u64(g, (q_ - 1) / p, q_) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return FieldElement{g};
        }
        throw Error("FieldContext: no primitive root found");  // unreachable for prime q
    }

  private:
    std::uint64_t q_;
    FieldElement gamma_;
    std::uint64_t gamma_order_ = 0;
    std::vector<std::uint64_t> unit_group_factors_;
};

}  // namespace frsgap
