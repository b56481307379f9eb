#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/field.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/poly.hpp"
#include "frsgap/rational.hpp"
#include "frsgap/rng.hpp"

namespace frsgap {

// One folded symbol: m consecutive evaluations of the message polynomial.
struct Symbol {
    std::vector<FieldElement> entries;

    friend bool operator==(const Symbol& a, const Symbol& b) { return a.entries == b.entries; }
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

// Received or encoded word: n blocks of m field elements, stored flat in
// block-major order.  The flat view is exactly the embedding into F_q^{mn}
// used by the linear-algebra layer.
struct Word {
    std::size_t n = 0;
    std::size_t m = 0;
    Vec data;

    Word() = default;
    Word(std::size_t n_, std::size_t m_) : n(n_), m(m_), data(n_ * m_, FieldElement{0}) {}

    FieldElement& at(std::size_t block, std::size_t j) { return data[block * m + j]; }
    FieldElement at(std::size_t block, std::size_t j) const { return data[block * m + j]; }

    Symbol block(std::size_t i) const {
        if (i >= n) throw IndexError("Word::block: index out of range");
        Symbol s;
        s.entries.assign(data.begin() + static_cast<long>(i * m),
                         data.begin() + static_cast<long>((i + 1) * m));
        return s;
    }
    void set_block(std::size_t i, const Symbol& s) {
        if (i >= n) throw IndexError("Word::set_block: index out of range");
        if (s.entries.size() != m) throw ShapeError("Word::set_block: wrong symbol width");
        for (std::size_t j = 0; j < m; ++j) data[i * m + j] = s.entries[j];
    }
    bool block_equal(const Word& other, std::size_t i) const {
        for (std::size_t j = 0; j < m; ++j) {
            if (data[i * m + j] != other.data[i * m + j]) return false;
        }
        return true;
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.n == b.n && a.m == b.m && a.data == b.data;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) {  // lexicographic, for tie-breaks
        for (std::size_t i = 0; i < std::min(a.data.size(), b.data.size()); ++i) {
            if (a.data[i].value != b.data[i].value) return a.data[i].value < b.data[i].value;
        }
        return a.data.size() < b.data.size();
    }
};

inline void require_same_shape(const Word& a, const Word& b, const char* where) {
    if (a.n != b.n || a.m != b.m) throw ShapeError(std::string(where) + ": shape mismatch");
}

// Parameters of a folded Reed-Solomon code.  Block i reads the message
// polynomial at gamma^j * alpha_i for j = 0..m-1; the default layout places
// basepoints at alpha_i = gamma^{m(i-1)} so the mn evaluation points tile an
// initial segment of the gamma orbit.
struct CodeParams {
    FieldContext ctx;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<FieldElement> basepoints;
    std::vector<FieldElement> eval_points;  // flat, block-major: gamma^j * alpha_i

    Rational rate() const {
        return Rational(static_cast<long long>(k), static_cast<long long>(m * n));
    }
    FieldElement point(std::size_t block, std::size_t j) const { return eval_points[block * m + j]; }
};

inline void validate_params(const CodeParams& p) {
    if (p.m < 2) throw InvalidParameter("validate_params: folding width m must be at least 2");
    if (p.n == 0) throw InvalidParameter("validate_params: block count n must be positive");
    if (p.k == 0) throw InvalidParameter("validate_params: dimension k must be positive");
    const std::uint64_t mn = static_cast<std::uint64_t>(p.m) * p.n;
    if (p.k > mn) throw DegreeOverflow("validate_params: k must not exceed m*n");
    if (p.ctx.modulus() <= mn) {
        throw FieldTooSmall("validate_params: need q > m*n evaluation points");
    }
    if (p.ctx.gamma_order() < mn) {
        throw OrderTooSmall("validate_params: gamma order below m*n");
    }
    if (p.basepoints.size() != p.n) {
        throw ShapeError("validate_params: basepoint count differs from n");
    }
    std::set<std::uint64_t> seen;
    for (auto a : p.basepoints) {
        p.ctx.require(a);
        if (a.value == 0) throw InvalidBasepoint("validate_params: zero basepoint");
    }
    if (p.eval_points.size() != mn) throw ShapeError("validate_params: eval point table corrupt");
    for (auto x : p.eval_points) {
        if (!seen.insert(x.value).second) {
            throw PointCollision("validate_params: evaluation points are not pairwise distinct");
        }
    }
}

inline CodeParams make_params(const FieldContext& ctx, std::size_t m, std::size_t n, std::size_t k,
                              std::vector<FieldElement> basepoints) {
    CodeParams p{ctx, m, n, k, std::move(basepoints), {}};
    p.eval_points.reserve(m * n);
    for (std::size_t i = 0; i < n && i < p.basepoints.size(); ++i) {
        FieldElement x = p.basepoints[i];
        for (std::size_t j = 0; j < m; ++j) {
            p.eval_points.push_back(x);
            x = ctx.mul(x, ctx.gamma());
        }
    }
    validate_params(p);
    return p;
}

inline CodeParams make_params(const FieldContext& ctx, std::size_t m, std::size_t n,
                              std::size_t k) {
    std::vector<FieldElement> basepoints;
    basepoints.reserve(n);
    FieldElement step = ctx.pow(ctx.gamma(), m);
    FieldElement a = ctx.one();
    for (std::size_t i = 0; i < n; ++i) {
        basepoints.push_back(a);
        a = ctx.mul(a, step);
    }
    return make_params(ctx, m, n, k, std::move(basepoints));
}

// Enc(f)_i = (f(alpha_i), f(gamma alpha_i), ..., f(gamma^{m-1} alpha_i)).
inline Word encode(const CodeParams& p, const Poly& f) {
    if (f.degree() >= static_cast<long long>(p.k)) {
        throw DegreeOverflow("encode: message degree must be below k");
    }
    Word w(p.n, p.m);
    for (std::size_t i = 0; i < p.n * p.m; ++i) {
        w.data[i] = poly_eval(p.ctx, f, p.eval_points[i]);
    }
    return w;
}

// Relative block distance: fraction of blocks where the words differ.
inline Rational block_distance(const Word& x, const Word& y) {
    require_same_shape(x, y, "block_distance");
    long long diff = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        if (!x.block_equal(y, i)) ++diff;
    }
    return Rational(diff, static_cast<long long>(x.n));
}

inline std::size_t block_weight(const Word& x) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < x.m; ++j) zero &= (x.at(i, j).value == 0);
        if (!zero) ++w;
    }
    return w;
}

inline Word word_add(const FieldContext& ctx, const Word& a, const Word& b) {
    require_same_shape(a, b, "word_add");
    Word r(a.n, a.m);
    r.data = vec_add(ctx, a.data, b.data);
    return r;
}

inline Word word_sub(const FieldContext& ctx, const Word& a, const Word& b) {
    require_same_shape(a, b, "word_sub");
    Word r(a.n, a.m);
    r.data = vec_sub(ctx, a.data, b.data);
    return r;
}

inline Word word_scale(const FieldContext& ctx, FieldElement c, const Word& a) {
    Word r(a.n, a.m);
    r.data = vec_scale(ctx, c, a.data);
    return r;
}

inline Word word_from_vec(std::size_t n, std::size_t m, Vec data) {
    if (data.size() != n * m) throw ShapeError("word_from_vec: wrong length");
    Word w;
    w.n = n;
    w.m = m;
    w.data = std::move(data);
    return w;
}

// Number of codewords q^k, or nullopt if it exceeds the cap.
inline std::optional<std::uint64_t> codeword_count(const CodeParams& p, std::uint64_t cap) {
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < p.k; ++i) {
        total *= p.ctx.modulus();
        if (total > cap) return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

// Visit all q^k codewords as (message, codeword) pairs.  Message coefficient
// c_j advances fastest for j = 0, so the order is the base-q odometer.
inline void enumerate_codewords(const CodeParams& p, std::uint64_t cap,
                                const std::function<void(const Poly&, const Word&)>& fn) {
    auto total = codeword_count(p, cap);
    if (!total) throw EnumerationTooLarge("enumerate_codewords: q^k exceeds cap");
    const std::uint64_t q = p.ctx.modulus();
    std::vector<std::uint64_t> digits(p.k, 0);
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
        Poly f;
        f.coeffs.resize(p.k, FieldElement{0});
        for (std::size_t j = 0; j < p.k; ++j) f.coeffs[j] = FieldElement{digits[j]};
        poly_trim(f);
        fn(f, encode(p, f));
        std::size_t j = 0;
        while (j < p.k) {
            if (++digits[j] < q) break;
            digits[j] = 0;
            ++j;
        }
    }
}

// Recover the message of an exact codeword; nullopt if the word is off-code.
inline std::optional<Poly> message_of(const CodeParams& p, const Word& w) {
    if (w.n != p.n || w.m != p.m) throw ShapeError("message_of: shape mismatch");
    std::vector<Vec> rows;
    rows.reserve(p.n * p.m);
    for (std::size_t i = 0; i < p.n * p.m; ++i) {
        Vec row(p.k);
        FieldElement x = p.eval_points[i];
        FieldElement v = p.ctx.one();
        for (std::size_t c = 0; c < p.k; ++c) {
            row[c] = v;
            v = p.ctx.mul(v, x);
        }
        rows.push_back(std::move(row));
    }
    auto sol = solve_linear(p.ctx, rows, w.data, p.k);
    if (!sol.consistent) return std::nullopt;
    return poly_from_vec(p.ctx, sol.particular);
}

inline bool is_codeword(const CodeParams& p, const Word& w) {
    return message_of(p, w).has_value();
}

inline Poly random_message(const CodeParams& p, SplitRng& rng) {
    Poly f;
    f.coeffs.resize(p.k);
    for (auto& c : f.coeffs) c = p.ctx.element(rng.uniform(p.ctx.modulus()));
    poly_trim(f);
    return f;
}

inline Word random_word(const CodeParams& p, SplitRng& rng) {
    Word w(p.n, p.m);
    for (auto& x : w.data) x = p.ctx.element(rng.uniform(p.ctx.modulus()));
    return w;
}

inline Symbol random_symbol_differing(const FieldContext& ctx, std::size_t m, const Symbol& from,
                                      SplitRng& rng) {
    for (;;) {
        Symbol s;
        s.entries.resize(m);
        for (auto& x : s.entries) x = ctx.element(rng.uniform(ctx.modulus()));
        if (!(s == from)) return s;
    }
}

}  // namespace frsgap
