#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/field.hpp"

namespace frsgap {

// Dense univariate polynomial over F_q, coefficients in ascending degree.
// Invariant: the last stored coefficient is nonzero; the zero polynomial is
// the empty vector and reports degree -1.
struct Poly {
    std::vector<FieldElement> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long long degree() const { return static_cast<long long>(coeffs.size()) - 1; }

    FieldElement coeff(std::size_t i) const {
        return i < coeffs.size() ? coeffs[i] : FieldElement{0};
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

inline void poly_trim(Poly& f) {
    while (!f.coeffs.empty() && f.coeffs.back().value == 0) f.coeffs.pop_back();
}

inline Poly poly_from(const FieldContext& ctx, std::initializer_list<std::uint64_t> coeffs) {
    Poly f;
    for (auto c : coeffs) f.coeffs.push_back(ctx.element(c));
    poly_trim(f);
    return f;
}

inline Poly poly_from_vec(const FieldContext& ctx, const std::vector<FieldElement>& coeffs) {
    Poly f;
    f.coeffs = coeffs;
    for (auto c : f.coeffs) ctx.require(c);
    poly_trim(f);
    return f;
}

inline Poly poly_constant(const FieldContext& ctx, FieldElement c) {
    ctx.require(c);
    Poly f;
    if (c.value != 0) f.coeffs.push_back(c);
    return f;
}

inline Poly poly_monomial(const FieldContext& ctx, FieldElement c, std::size_t deg) {
    ctx.require(c);
    Poly f;
    if (c.value != 0) {
        f.coeffs.assign(deg + 1, ctx.zero());
        f.coeffs[deg] = c;
    }
    return f;
}

inline Poly poly_add(const FieldContext& ctx, const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), ctx.zero());
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = ctx.add(a.coeff(i), b.coeff(i));
    poly_trim(r);
    return r;
}

inline Poly poly_sub(const FieldContext& ctx, const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), ctx.zero());
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = ctx.sub(a.coeff(i), b.coeff(i));
    poly_trim(r);
    return r;
}

inline Poly poly_scale(const FieldContext& ctx, FieldElement c, const Poly& a) {
    ctx.require(c);
    if (c.value == 0) return Poly{};
    Poly r = a;
    for (auto& x : r.coeffs) x = ctx.mul(c, x);
    return r;
}

inline Poly poly_mul(const FieldContext& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    Poly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, ctx.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].value == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            r.coeffs[i + j] = ctx.add(r.coeffs[i + j], ctx.mul(a.coeffs[i], b.coeffs[j]));
        }
    }
    poly_trim(r);
    return r;
}

inline FieldElement poly_eval(const FieldContext& ctx, const Poly& f, FieldElement x) {
    ctx.require(x);
    FieldElement acc = ctx.zero();
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        acc = ctx.add(ctx.mul(acc, x), f.coeffs[i]);
    }
    return acc;
}

// Substitute X -> c*X; degree is preserved for c != 0.
inline Poly poly_compose_scaled(const FieldContext& ctx, const Poly& f, FieldElement c) {
    ctx.require(c);
    Poly r = f;
    FieldElement cp = ctx.one();
    for (auto& x : r.coeffs) {
        x = ctx.mul(x, cp);
        cp = ctx.mul(cp, c);
    }
    poly_trim(r);
    return r;
}

// Lagrange interpolation through distinct nodes.
inline Poly poly_interpolate(const FieldContext& ctx,
                             const std::vector<std::pair<FieldElement, FieldElement>>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        ctx.require(points[i].first);
        ctx.require(points[i].second);
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first == points[j].first) {
                throw DuplicateNode("poly_interpolate: repeated node " +
                                    std::to_string(points[i].first.value));
            }
        }
    }
    Poly result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Poly basis = poly_constant(ctx, ctx.one());
        FieldElement denom = ctx.one();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            // basis *= (X - x_j)
            Poly lin;
            lin.coeffs = {ctx.neg(points[j].first), ctx.one()};
            basis = poly_mul(ctx, basis, lin);
            denom = ctx.mul(denom, ctx.sub(points[i].first, points[j].first));
        }
        basis = poly_scale(ctx, ctx.mul(points[i].second, ctx.inv(denom)), basis);
        result = poly_add(ctx, result, basis);
    }
    return result;
}

// Determinant of a square matrix of polynomials by cofactor expansion.
// Intended for the small folded Wronskian matrices (dimension <= ~6).
inline Poly poly_matrix_det(const FieldContext& ctx, const std::vector<std::vector<Poly>>& m) {
    const std::size_t d = m.size();
    if (d == 0) throw ShapeError("poly_matrix_det: empty matrix");
    for (const auto& row : m) {
        if (row.size() != d) throw ShapeError("poly_matrix_det: matrix must be square");
    }
    if (d == 1) return m[0][0];
    Poly det;
    for (std::size_t col = 0; col < d; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        minor.reserve(d - 1);
        for (std::size_t i = 1; i < d; ++i) {
            std::vector<Poly> row;
            row.reserve(d - 1);
            for (std::size_t j = 0; j < d; ++j) {
                if (j != col) row.push_back(m[i][j]);
            }
            minor.push_back(std::move(row));
        }
        Poly term = poly_mul(ctx, m[0][col], poly_matrix_det(ctx, minor));
        det = (col % 2 == 0) ? poly_add(ctx, det, term) : poly_sub(ctx, det, term);
    }
    return det;
}

}  // namespace frsgap
