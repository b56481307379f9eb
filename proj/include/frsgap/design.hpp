#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/frs.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/poly.hpp"
#include "frsgap/rational.hpp"
#include "frsgap/rng.hpp"

namespace frsgap {

// H_a: messages whose codeword block at basepoint a vanishes, i.e. the kernel
// of f -> (f(a), f(gamma a), ..., f(gamma^{m-1} a)) inside F_q^k.
inline LinearSubspace kernel_at(const CodeParams& p, FieldElement a) {
    p.ctx.require(a);
    if (a.value == 0) throw InvalidBasepoint("kernel_at: basepoint must be nonzero");
    std::vector<Vec> rows;
    rows.reserve(p.m);
    FieldElement x = a;
    for (std::size_t j = 0; j < p.m; ++j) {
        Vec row(p.k);
        FieldElement v = p.ctx.one();
        for (std::size_t c = 0; c < p.k; ++c) {
            row[c] = v;
            v = p.ctx.mul(v, x);
        }
        rows.push_back(std::move(row));
        x = p.ctx.mul(x, p.ctx.gamma());
    }
    return nullspace(p.ctx, rows, p.k);
}

enum class DesignRange { FullUnitGroup, BasepointsOnly };

struct DesignReport {
    std::size_t d = 0;             // dim of the probed subspace
    std::size_t sum_dims = 0;      // sum of dim(U cap H_a) over the range
    Rational bound;                // d(k-d)/(m-d+1)
    DesignRange range = DesignRange::FullUnitGroup;
    bool pass = false;             // sum_dims <= bound
    std::optional<long long> wronskian_degree;
};

// Evaluate the intersection-dimension sum against the bound d(k-d)/(m-d+1).
// The sum ranges over all of F_q^x while q-1 <= full_range_cap; for larger
// fields only the n basepoints are probed (a lower bound on the full sum, so
// the inequality stays meaningful).
inline DesignReport design_sum(const CodeParams& p, const LinearSubspace& u,
                               std::uint64_t full_range_cap = (1u << 16)) {
    if (u.ambient_dim() != p.k) throw ShapeError("design_sum: subspace must live in F_q^k");
    const std::size_t d = u.dim();
    if (d < 1 || d > p.m) {
        throw DesignPreconditionViolated("design_sum: need 1 <= dim U <= m");
    }
    DesignReport rep;
    rep.d = d;
    rep.bound = Rational(static_cast<long long>(d) * static_cast<long long>(p.k - d),
                         static_cast<long long>(p.m - d + 1));
    std::size_t sum = 0;
    if (p.ctx.modulus() <= full_range_cap) {
        rep.range = DesignRange::FullUnitGroup;
        for (std::uint64_t a = 1; a < p.ctx.modulus(); ++a) {
            sum += subspace_intersect(p.ctx, u, kernel_at(p, FieldElement{a})).dim();
        }
    } else {
        rep.range = DesignRange::BasepointsOnly;
        for (auto a : p.basepoints) {
            sum += subspace_intersect(p.ctx, u, kernel_at(p, a)).dim();
        }
    }
    rep.sum_dims = sum;
    rep.pass = Rational(static_cast<long long>(sum)) <= rep.bound;
    return rep;
}

// Folded Wronskian: determinant of the top d x d minor of (f_j(gamma^i X)),
// rows i = 0..d-1, columns the basis polynomials of U.
inline Poly folded_wronskian(const CodeParams& p, const LinearSubspace& u) {
    if (u.ambient_dim() != p.k) throw ShapeError("folded_wronskian: subspace must live in F_q^k");
    const std::size_t d = u.dim();
    if (d < 1 || d > p.m) {
        throw DesignPreconditionViolated("folded_wronskian: need 1 <= dim U <= m");
    }
    std::vector<Poly> fs;
    fs.reserve(d);
    for (const auto& row : u.basis()) fs.push_back(poly_from_vec(p.ctx, row));
    std::vector<std::vector<Poly>> mat(d, std::vector<Poly>(d));
    FieldElement g = p.ctx.one();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            mat[i][j] = poly_compose_scaled(p.ctx, fs[j], g);
        }
        g = p.ctx.mul(g, p.ctx.gamma());
    }
    return poly_matrix_det(p.ctx, mat);
}

// Number of basepoints whose whole m-point block is wiped out by h.  The
// design argument caps this at floor((k-1)/m) for nonzero h of degree < k.
inline std::size_t block_collision_count(const CodeParams& p, const Poly& h) {
    if (h.is_zero()) throw ZeroPolynomial("block_collision_count: h must be nonzero");
    if (h.degree() >= static_cast<long long>(p.k)) {
        throw DegreeOverflow("block_collision_count: degree of h must be below k");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
        bool wiped = true;
        for (std::size_t j = 0; j < p.m; ++j) {
            if (poly_eval(p.ctx, h, p.point(i, j)).value != 0) {
                wiped = false;
                break;
            }
        }
        if (wiped) ++count;
    }
    return count;
}

// Empirical design quality: max over sampled code subspaces A with
// dim A = d <= r of (1/(n d)) * sum_i dim{a in A : block i of a = 0}.
inline Rational tau_estimate(const CodeParams& p, std::size_t r, std::size_t trials,
                             SplitRng& rng) {
    if (r < 1) throw InvalidParameter("tau_estimate: r must be at least 1");
    const std::size_t mn = p.n * p.m;
    Rational best(0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t d_target = 1 + rng.uniform(std::min<std::uint64_t>(r, p.k));
        LinearSubspace a = LinearSubspace::zero(mn);
        for (int attempt = 0; attempt < 64 && a.dim() == 0; ++attempt) {
            std::vector<Vec> gens;
            for (std::size_t i = 0; i < d_target; ++i) {
                gens.push_back(encode(p, random_message(p, rng)).data);
            }
            a = LinearSubspace::span(p.ctx, mn, gens);
        }
        if (a.dim() == 0) throw DegenerateSubspace("tau_estimate: could not sample nonzero A");
        std::size_t sum = 0;
        for (std::size_t i = 0; i < p.n; ++i) {
            sum += coordinate_kernel(p.ctx, a, i, p.m).dim();
        }
        Rational val(static_cast<long long>(sum),
                     static_cast<long long>(p.n) * static_cast<long long>(a.dim()));
        if (best < val) best = val;
    }
    return best;
}

}  // namespace frsgap
