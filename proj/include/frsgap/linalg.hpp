#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/field.hpp"

namespace frsgap {

using Vec = std::vector<FieldElement>;

inline void vec_require_same_size(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size()) throw ShapeError(std::string(where) + ": size mismatch");
}

inline Vec vec_add(const FieldContext& ctx, const Vec& a, const Vec& b) {
    vec_require_same_size(a, b, "vec_add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx.add(a[i], b[i]);
    return r;
}

inline Vec vec_sub(const FieldContext& ctx, const Vec& a, const Vec& b) {
    vec_require_same_size(a, b, "vec_sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx.sub(a[i], b[i]);
    return r;
}

inline Vec vec_scale(const FieldContext& ctx, FieldElement c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx.mul(c, a[i]);
    return r;
}

inline bool vec_is_zero(const Vec& a) {
    for (auto x : a) {
        if (x.value != 0) return false;
    }
    return true;
}

struct Echelon {
    std::vector<Vec> rows;          // nonzero rows in reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row, strictly increasing
};

// Reduced row echelon form over F_q.  The output is the canonical
// representative of the row space: equal row spaces yield identical rows.
inline Echelon rref(const FieldContext& ctx, std::vector<Vec> rows) {
    Echelon e;
    if (rows.empty()) return e;
    const std::size_t ncols = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != ncols) throw ShapeError("rref: ragged rows");
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].value == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        FieldElement piv_inv = ctx.inv(rows[rank][col]);
        for (auto& x : rows[rank]) x = ctx.mul(piv_inv, x);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].value == 0) continue;
            FieldElement f = rows[r][col];
            for (std::size_t c = 0; c < ncols; ++c) {
                rows[r][c] = ctx.sub(rows[r][c], ctx.mul(f, rows[rank][c]));
            }
        }
        e.pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    e.rows = std::move(rows);
    return e;
}

// Linear subspace of F_q^D held as its canonical RREF basis.
class LinearSubspace {
  public:
    static LinearSubspace zero(std::size_t ambient) {
        LinearSubspace s;
        s.ambient_ = ambient;
        return s;
    }

    static LinearSubspace span(const FieldContext& ctx, std::size_t ambient,
                               const std::vector<Vec>& vectors) {
        for (const auto& v : vectors) {
            if (v.size() != ambient) throw ShapeError("LinearSubspace::span: wrong vector size");
            for (auto x : v) ctx.require(x);
        }
        Echelon e = rref(ctx, vectors);
        LinearSubspace s;
        s.ambient_ = ambient;
        s.basis_ = std::move(e.rows);
        s.pivots_ = std::move(e.pivots);
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Residual of v after reduction against the basis; zero iff v is a member.
    Vec reduce(const FieldContext& ctx, Vec v) const {
        if (v.size() != ambient_) throw ShapeError("LinearSubspace::reduce: wrong vector size");
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            FieldElement f = v[pivots_[r]];
            if (f.value == 0) continue;
            for (std::size_t c = 0; c < ambient_; ++c) {
                v[c] = ctx.sub(v[c], ctx.mul(f, basis_[r][c]));
            }
        }
        return v;
    }

    bool contains(const FieldContext& ctx, const Vec& v) const {
        return vec_is_zero(reduce(ctx, v));
    }

    friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const LinearSubspace& a, const LinearSubspace& b) { return !(a == b); }

  private:
    std::size_t ambient_ = 0;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

inline LinearSubspace subspace_sum(const FieldContext& ctx, const LinearSubspace& u,
                                   const LinearSubspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw ShapeError("subspace_sum: ambient mismatch");
    std::vector<Vec> all = u.basis();
    all.insert(all.end(), v.basis().begin(), v.basis().end());
    return LinearSubspace::span(ctx, u.ambient_dim(), all);
}

// Intersection via the Zassenhaus block construction: row-reduce
// [u|u; v|0] and read U cap V off the rows whose left half vanished.
inline LinearSubspace subspace_intersect(const FieldContext& ctx, const LinearSubspace& u,
                                         const LinearSubspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw ShapeError("subspace_intersect: ambient mismatch");
    }
    const std::size_t d = u.ambient_dim();
    std::vector<Vec> block;
    for (const auto& row : u.basis()) {
        Vec wide(2 * d, FieldElement{0});
        for (std::size_t i = 0; i < d; ++i) wide[i] = wide[d + i] = row[i];
        block.push_back(std::move(wide));
    }
    for (const auto& row : v.basis()) {
        Vec wide(2 * d, FieldElement{0});
        for (std::size_t i = 0; i < d; ++i) wide[i] = row[i];
        block.push_back(std::move(wide));
    }
    Echelon e = rref(ctx, std::move(block));
    std::vector<Vec> inter;
    for (const auto& row : e.rows) {
        bool left_zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (row[i].value != 0) {
                left_zero = false;
                break;
            }
        }
        if (left_zero) inter.emplace_back(row.begin() + d, row.end());
    }
    return LinearSubspace::span(ctx, d, inter);
}

// Solution space of M x = 0, where rows of M are the equations.
inline LinearSubspace nullspace(const FieldContext& ctx, const std::vector<Vec>& m,
                                std::size_t ncols) {
    for (const auto& row : m) {
        if (row.size() != ncols) throw ShapeError("nullspace: ragged rows");
    }
    Echelon e = rref(ctx, m);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(ncols, FieldElement{0});
        v[free_col] = ctx.one();
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            v[e.pivots[r]] = ctx.neg(e.rows[r][free_col]);
        }
        basis.push_back(std::move(v));
    }
    return LinearSubspace::span(ctx, ncols, basis);
}

struct LinearSolution {
    bool consistent = false;
    Vec particular;          // one solution when consistent
    LinearSubspace kernel;   // solution set = particular + kernel
};

// Solve M x = b.
inline LinearSolution solve_linear(const FieldContext& ctx, const std::vector<Vec>& m,
                                   const Vec& b, std::size_t ncols) {
    if (m.size() != b.size()) throw ShapeError("solve_linear: rhs size mismatch");
    std::vector<Vec> aug;
    aug.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != ncols) throw ShapeError("solve_linear: ragged rows");
        Vec row = m[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Echelon e = rref(ctx, std::move(aug));
    LinearSolution sol;
    sol.kernel = nullspace(ctx, m, ncols);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == ncols) return sol;  // pivot in the constant column
    }
    sol.consistent = true;
    sol.particular.assign(ncols, FieldElement{0});
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        sol.particular[e.pivots[r]] = e.rows[r][ncols];
    }
    return sol;
}

// Vectors of A whose m-entry block at block_index vanishes.
inline LinearSubspace coordinate_kernel(const FieldContext& ctx, const LinearSubspace& a,
                                        std::size_t block_index, std::size_t m) {
    if (m == 0 || a.ambient_dim() % m != 0) {
        throw ShapeError("coordinate_kernel: ambient dimension is not a multiple of m");
    }
    const std::size_t n = a.ambient_dim() / m;
    if (block_index >= n) throw IndexError("coordinate_kernel: block index out of range");
    const std::size_t d = a.dim();
    std::vector<Vec> constraints(m, Vec(d, FieldElement{0}));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < d; ++j) {
            constraints[c][j] = a.basis()[j][block_index * m + c];
        }
    }
    LinearSubspace lambda = nullspace(ctx, constraints, d);
    std::vector<Vec> vectors;
    for (const auto& lam : lambda.basis()) {
        Vec v(a.ambient_dim(), FieldElement{0});
        for (std::size_t j = 0; j < d; ++j) {
            if (lam[j].value == 0) continue;
            for (std::size_t c = 0; c < a.ambient_dim(); ++c) {
                v[c] = ctx.add(v[c], ctx.mul(lam[j], a.basis()[j][c]));
            }
        }
        vectors.push_back(std::move(v));
    }
    return LinearSubspace::span(ctx, a.ambient_dim(), vectors);
}

// Vectors of H vanishing on every block listed in S.
inline LinearSubspace restriction_kernel(const FieldContext& ctx, const LinearSubspace& h,
                                         const std::vector<std::size_t>& s, std::size_t m) {
    LinearSubspace k = h;
    for (auto i : s) k = coordinate_kernel(ctx, k, i, m);
    return k;
}

// Affine subspace anchor + directions.  The stored anchor is the
// lexicographically least member: reducing any anchor against the RREF
// direction basis zeroes every pivot coordinate, and that member is minimal.
class AffineSubspace {
  public:
    AffineSubspace(const FieldContext& ctx, Vec anchor, LinearSubspace directions)
        : dirs_(std::move(directions)) {
        if (anchor.size() != dirs_.ambient_dim()) {
            throw ShapeError("AffineSubspace: anchor size mismatch");
        }
        for (auto x : anchor) ctx.require(x);
        anchor_ = dirs_.reduce(ctx, std::move(anchor));
    }

    static AffineSubspace single_point(const FieldContext& ctx, Vec point) {
        std::size_t d = point.size();
        return AffineSubspace(ctx, std::move(point), LinearSubspace::zero(d));
    }

    // Affine hull of a nonempty point set.
    static AffineSubspace affine_span(const FieldContext& ctx, const std::vector<Vec>& points) {
        if (points.empty()) throw ShapeError("AffineSubspace::affine_span: no points");
        std::vector<Vec> diffs;
        for (std::size_t i = 1; i < points.size(); ++i) {
            diffs.push_back(vec_sub(ctx, points[i], points[0]));
        }
        return AffineSubspace(ctx, points[0],
                              LinearSubspace::span(ctx, points[0].size(), diffs));
    }

    std::size_t ambient_dim() const { return dirs_.ambient_dim(); }
    std::size_t dim() const { return dirs_.dim(); }
    const Vec& anchor() const { return anchor_; }
    const LinearSubspace& directions() const { return dirs_; }

    bool contains(const FieldContext& ctx, const Vec& v) const {
        return dirs_.contains(ctx, vec_sub(ctx, v, anchor_));
    }

    // Visit every member: anchor + sum lambda_j * basis_j, lambda an odometer
    // over F_q^dim with the first digit fastest.
    void enumerate(const FieldContext& ctx, std::uint64_t cap,
                   const std::function<void(const Vec&)>& fn) const {
        const std::uint64_t q = ctx.modulus();
        const std::size_t d = dirs_.dim();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < d; ++i) {
            unsigned __int128 t = static_cast<unsigned __int128>(total) * q;
            if (t > cap) throw EnumerationTooLarge("AffineSubspace::enumerate: q^dim exceeds cap");
            total = static_cast<std::uint64_t>(t);
        }
        std::vector<std::uint64_t> lambda(d, 0);
        Vec point = anchor_;
        for (;;) {
            fn(point);
            // Odometer step; adding basis_j on each increment keeps the point
            // current, and the q-th addition wraps it back (q * basis_j = 0).
            std::size_t j = 0;
            while (j < d) {
                lambda[j]++;
                for (std::size_t c = 0; c < point.size(); ++c) {
                    point[c] = ctx.add(point[c], dirs_.basis()[j][c]);
                }
                if (lambda[j] < q) break;
                lambda[j] = 0;
                ++j;
            }
            if (j == d) break;
        }
    }

    friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
        return a.anchor_ == b.anchor_ && a.dirs_ == b.dirs_;
    }
    friend bool operator!=(const AffineSubspace& a, const AffineSubspace& b) { return !(a == b); }

  private:
    Vec anchor_;
    LinearSubspace dirs_;
};

}  // namespace frsgap
