#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/frs.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/poly.hpp"
#include "frsgap/rational.hpp"

namespace frsgap {

struct Candidate {
    Poly message;
    Word word;
    Rational dist;
};

inline bool message_lex_less(const Poly& a, const Poly& b, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        if (a.coeff(i).value != b.coeff(i).value) return a.coeff(i).value < b.coeff(i).value;
    }
    return false;
}

struct DecodeResult {
    Rational radius;
    std::vector<Candidate> list;  // sorted by message, coefficient-lexicographic
};

// Reference decoder: walk all q^k codewords and keep those within radius.
inline DecodeResult brute_force_list(const CodeParams& p, const Word& y, const Rational& rho,
                                     std::uint64_t cap = 1000000) {
    require_same_shape(y, Word(p.n, p.m), "brute_force_list");
    DecodeResult res;
    res.radius = rho;
    enumerate_codewords(p, cap, [&](const Poly& f, const Word& w) {
        Rational d = block_distance(w, y);
        if (d <= rho) res.list.push_back(Candidate{f, w, d});
    });
    std::sort(res.list.begin(), res.list.end(), [&](const Candidate& a, const Candidate& b) {
        return message_lex_less(a.message, b.message, p.k);
    });
    return res;
}

// Affine space produced by the linear-algebraic interpolation step.
struct CandidateSpace {
    std::size_t s = 0;                    // window width
    std::size_t degree_param = 0;         // D
    std::size_t min_agreeing_blocks = 0;  // agreement needed for membership
    std::vector<Poly> interpolant;        // A_0 .. A_s, not all zero
    std::optional<AffineSubspace> space;  // nullopt when the system is inconsistent
};

// Guaranteed decoding radius of the window-s candidate space: any codeword
// whose block agreement meets min_agreeing_blocks is captured.
inline Rational candidate_space_radius(const CodeParams& p, std::size_t s) {
    if (s < 1 || s > p.m) throw InvalidParameter("candidate_space_radius: need 1 <= s <= m");
    const long long windows = static_cast<long long>(p.n) * (p.m - s + 1);
    long long d = (windows + 1 - static_cast<long long>(p.k) - static_cast<long long>(s));
    long long sp1 = static_cast<long long>(s) + 1;
    long long D = d <= 0 ? 0 : (d + sp1 - 1) / sp1;
    long long need = (D + p.k - 1) / (p.m - s + 1) + 1;
    return Rational(static_cast<long long>(p.n) - need, static_cast<long long>(p.n));
}

// Interpolate Q(X, Y_1..Y_s) = A_0(X) + sum_l A_l(X) Y_l with deg A_0 <=
// D + k - 1 and deg A_l <= D, vanishing on every length-s window of y.  Each
// codeword agreeing with y on a window contributes a distinct root of
// R(X) = A_0(X) + sum_l A_l(X) f(gamma^{l-1} X), and deg R <= D + k - 1, so
// any codeword agreeing on more than D + k - 1 windows solves R = 0.  The
// solution set in message space is an affine subspace of dimension <= s - 1.
inline CandidateSpace candidate_space(const CodeParams& p, const Word& y, std::size_t s,
                                      std::optional<std::size_t> degree_param = std::nullopt) {
    if (s < 1 || s > p.m) throw InvalidParameter("candidate_space: need 1 <= s <= m");
    require_same_shape(y, Word(p.n, p.m), "candidate_space");
    const std::size_t windows = p.n * (p.m - s + 1);

    CandidateSpace cs;
    cs.s = s;
    if (degree_param) {
        cs.degree_param = *degree_param;
    } else {
        // Smallest D leaving the interpolation system underdetermined by at
        // least one: (D + k) + s(D + 1) >= windows + 1.
        long long need = static_cast<long long>(windows) + 1 - static_cast<long long>(p.k) -
                         static_cast<long long>(s);
        long long sp1 = static_cast<long long>(s) + 1;
        cs.degree_param = need <= 0 ? 0 : static_cast<std::size_t>((need + sp1 - 1) / sp1);
    }
    const std::size_t D = cs.degree_param;
    const std::size_t a0_len = D + p.k;
    const std::size_t al_len = D + 1;
    const std::size_t ncols = a0_len + s * al_len;

    std::vector<Vec> rows;
    rows.reserve(windows);
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t j = 0; j + s <= p.m; ++j) {
            Vec row(ncols, FieldElement{0});
            const FieldElement x = p.point(i, j);
            FieldElement xe = p.ctx.one();
            for (std::size_t e = 0; e < a0_len; ++e) {
                row[e] = xe;
                xe = p.ctx.mul(xe, x);
            }
            for (std::size_t l = 1; l <= s; ++l) {
                const FieldElement yv = y.at(i, j + l - 1);
                xe = p.ctx.one();
                for (std::size_t e = 0; e < al_len; ++e) {
                    row[a0_len + (l - 1) * al_len + e] = p.ctx.mul(yv, xe);
                    xe = p.ctx.mul(xe, x);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    LinearSubspace kern = nullspace(p.ctx, rows, ncols);
    if (kern.dim() == 0) {
        throw InterpolationInfeasible("candidate_space: no nonzero interpolant at D = " +
                                      std::to_string(D));
    }
    const Vec& q_vec = kern.basis().front();  // canonical choice: first RREF basis vector
    cs.interpolant.reserve(s + 1);
    cs.interpolant.push_back(
        poly_from_vec(p.ctx, Vec(q_vec.begin(), q_vec.begin() + static_cast<long>(a0_len))));
    for (std::size_t l = 1; l <= s; ++l) {
        auto begin = q_vec.begin() + static_cast<long>(a0_len + (l - 1) * al_len);
        cs.interpolant.push_back(poly_from_vec(p.ctx, Vec(begin, begin + static_cast<long>(al_len))));
    }

    cs.min_agreeing_blocks = (D + p.k - 1) / (p.m - s + 1) + 1;

    // R = 0 as a linear system in the k message coefficients: the X^e
    // coefficient of sum_l A_l(X) f(gamma^{l-1} X) is
    // sum_l sum_c A_l[e-c] gamma^{(l-1)c} f_c.
    const std::size_t deg_r = D + p.k;
    std::vector<Vec> m(deg_r, Vec(p.k, FieldElement{0}));
    Vec rhs(deg_r, FieldElement{0});
    for (std::size_t e = 0; e < deg_r; ++e) rhs[e] = p.ctx.neg(cs.interpolant[0].coeff(e));
    for (std::size_t c = 0; c < p.k; ++c) {
        const FieldElement gc = p.ctx.pow(p.ctx.gamma(), c);
        FieldElement g_pow = p.ctx.one();  // gamma^{(l-1) c}
        for (std::size_t l = 1; l <= s; ++l) {
            const Poly& al = cs.interpolant[l];
            for (std::size_t e = c; e < deg_r; ++e) {
                FieldElement coeff = al.coeff(e - c);
                if (coeff.value != 0) {
                    m[e][c] = p.ctx.add(m[e][c], p.ctx.mul(coeff, g_pow));
                }
            }
            g_pow = p.ctx.mul(g_pow, gc);
        }
    }
    auto sol = solve_linear(p.ctx, m, rhs, p.k);
    if (sol.consistent) {
        cs.space.emplace(p.ctx, sol.particular, sol.kernel);
        if (cs.space->dim() + 1 > s) {
            throw Error("candidate_space: solution dimension exceeds s - 1");
        }
    }
    return cs;
}

// Filter the affine candidate space down to true codewords within rho.
inline DecodeResult prune(const CodeParams& p, const CandidateSpace& cs, const Word& y,
                          const Rational& rho, std::uint64_t cap = 1000000) {
    DecodeResult res;
    res.radius = rho;
    if (!cs.space) return res;
    cs.space->enumerate(p.ctx, cap, [&](const Vec& coeffs) {
        Poly f = poly_from_vec(p.ctx, coeffs);
        Word w = encode(p, f);
        Rational d = block_distance(w, y);
        if (d <= rho) res.list.push_back(Candidate{f, w, d});
    });
    std::sort(res.list.begin(), res.list.end(), [&](const Candidate& a, const Candidate& b) {
        return message_lex_less(a.message, b.message, p.k);
    });
    return res;
}

inline DecodeResult decode(const CodeParams& p, const Word& y, const Rational& rho, std::size_t s,
                           std::uint64_t cap = 1000000) {
    return prune(p, candidate_space(p, y, s), y, rho, cap);
}

}  // namespace frsgap
