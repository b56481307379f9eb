#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frsgap/decoder.hpp"
#include "frsgap/errors.hpp"
#include "frsgap/frs.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/pinning.hpp"
#include "frsgap/rational.hpp"

namespace frsgap {

// Received line u(alpha) = u0 + alpha * u1 in Sigma^n.
struct Line {
    Word u0;
    Word u1;

    Word at(const FieldContext& ctx, FieldElement alpha) const {
        return word_add(ctx, u0, word_scale(ctx, alpha, u1));
    }
};

// Code-line c(alpha) = c0 + alpha * c1.  Both endpoints are verified
// codewords; the pair of parameters the line was fitted from is kept for
// audit trails.
struct CodeLine {
    Word c0;
    Word c1;
    Poly m0;
    Poly m1;
    FieldElement fit_alpha1{0};
    FieldElement fit_alpha2{0};

    Word at(const FieldContext& ctx, FieldElement alpha) const {
        return word_add(ctx, c0, word_scale(ctx, alpha, c1));
    }
    // Identity as an affine map: endpoints determine the whole line.
    bool same_line(const CodeLine& o) const { return c0 == o.c0 && c1 == o.c1; }
};

// Joint block distance on pairs: the fraction of blocks i where
// (a0_i, a1_i) differs from (b0_i, b1_i).
inline Rational pair_block_distance(const Word& a0, const Word& a1, const Word& b0,
                                    const Word& b1) {
    require_same_shape(a0, b0, "pair_block_distance");
    require_same_shape(a1, b1, "pair_block_distance");
    require_same_shape(a0, a1, "pair_block_distance");
    long long diff = 0;
    for (std::size_t i = 0; i < a0.n; ++i) {
        if (!a0.block_equal(b0, i) || !a1.block_equal(b1, i)) ++diff;
    }
    return Rational(diff, static_cast<long long>(a0.n));
}

// Fraction of blocks of w that fall outside the blockwise span
// L_i = span{u0_i, u1_i} of the line.
inline Rational line_block_span_distance(const FieldContext& ctx, const Line& line,
                                         const Word& w) {
    require_same_shape(line.u0, w, "line_block_span_distance");
    long long off = 0;
    for (std::size_t i = 0; i < w.n; ++i) {
        LinearSubspace li = LinearSubspace::span(
            ctx, w.m, {line.u0.block(i).entries, line.u1.block(i).entries});
        if (!li.contains(ctx, w.block(i).entries)) ++off;
    }
    return Rational(off, static_cast<long long>(w.n));
}

// Number of parameters beta with c(beta) = d(beta); distinct affine maps
// collide at most once, identical ones everywhere (returns q).
inline std::uint64_t line_collision_count(const FieldContext& ctx, const CodeLine& c,
                                          const CodeLine& d) {
    require_same_shape(c.c0, d.c0, "line_collision_count");
    Word s0 = word_sub(ctx, d.c0, c.c0);  // need beta * (c1 - d1) = d0 - c0
    Word s1 = word_sub(ctx, c.c1, d.c1);
    if (vec_is_zero(s1.data)) return vec_is_zero(s0.data) ? ctx.modulus() : 0;
    std::size_t j = 0;
    while (s1.data[j].value == 0) ++j;
    FieldElement beta = ctx.div(s0.data[j], s1.data[j]);
    for (std::size_t i = 0; i < s1.data.size(); ++i) {
        if (ctx.mul(beta, s1.data[i]) != s0.data[i]) return 0;
    }
    return 1;
}

// Evaluates a degree-ell word curve sum_j alpha^j w_j by Horner's rule.
inline Word word_curve_at(const FieldContext& ctx, const std::vector<Word>& coeffs,
                          FieldElement alpha) {
    Word acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
        acc = word_add(ctx, coeffs[j], word_scale(ctx, alpha, acc));
    }
    return acc;
}

// If u and c are degree-ell word curves with Delta(u(alpha), c(alpha)) <= delta
// on a parameter set A of size t > ell, the same closeness extends to every
// alpha in F_q at radius delta / (1 - ell/t).  A block where the curves differ
// as coefficient tuples can agree on at most ell parameters, so it already
// disagreed on t - ell elements of A.  Returns the exhaustive maximum distance
// and asserts the bound.
inline Rational interpolation_bound_check(const FieldContext& ctx,
                                          const std::vector<Word>& u_coeffs,
                                          const std::vector<Word>& c_coeffs,
                                          const std::vector<FieldElement>& a_set,
                                          const Rational& delta,
                                          std::uint64_t sweep_cap = (1ull << 20)) {
    if (u_coeffs.empty() || u_coeffs.size() != c_coeffs.size()) {
        throw ShapeError("interpolation_bound_check: coefficient count mismatch");
    }
    for (std::size_t j = 0; j < u_coeffs.size(); ++j) {
        require_same_shape(u_coeffs[j], u_coeffs[0], "interpolation_bound_check");
        require_same_shape(c_coeffs[j], u_coeffs[0], "interpolation_bound_check");
    }
    const std::size_t ell = u_coeffs.size() - 1;
    const std::size_t t = a_set.size();
    for (std::size_t i = 0; i < t; ++i) {
        ctx.require(a_set[i]);
        for (std::size_t j = i + 1; j < t; ++j) {
            if (a_set[i] == a_set[j]) {
                throw InvalidParameter("interpolation_bound_check: repeated parameter");
            }
        }
    }
    if (t <= ell) throw PreconditionFailed("interpolation_bound_check: needs |A| > ell");
    for (auto alpha : a_set) {
        Rational d = block_distance(word_curve_at(ctx, u_coeffs, alpha),
                                    word_curve_at(ctx, c_coeffs, alpha));
        if (d > delta) {
            throw PreconditionFailed("interpolation_bound_check: curve pair not delta-close on A");
        }
    }
    if (ctx.modulus() > sweep_cap) {
        throw EnumerationTooLarge("interpolation_bound_check: field too large to sweep");
    }
    Rational max(0);
    for (std::uint64_t v = 0; v < ctx.modulus(); ++v) {
        FieldElement alpha{v};
        Rational d = block_distance(word_curve_at(ctx, u_coeffs, alpha),
                                    word_curve_at(ctx, c_coeffs, alpha));
        if (d > max) max = d;
    }
    Rational bound = delta * Rational(static_cast<long long>(t)) /
                     Rational(static_cast<long long>(t - ell));
    if (max > bound) throw Error("interpolation_bound_check: extension bound violated");
    return max;
}

// Full enumeration of the code, message and codeword side by side.
struct CodewordTable {
    std::vector<Poly> messages;
    std::vector<Word> words;
};

inline CodewordTable build_codeword_table(const CodeParams& p, std::uint64_t cap = (1u << 20)) {
    CodewordTable t;
    enumerate_codewords(p, cap, [&](const Poly& f, const Word& w) {
        t.messages.push_back(f);
        t.words.push_back(w);
    });
    return t;
}

enum class SearchMode { Oracle, Decoder };
enum class ChoiceRule { Nearest, Farthest };

struct ChosenCodeword {
    Poly message;
    Word word;
    Rational dist;
};

// Keyed by alpha's value, so iteration walks parameters in increasing order.
using ChoiceMap = std::map<std::uint64_t, ChosenCodeword>;

// For every alpha with Delta(u(alpha), C) <= delta, picks one codeword at
// distance <= delta.  Nearest is the default rule; Farthest stresses the
// stitching guarantee with adversarial choices.  Ties break toward the
// lexicographically least message.  Decoder mode replaces the table walk with
// the list decoder and therefore requires delta within its radius.
inline ChoiceMap near_params(const CodeParams& p, const Line& line, const Rational& delta,
                             SearchMode mode = SearchMode::Oracle,
                             ChoiceRule rule = ChoiceRule::Nearest,
                             const CodewordTable* table = nullptr, std::size_t window = 2,
                             std::uint64_t cap = (1u << 20)) {
    if (!(Rational(0) < delta && delta < Rational(1))) {
        throw InvalidParameter("near_params: delta must lie in (0, 1)");
    }
    require_same_shape(line.u0, line.u1, "near_params");
    if (line.u0.n != p.n || line.u0.m != p.m) throw ShapeError("near_params: shape mismatch");
    CodewordTable local;
    if (mode == SearchMode::Oracle && table == nullptr) {
        local = build_codeword_table(p, cap);
        table = &local;
    }
    if (mode == SearchMode::Decoder && delta > candidate_space_radius(p, window)) {
        throw InvalidParameter("near_params: delta beyond the decoder's radius");
    }

    auto better = [&](const Rational& d, const Poly& f, const ChosenCodeword& cur) {
        if (d != cur.dist) return rule == ChoiceRule::Nearest ? d < cur.dist : d > cur.dist;
        return message_lex_less(f, cur.message, p.k);
    };

    ChoiceMap out;
    for (std::uint64_t v = 0; v < p.ctx.modulus(); ++v) {
        FieldElement alpha{v};
        Word y = line.at(p.ctx, alpha);
        std::optional<ChosenCodeword> best;
        auto offer = [&](const Poly& f, const Word& w, const Rational& d) {
            if (d > delta) return;
            if (!best || better(d, f, *best)) best = ChosenCodeword{f, w, d};
        };
        if (mode == SearchMode::Oracle) {
            for (std::size_t i = 0; i < table->words.size(); ++i) {
                offer(table->messages[i], table->words[i], block_distance(table->words[i], y));
            }
        } else {
            DecodeResult r = decode(p, y, delta, window, cap);
            for (const auto& c : r.list) offer(c.message, c.word, c.dist);
        }
        if (best) out.emplace(v, std::move(*best));
    }
    return out;
}

// Affine hull of the chosen codewords; the stitching argument pins inside its
// direction space.
inline AffineSubspace ambient_cluster(const FieldContext& ctx, const ChoiceMap& chosen) {
    std::vector<Vec> points;
    points.reserve(chosen.size());
    for (const auto& [v, c] : chosen) points.push_back(c.word.data);
    return AffineSubspace::affine_span(ctx, points);
}

struct StitchParams {
    Rational eps;                  // pin accuracy; must exceed 2/r
    std::size_t r = 3;             // ambient cluster dimension bound
    std::size_t t1 = 2;            // matches required per peeled stage
    std::size_t t2 = 2;            // accumulated matches for correlated agreement
    std::size_t a = 0;             // peeling floor; 0 derives r^2 * t1
    std::size_t retry_budget = 0;  // pin draws per stage; 0 derives 32 * r^2

    std::size_t resolved_a() const { return a == 0 ? r * r * t1 : a; }
    std::size_t resolved_retry_budget() const { return retry_budget == 0 ? 32 * r * r : retry_budget; }
};

inline void validate_stitch_params(const StitchParams& sp) {
    if (sp.r < 3) throw InvalidParameter("stitch: r must be at least 3");
    if (!(Rational(0) < sp.eps && sp.eps < Rational(1))) {
        throw InvalidParameter("stitch: eps must lie in (0, 1)");
    }
    if (!(sp.eps * Rational(static_cast<long long>(sp.r)) > Rational(2))) {
        throw InvalidParameter("stitch: needs eps > 2/r");
    }
    if (sp.t1 < 2) throw InvalidParameter("stitch: t1 must be at least 2");
    if (sp.t2 < sp.t1) throw InvalidParameter("stitch: needs t1 <= t2");
    if (sp.resolved_a() < 2) throw InvalidParameter("stitch: a must be at least 2");
}

struct StitchOutcome {
    CodeLine code_line;
    std::vector<std::uint64_t> matched;  // B: parameters whose choice lies on the line
    PinSet pins;
    std::size_t pin_draws = 0;           // sampling attempts consumed
    std::uint64_t anchor_alpha = 0;      // least parameter, anchors the direction space
    std::size_t cluster_dim = 0;
};

// One stitching stage.  Pins the direction space of the chosen codewords'
// affine hull until at least min_matched parameters agree with the line on
// every pinned block, then fits the code-line through the two least of them.
// Each pin draw succeeds with probability >= eps/(r+eps) >= 1/r^2 per chosen
// parameter, which the default retry budget of 32 r^2 makes a near-certainty.
inline StitchOutcome stitch(const CodeParams& p, const Line& line, const ChoiceMap& chosen,
                            const StitchParams& sp, SplitRng& rng, std::size_t min_matched = 2) {
    validate_stitch_params(sp);
    if (chosen.size() < 2) throw PreconditionFailed("stitch: needs at least two chosen codewords");
    if (min_matched < 2) min_matched = 2;

    AffineSubspace h = ambient_cluster(p.ctx, chosen);
    if (h.dim() > sp.r) {
        throw ClusterTooLarge("stitch: chosen codewords span dimension " +
                              std::to_string(h.dim()) + " > r = " + std::to_string(sp.r));
    }
    const LinearSubspace& v = h.directions();

    const std::size_t budget = sp.resolved_retry_budget();
    for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
        PinSet pins = sample_pin(p.ctx, v, p.m, sp.eps, rng);
        std::vector<std::uint64_t> b;
        for (const auto& [av, cc] : chosen) {
            Word u = line.at(p.ctx, FieldElement{av});
            bool agrees = true;
            for (auto i : pins.coords) agrees = agrees && cc.word.block_equal(u, i);
            if (agrees) b.push_back(av);
        }
        if (b.size() < min_matched) continue;

        const Word& f1 = chosen.at(b[0]).word;
        const Word& f2 = chosen.at(b[1]).word;
        FieldElement a1{b[0]};
        FieldElement a2{b[1]};
        FieldElement slope = p.ctx.inv(p.ctx.sub(a2, a1));
        Word c1 = word_scale(p.ctx, slope, word_sub(p.ctx, f2, f1));
        Word c0 = word_sub(p.ctx, f1, word_scale(p.ctx, a1, c1));

        CodeLine cl;
        cl.c0 = c0;
        cl.c1 = c1;
        cl.fit_alpha1 = a1;
        cl.fit_alpha2 = a2;
        // All of B must land on the fitted line: every chosen codeword lives
        // in the hull h, the line stays inside h, and their difference is a
        // direction vanishing on the pinned blocks, hence zero.
        for (auto av : b) {
            if (chosen.at(av).word != cl.at(p.ctx, FieldElement{av})) {
                throw Error("stitch: matched parameter off the fitted line");
            }
        }
        auto msg0 = message_of(p, c0);
        auto msg1 = message_of(p, c1);
        if (!msg0 || !msg1 || encode(p, *msg0) != c0 || encode(p, *msg1) != c1) {
            throw Error("stitch: fitted line leaves the code");
        }
        cl.m0 = std::move(*msg0);
        cl.m1 = std::move(*msg1);

        StitchOutcome out;
        out.code_line = std::move(cl);
        out.matched = std::move(b);
        out.pins = std::move(pins);
        out.pin_draws = attempt;
        out.anchor_alpha = chosen.begin()->first;
        out.cluster_dim = h.dim();
        return out;
    }
    throw StitchFailed("stitch: no pin draw matched " + std::to_string(min_matched) +
                       " parameters within " + std::to_string(budget) + " attempts");
}

struct PeelStage {
    StitchOutcome outcome;
    Rational global_radius;  // exhaustive max over alpha of Delta(u(alpha), c_s(alpha))
};

// Peels code-lines off the residual parameter set while at least a choices
// remain.  Every emitted stage matches >= t1 parameters exactly and is
// certified globally close at radius delta / (1 - 1/t1) by the interpolation
// bound with ell = 1.
inline std::vector<PeelStage> peel(const CodeParams& p, const Line& line, const ChoiceMap& chosen,
                                   const Rational& delta, const StitchParams& sp, SplitRng& rng) {
    validate_stitch_params(sp);
    std::vector<PeelStage> stages;
    ChoiceMap residual = chosen;
    while (residual.size() >= sp.resolved_a()) {
        StitchOutcome so = stitch(p, line, residual, sp, rng, sp.t1);
        std::vector<FieldElement> a_set;
        a_set.reserve(so.matched.size());
        for (auto av : so.matched) a_set.push_back(FieldElement{av});
        Rational radius = interpolation_bound_check(p.ctx, {line.u0, line.u1},
                                                    {so.code_line.c0, so.code_line.c1}, a_set,
                                                    delta);
        for (auto av : so.matched) residual.erase(av);
        stages.push_back(PeelStage{std::move(so), radius});
    }
    return stages;
}

struct AgreementResult {
    CodeLine line;
    std::vector<std::size_t> agreement;       // S: blocks where both endpoints match
    std::vector<std::uint64_t> matched;       // union of the stages' matched parameters
    Rational global_radius;                   // max over all alpha of Delta(u(alpha), c(alpha))
    std::vector<PeelStage> stages;
};

// Runs the peeling loop and looks for one code-line accumulating t2 exact
// matches across stages.  When found, the blockwise agreement set S of
// (u0, u1) with (c0, c1) covers at least a (1 - delta/(1 - 1/t2)) fraction:
// summing per-parameter agreement over the t2 matched parameters, a block
// outside S helps at most once.
inline std::optional<AgreementResult> correlated_agreement(const CodeParams& p, const Line& line,
                                                           const ChoiceMap& chosen,
                                                           const Rational& delta,
                                                           const StitchParams& sp, SplitRng& rng) {
    validate_stitch_params(sp);
    std::vector<PeelStage> stages = peel(p, line, chosen, delta, sp, rng);

    std::vector<std::size_t> order;  // representative stage per distinct line
    std::vector<std::vector<std::uint64_t>> accumulated;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const CodeLine& cl = stages[s].outcome.code_line;
        std::size_t g = 0;
        while (g < order.size() && !stages[order[g]].outcome.code_line.same_line(cl)) ++g;
        if (g == order.size()) {
            order.push_back(s);
            accumulated.emplace_back();
        }
        auto& acc = accumulated[g];
        acc.insert(acc.end(), stages[s].outcome.matched.begin(),
                   stages[s].outcome.matched.end());
    }

    std::optional<std::size_t> winner;
    for (std::size_t g = 0; g < order.size(); ++g) {
        if (accumulated[g].size() >= sp.t2 &&
            (!winner || accumulated[g].size() > accumulated[*winner].size())) {
            winner = g;
        }
    }
    if (!winner) return std::nullopt;

    AgreementResult res;
    res.line = stages[order[*winner]].outcome.code_line;
    res.matched = accumulated[*winner];
    std::sort(res.matched.begin(), res.matched.end());

    std::vector<FieldElement> a_set;
    a_set.reserve(res.matched.size());
    for (auto av : res.matched) a_set.push_back(FieldElement{av});
    res.global_radius = interpolation_bound_check(p.ctx, {line.u0, line.u1},
                                                  {res.line.c0, res.line.c1}, a_set, delta);

    for (std::size_t i = 0; i < p.n; ++i) {
        if (line.u0.block_equal(res.line.c0, i) && line.u1.block_equal(res.line.c1, i)) {
            res.agreement.push_back(i);
        }
    }
    const auto t2 = static_cast<long long>(sp.t2);
    Rational needed = (Rational(1) - delta * Rational(t2) / Rational(t2 - 1)) *
                      Rational(static_cast<long long>(p.n));
    if (Rational(static_cast<long long>(res.agreement.size())) < needed) {
        throw Error("correlated_agreement: agreement below the counting bound");
    }
    res.stages = std::move(stages);
    return res;
}

}  // namespace frsgap
