#pragma once

#include <cstdint>
#include <vector>

#include "frsgap/errors.hpp"
#include "frsgap/frs.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/rational.hpp"
#include "frsgap/rng.hpp"

namespace frsgap {

struct PinStep {
    std::size_t index;       // block pinned at this step
    std::size_t dim_before;  // dim of the survivor subspace before pinning
    std::size_t dim_after;
};

struct PinSet {
    std::vector<std::size_t> coords;  // pinned blocks, in draw order
    std::vector<PinStep> trace;
};

// Iteratively pin blocks of H <= F_q^{mn} until only the zero vector
// survives.  A block i of the survivor space K is drawn with weight
// dim(K_i) + eps, where K_i is the sub-subspace vanishing on block i; blocks
// with K_i = K carry weight zero.  Weights share the denominator of eps, so
// one uniform integer draw below the scaled total selects the block exactly.
//
// Every selected block strictly drops the survivor dimension, giving
// |coords| <= dim H and a restriction kernel of exactly {0}.
inline PinSet sample_pin(const FieldContext& ctx, const LinearSubspace& h, std::size_t m,
                         const Rational& eps, SplitRng& rng) {
    if (!(Rational(0) < eps && eps < Rational(1))) {
        throw InvalidParameter("sample_pin: eps must lie in (0, 1)");
    }
    if (m == 0 || h.ambient_dim() % m != 0) {
        throw ShapeError("sample_pin: ambient dimension is not a multiple of m");
    }
    const std::size_t n = h.ambient_dim() / m;
    const std::uint64_t w_den = static_cast<std::uint64_t>(eps.den());
    const std::uint64_t w_num = static_cast<std::uint64_t>(eps.num());

    PinSet pins;
    LinearSubspace k = h;
    while (k.dim() > 0) {
        std::vector<LinearSubspace> kernels;
        std::vector<std::uint64_t> weight(n, 0);
        kernels.reserve(n);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            kernels.push_back(coordinate_kernel(ctx, k, i, m));
            if (kernels[i].dim() < k.dim()) {
                weight[i] = kernels[i].dim() * w_den + w_num;
                total += weight[i];
            }
        }
        if (total == 0) {
            throw DegenerateSubspace("sample_pin: no block can reduce the survivor space");
        }
        std::uint64_t draw = rng.uniform(total);
        std::size_t chosen = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (draw < weight[i]) {
                chosen = i;
                break;
            }
            draw -= weight[i];
        }
        pins.trace.push_back(PinStep{chosen, k.dim(), kernels[chosen].dim()});
        pins.coords.push_back(chosen);
        k = kernels[chosen];
    }
    if (pins.coords.size() > h.dim()) {
        throw Error("sample_pin: pinned more blocks than dim H");  // unreachable
    }
    return pins;
}

// Monte Carlo frequency of the event c|_S = y|_S over fresh pin sets.
// The closeness threshold (1 - tau - eps, with tau measured by the caller)
// is enforced up front; the sampling lemma promises a success rate of at
// least eps / (dim H + eps) under it.
inline Rational pin_success_estimate(const CodeParams& p, const LinearSubspace& h, const Word& c,
                                     const Word& y, const Rational& eps,
                                     const Rational& closeness_threshold, std::size_t trials,
                                     SplitRng& rng) {
    if (trials == 0) throw InvalidParameter("pin_success_estimate: need at least one trial");
    if (h.ambient_dim() != p.n * p.m) {
        throw ShapeError("pin_success_estimate: subspace must live in F_q^{mn}");
    }
    require_same_shape(c, y, "pin_success_estimate");
    if (!h.contains(p.ctx, c.data)) {
        throw PreconditionFailed("pin_success_estimate: c must be a member of H");
    }
    if (block_distance(c, y) > closeness_threshold) {
        throw PreconditionFailed("pin_success_estimate: distance from c to y exceeds threshold");
    }
    long long successes = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        PinSet pins = sample_pin(p.ctx, h, p.m, eps, rng);
        bool agree = true;
        for (auto i : pins.coords) {
            if (!c.block_equal(y, i)) {
                agree = false;
                break;
            }
        }
        if (agree) ++successes;
    }
    return Rational(successes, static_cast<long long>(trials));
}

}  // namespace frsgap
