#pragma once

#include <cstdint>
#include <random>

#include "frsgap/errors.hpp"

namespace frsgap {

// Seedable random source with cheap derived streams.
//
// Streams are keyed by (seed, stream index) through std::seed_seq, whose
// expansion is fully specified by the standard, so every stream is
// reproducible across platforms and compilers.  Bounded draws use rejection
// sampling on raw mt19937_64 output; std::uniform_int_distribution is
// implementation-defined and would break byte-identical reports.
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {
        std::seed_seq seq{seed, stream};
        engine_.seed(seq);
    }

    // Derived stream for trial `index`; independent of draws made here.
    SplitRng stream(std::uint64_t index) const { return SplitRng(seed_, index); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [0, bound), unbiased.
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound == 0) throw InvalidParameter("SplitRng::uniform: bound must be positive");
        std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t x = engine_();
            if (rem == 0 || x < 0 - rem) return x % bound;
        }
    }

    bool coin() { return (engine_() & 1u) != 0; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace frsgap
