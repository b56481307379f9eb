#include "frsgap/rng.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace {

using frsgap::SplitRng;

TEST(RngTest, SameSeedSameSequence) {
    SplitRng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngTest, StreamsAreIndependentOfParentState) {
    SplitRng a(42);
    SplitRng early = a.stream(5);
    for (int i = 0; i < 17; ++i) a.next_u64();
    SplitRng late = a.stream(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(early.next_u64(), late.next_u64());
}

TEST(RngTest, DistinctStreamsDiffer) {
    SplitRng root(42);
    SplitRng s0 = root.stream(0), s1 = root.stream(1);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (s0.next_u64() == s1.next_u64());
    EXPECT_LT(same, 4);
}

TEST(RngTest, UniformStaysInBounds) {
    SplitRng rng(1);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 17ull, 1000ull, (1ull << 62)}) {
        for (int i = 0; i < 200; ++i) EXPECT_LT(rng.uniform(bound), bound);
    }
    EXPECT_THROW(rng.uniform(0), frsgap::InvalidParameter);
}

TEST(RngTest, UniformCoversSmallRange) {
    SplitRng rng(3);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; ++i) seen[rng.uniform(7)]++;
    for (int v : seen) {
        EXPECT_GT(v, 800);
        EXPECT_LT(v, 1200);
    }
}

}  // namespace
