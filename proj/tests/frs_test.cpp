#include "frsgap/frs.hpp"

#include <gtest/gtest.h>

#include <set>

#include "frsgap/rng.hpp"

namespace {

using frsgap::CodeParams;
using frsgap::FieldContext;
using frsgap::FieldElement;
using frsgap::Poly;
using frsgap::Rational;
using frsgap::Word;

CodeParams tiny_params() {
    FieldContext ctx(17, 3);
    return frsgap::make_params(ctx, 2, 4, 2);
}

TEST(FrsTest, DefaultBasepointLayout) {
    CodeParams p = tiny_params();
    // alpha_i = gamma^{m(i-1)} = 3^0, 3^2, 3^4, 3^6 mod 17.
    ASSERT_EQ(p.basepoints.size(), 4u);
    EXPECT_EQ(p.basepoints[0].value, 1u);
    EXPECT_EQ(p.basepoints[1].value, 9u);
    EXPECT_EQ(p.basepoints[2].value, 13u);
    EXPECT_EQ(p.basepoints[3].value, 15u);
    EXPECT_EQ(p.rate(), Rational(1, 4));
}

TEST(FrsTest, EncodeIdentityMessage) {
    CodeParams p = tiny_params();
    Word w = frsgap::encode(p, frsgap::poly_from(p.ctx, {0, 1}));  // f(x) = x
    // Blocks (f(a), f(3a)) at a = 1, 9, 13, 15.
    std::vector<std::uint64_t> expected = {1, 3, 9, 10, 13, 5, 15, 11};
    ASSERT_EQ(w.data.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(w.data[i].value, expected[i]) << "flat index " << i;
    }
    EXPECT_EQ(w.block(1).entries[0].value, 9u);
    EXPECT_EQ(w.block(1).entries[1].value, 10u);
}

TEST(FrsTest, EncodeConstantMessage) {
    CodeParams p = tiny_params();
    Word w = frsgap::encode(p, frsgap::poly_from(p.ctx, {1}));
    for (auto x : w.data) EXPECT_EQ(x.value, 1u);
}

TEST(FrsTest, ParameterValidation) {
    FieldContext ctx(17, 3);
    EXPECT_THROW(frsgap::make_params(ctx, 2, 4, 9), frsgap::DegreeOverflow);   // k > mn
    EXPECT_THROW(frsgap::make_params(ctx, 2, 9, 2), frsgap::FieldTooSmall);    // q <= mn
    EXPECT_THROW(frsgap::make_params(ctx, 1, 4, 2), frsgap::InvalidParameter); // m < 2
    FieldContext low_order(17, 16);  // 16 has order 2 < mn = 8
    EXPECT_THROW(frsgap::make_params(low_order, 2, 4, 2), frsgap::OrderTooSmall);
    // Overlapping gamma orbits: basepoints 1 and 3 share the point 3.
    EXPECT_THROW(
        frsgap::make_params(ctx, 2, 2, 2, {ctx.element(1), ctx.element(3)}),
        frsgap::PointCollision);
    EXPECT_THROW(
        frsgap::make_params(ctx, 2, 2, 2, {ctx.element(1), ctx.element(0)}),
        frsgap::InvalidBasepoint);
}

TEST(FrsTest, EncodeRejectsOversizedMessage) {
    CodeParams p = tiny_params();
    EXPECT_THROW(frsgap::encode(p, frsgap::poly_from(p.ctx, {0, 0, 1})), frsgap::DegreeOverflow);
}

TEST(FrsTest, EncodeIsLinear) {
    CodeParams p = tiny_params();
    frsgap::SplitRng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Poly f = frsgap::random_message(p, rng);
        Poly g = frsgap::random_message(p, rng);
        FieldElement a = p.ctx.element(rng.uniform(17));
        FieldElement b = p.ctx.element(rng.uniform(17));
        Poly comb = frsgap::poly_add(p.ctx, frsgap::poly_scale(p.ctx, a, f),
                                     frsgap::poly_scale(p.ctx, b, g));
        Word lhs = frsgap::encode(p, comb);
        Word rhs = frsgap::word_add(
            p.ctx, frsgap::word_scale(p.ctx, a, frsgap::encode(p, f)),
            frsgap::word_scale(p.ctx, b, frsgap::encode(p, g)));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(FrsTest, BlockDistanceIsAMetric) {
    CodeParams p = tiny_params();
    frsgap::SplitRng rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        Word x = frsgap::random_word(p, rng);
        Word y = frsgap::random_word(p, rng);
        Word z = frsgap::random_word(p, rng);
        EXPECT_EQ(frsgap::block_distance(x, x), Rational(0));
        EXPECT_EQ(frsgap::block_distance(x, y), frsgap::block_distance(y, x));
        EXPECT_LE(frsgap::block_distance(x, z),
                  frsgap::block_distance(x, y) + frsgap::block_distance(y, z));
        if (!(x == y)) EXPECT_GT(frsgap::block_distance(x, y), Rational(0));
    }
}

TEST(FrsTest, BlockDistanceCountsBlocks) {
    CodeParams p = tiny_params();
    Word a = frsgap::encode(p, frsgap::poly_from(p.ctx, {0, 1}));
    Word b = a;
    EXPECT_EQ(frsgap::block_distance(a, b), Rational(0));
    b.at(2, 0) = p.ctx.add(b.at(2, 0), p.ctx.one());
    EXPECT_EQ(frsgap::block_distance(a, b), Rational(1, 4));
    b.at(2, 1) = p.ctx.add(b.at(2, 1), p.ctx.one());
    EXPECT_EQ(frsgap::block_distance(a, b), Rational(1, 4));  // same block
    b.at(0, 0) = p.ctx.add(b.at(0, 0), p.ctx.one());
    EXPECT_EQ(frsgap::block_distance(a, b), Rational(1, 2));
    Word wrong(3, 2);
    EXPECT_THROW(frsgap::block_distance(a, wrong), frsgap::ShapeError);
}

TEST(FrsTest, EnumerationCountsAndMinWeight) {
    CodeParams p = tiny_params();
    std::set<std::vector<std::uint64_t>> words;
    std::size_t min_weight = p.n + 1;
    std::size_t count = 0;
    frsgap::enumerate_codewords(p, 1000, [&](const Poly& f, const Word& w) {
        ++count;
        std::vector<std::uint64_t> raw;
        for (auto x : w.data) raw.push_back(x.value);
        words.insert(raw);
        if (!f.is_zero()) min_weight = std::min(min_weight, frsgap::block_weight(w));
    });
    EXPECT_EQ(count, 289u);        // 17^2 messages
    EXPECT_EQ(words.size(), 289u); // injective encoding
    // Degree <= 1 messages have at most one root, so no block of two distinct
    // evaluation points can vanish: every nonzero codeword has full weight.
    EXPECT_EQ(min_weight, 4u);
    EXPECT_THROW(frsgap::enumerate_codewords(p, 100, [](const Poly&, const Word&) {}),
                 frsgap::EnumerationTooLarge);
}

TEST(FrsTest, DistanceBoundHolds) {
    CodeParams p = tiny_params();
    // Relative block distance of distinct codewords is at least 1 - R.
    Rational one_minus_r = Rational(1) - p.rate();
    std::vector<Word> all;
    frsgap::enumerate_codewords(p, 1000, [&](const Poly&, const Word& w) { all.push_back(w); });
    frsgap::SplitRng rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
        const Word& a = all[rng.uniform(all.size())];
        const Word& b = all[rng.uniform(all.size())];
        if (a == b) continue;
        EXPECT_GE(frsgap::block_distance(a, b), one_minus_r);
    }
}

TEST(FrsTest, MessageRecovery) {
    CodeParams p = tiny_params();
    frsgap::SplitRng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        Poly f = frsgap::random_message(p, rng);
        Word w = frsgap::encode(p, f);
        auto back = frsgap::message_of(p, w);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, f);
        // Any single-coordinate corruption leaves the code.
        Word bad = w;
        std::size_t pos = rng.uniform(bad.data.size());
        bad.data[pos] = p.ctx.add(bad.data[pos], p.ctx.one());
        EXPECT_FALSE(frsgap::message_of(p, bad).has_value());
    }
}

TEST(FrsTest, SymbolAccessors) {
    CodeParams p = tiny_params();
    Word w(4, 2);
    frsgap::Symbol s;
    s.entries = {p.ctx.element(5), p.ctx.element(6)};
    w.set_block(2, s);
    EXPECT_EQ(w.block(2), s);
    EXPECT_EQ(w.at(2, 0).value, 5u);
    EXPECT_EQ(w.at(2, 1).value, 6u);
    EXPECT_THROW(w.block(4), frsgap::IndexError);
    frsgap::Symbol narrow;
    narrow.entries = {p.ctx.element(1)};
    EXPECT_THROW(w.set_block(0, narrow), frsgap::ShapeError);
    EXPECT_THROW(frsgap::word_from_vec(4, 2, frsgap::Vec(7)), frsgap::ShapeError);
}

}  // namespace
