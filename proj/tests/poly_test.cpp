#include "frsgap/poly.hpp"

#include <gtest/gtest.h>

#include "frsgap/rng.hpp"
#include "test_oracles.hpp"

namespace {

using frsgap::FieldContext;
using frsgap::FieldElement;
using frsgap::Poly;

Poly random_poly(const FieldContext& ctx, frsgap::SplitRng& rng, std::size_t max_deg) {
    Poly f;
    std::size_t len = rng.uniform(max_deg + 2);
    for (std::size_t i = 0; i < len; ++i) f.coeffs.push_back(ctx.element(rng.uniform(ctx.modulus())));
    frsgap::poly_trim(f);
    return f;
}

TEST(PolyTest, DegreeAndNormalization) {
    FieldContext ctx(17, 3);
    EXPECT_EQ(Poly{}.degree(), -1);
    EXPECT_TRUE(frsgap::poly_from(ctx, {0, 0, 0}).is_zero());
    EXPECT_EQ(frsgap::poly_from(ctx, {5}).degree(), 0);
    EXPECT_EQ(frsgap::poly_from(ctx, {1, 2, 0}).degree(), 1);
    EXPECT_EQ(frsgap::poly_from(ctx, {1, 0, 4}).degree(), 2);
    EXPECT_EQ(frsgap::poly_monomial(ctx, ctx.one(), 3).degree(), 3);
    EXPECT_TRUE(frsgap::poly_monomial(ctx, ctx.zero(), 3).is_zero());
}

TEST(PolyTest, EvaluateMatchesNaiveOracle) {
    FieldContext ctx(17, 3);
    frsgap::SplitRng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        Poly f = random_poly(ctx, rng, 6);
        std::vector<std::uint64_t> raw;
        for (auto c : f.coeffs) raw.push_back(c.value);
        std::uint64_t x = rng.uniform(17);
        EXPECT_EQ(frsgap::poly_eval(ctx, f, ctx.element(x)).value,
                  oracle::naive_poly_eval(raw, x, 17));
    }
}

TEST(PolyTest, InterpolateQuadratic) {
    FieldContext ctx(17, 3);
    std::vector<std::pair<FieldElement, FieldElement>> pts = {
        {ctx.element(1), ctx.element(2)},
        {ctx.element(2), ctx.element(5)},
        {ctx.element(3), ctx.element(10)},
    };
    Poly f = frsgap::poly_interpolate(ctx, pts);
    EXPECT_EQ(f, frsgap::poly_from(ctx, {1, 0, 1}));  // x^2 + 1
}

TEST(PolyTest, InterpolateDuplicateNodeThrows) {
    FieldContext ctx(17, 3);
    std::vector<std::pair<FieldElement, FieldElement>> pts = {
        {ctx.element(1), ctx.element(2)},
        {ctx.element(1), ctx.element(3)},
    };
    EXPECT_THROW(frsgap::poly_interpolate(ctx, pts), frsgap::DuplicateNode);
}

TEST(PolyTest, InterpolateRoundTrip) {
    FieldContext ctx(17, 3);
    frsgap::SplitRng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Poly f = random_poly(ctx, rng, 5);
        std::size_t npts = static_cast<std::size_t>(f.degree() + 1);
        if (npts == 0) npts = 1;
        std::vector<std::pair<FieldElement, FieldElement>> pts;
        for (std::size_t x = 0; x < npts; ++x) {
            FieldElement xe = ctx.element(x);
            pts.push_back({xe, frsgap::poly_eval(ctx, f, xe)});
        }
        EXPECT_EQ(frsgap::poly_interpolate(ctx, pts), f);
    }
}

TEST(PolyTest, RingHomomorphismUnderEvaluation) {
    FieldContext ctx(101, 2);
    frsgap::SplitRng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        Poly f = random_poly(ctx, rng, 5);
        Poly g = random_poly(ctx, rng, 5);
        FieldElement x = ctx.element(rng.uniform(101));
        EXPECT_EQ(frsgap::poly_eval(ctx, frsgap::poly_add(ctx, f, g), x),
                  ctx.add(frsgap::poly_eval(ctx, f, x), frsgap::poly_eval(ctx, g, x)));
        EXPECT_EQ(frsgap::poly_eval(ctx, frsgap::poly_mul(ctx, f, g), x),
                  ctx.mul(frsgap::poly_eval(ctx, f, x), frsgap::poly_eval(ctx, g, x)));
        EXPECT_EQ(frsgap::poly_eval(ctx, frsgap::poly_sub(ctx, f, g), x),
                  ctx.sub(frsgap::poly_eval(ctx, f, x), frsgap::poly_eval(ctx, g, x)));
    }
}

TEST(PolyTest, ComposeScaledAgreesWithScaledArgument) {
    FieldContext ctx(17, 3);
    frsgap::SplitRng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Poly f = random_poly(ctx, rng, 5);
        FieldElement c = ctx.element(rng.uniform(17));
        Poly g = frsgap::poly_compose_scaled(ctx, f, c);
        FieldElement x = ctx.element(rng.uniform(17));
        EXPECT_EQ(frsgap::poly_eval(ctx, g, x), frsgap::poly_eval(ctx, f, ctx.mul(c, x)));
    }
}

TEST(PolyTest, MatrixDetTwoByTwo) {
    FieldContext ctx(17, 3);
    // [[1, X], [1, 3X]] has determinant 3X - X = 2X.
    Poly one = frsgap::poly_from(ctx, {1});
    Poly x = frsgap::poly_from(ctx, {0, 1});
    Poly x3 = frsgap::poly_from(ctx, {0, 3});
    std::vector<std::vector<Poly>> m = {{one, x}, {one, x3}};
    EXPECT_EQ(frsgap::poly_matrix_det(ctx, m), frsgap::poly_from(ctx, {0, 2}));
}

TEST(PolyTest, MatrixDetShapeChecks) {
    FieldContext ctx(17, 3);
    Poly one = frsgap::poly_from(ctx, {1});
    EXPECT_THROW(frsgap::poly_matrix_det(ctx, {}), frsgap::ShapeError);
    EXPECT_THROW(frsgap::poly_matrix_det(ctx, {{one, one}}), frsgap::ShapeError);
    EXPECT_THROW(frsgap::poly_matrix_det(ctx, {{one, one}, {one}}), frsgap::ShapeError);
}

// Determinant commutes with evaluation: det(M)(x) = det(M(x)).
TEST(PolyTest, MatrixDetCommutesWithEvaluation) {
    FieldContext ctx(17, 3);
    frsgap::SplitRng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t d = 2 + rng.uniform(2);  // 2 or 3
        std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d));
        for (auto& row : m) {
            for (auto& cell : row) cell = random_poly(ctx, rng, 2);
        }
        Poly det = frsgap::poly_matrix_det(ctx, m);
        FieldElement x = ctx.element(rng.uniform(17));
        // Scalar determinant by cofactor expansion.
        std::function<FieldElement(const std::vector<std::vector<FieldElement>>&)> sdet =
            [&](const std::vector<std::vector<FieldElement>>& s) -> FieldElement {
            if (s.size() == 1) return s[0][0];
            FieldElement acc = ctx.zero();
            for (std::size_t col = 0; col < s.size(); ++col) {
                std::vector<std::vector<FieldElement>> minor;
                for (std::size_t i = 1; i < s.size(); ++i) {
                    std::vector<FieldElement> row;
                    for (std::size_t j = 0; j < s.size(); ++j) {
                        if (j != col) row.push_back(s[i][j]);
                    }
                    minor.push_back(row);
                }
                FieldElement term = ctx.mul(s[0][col], sdet(minor));
                acc = (col % 2 == 0) ? ctx.add(acc, term) : ctx.sub(acc, term);
            }
            return acc;
        };
        std::vector<std::vector<FieldElement>> mx(d, std::vector<FieldElement>(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) mx[i][j] = frsgap::poly_eval(ctx, m[i][j], x);
        }
        EXPECT_EQ(frsgap::poly_eval(ctx, det, x), sdet(mx));
    }
}

}  // namespace
