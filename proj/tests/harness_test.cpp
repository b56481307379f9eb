#include "frsgap/harness.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using frsgap::apply_config_kv;
using frsgap::CodeParams;
using frsgap::ConfigError;
using frsgap::CorruptionModel;
using frsgap::ExperimentConfig;
using frsgap::ExperimentReport;
using frsgap::FieldContext;
using frsgap::json;
using frsgap::NotACodeword;
using frsgap::PlantedLine;
using frsgap::Rational;
using frsgap::SearchMode;
using frsgap::SplitRng;
using frsgap::Word;

CodeParams tiny_params() {
    FieldContext ctx(17, 3);
    return frsgap::make_params(ctx, 2, 4, 2);
}

ExperimentConfig tiny_cfg() {
    ExperimentConfig cfg = frsgap::preset_tiny();
    cfg.trials = 20;
    cfg.seed = 7;
    return cfg;
}

// ---------------------------------------------------------------------------
// plant_corrupted_line
// ---------------------------------------------------------------------------

TEST(PlantTest, DeltaZeroLeavesLineExact) {
    CodeParams p = tiny_params();
    SplitRng rng(11);
    Word c0 = frsgap::encode(p, frsgap::random_message(p, rng));
    Word c1 = frsgap::encode(p, frsgap::random_message(p, rng));
    PlantedLine pl = frsgap::plant_corrupted_line(p, c0, c1, Rational(0),
                                                  CorruptionModel::JointBlock, rng);
    EXPECT_EQ(pl.line.u0, c0);
    EXPECT_EQ(pl.line.u1, c1);
    EXPECT_TRUE(pl.corrupted_blocks.empty());
    EXPECT_EQ(pl.pair_distance, Rational(0));
}

TEST(PlantTest, DeltaOneRerandomizesEveryBlock) {
    CodeParams p = tiny_params();
    SplitRng rng(12);
    Word c0 = frsgap::encode(p, frsgap::random_message(p, rng));
    Word c1 = frsgap::encode(p, frsgap::random_message(p, rng));
    PlantedLine pl = frsgap::plant_corrupted_line(p, c0, c1, Rational(1),
                                                  CorruptionModel::JointBlock, rng);
    EXPECT_EQ(pl.corrupted_blocks.size(), p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        EXPECT_FALSE(pl.line.u0.block_equal(c0, i));
        EXPECT_FALSE(pl.line.u1.block_equal(c1, i));
    }
    EXPECT_EQ(pl.pair_distance, Rational(1));
}

TEST(PlantTest, QuarterCorruptsExactlyOneBlock) {
    CodeParams p = tiny_params();
    SplitRng rng(13);
    Word c0 = frsgap::encode(p, frsgap::poly_from(p.ctx, {1}));
    Word c1 = frsgap::encode(p, frsgap::poly_from(p.ctx, {0, 1}));
    PlantedLine pl = frsgap::plant_corrupted_line(p, c0, c1, Rational(1, 4),
                                                  CorruptionModel::JointBlock, rng);
    EXPECT_EQ(pl.corrupted_blocks.size(), 1u);
    EXPECT_EQ(pl.pair_distance, Rational(1, 4));
}

TEST(PlantTest, PerAlphaHealsExactlyAtRoots) {
    CodeParams p = tiny_params();
    for (std::uint64_t seed = 20; seed < 28; ++seed) {
        SplitRng rng(seed);
        Word c0 = frsgap::encode(p, frsgap::random_message(p, rng));
        Word c1 = frsgap::encode(p, frsgap::random_message(p, rng));
        PlantedLine pl = frsgap::plant_corrupted_line(p, c0, c1, Rational(1, 4),
                                                      CorruptionModel::PerAlpha, rng);
        // floor(n/4) + 1 = 2 corrupted blocks, one healing root each.
        ASSERT_EQ(pl.corrupted_blocks.size(), 2u);
        ASSERT_EQ(pl.heal_roots.size(), 2u);
        std::set<std::uint64_t> roots;
        for (auto rt : pl.heal_roots) roots.insert(rt.value);
        for (std::uint64_t a = 0; a < 17; ++a) {
            auto alpha = p.ctx.element(a);
            Word u = pl.line.at(p.ctx, alpha);
            Word c = pl.truth.at(p.ctx, alpha);
            std::size_t healed = 0;
            for (std::size_t idx = 0; idx < pl.corrupted_blocks.size(); ++idx) {
                std::size_t b = pl.corrupted_blocks[idx];
                if (u.block_equal(c, b)) {
                    ++healed;
                    EXPECT_EQ(pl.heal_roots[idx].value, a);
                }
            }
            Rational expect(static_cast<long long>(pl.corrupted_blocks.size() - healed),
                            static_cast<long long>(p.n));
            EXPECT_EQ(frsgap::block_distance(u, c), expect);
            EXPECT_EQ(healed > 0, roots.count(a) > 0);
        }
    }
}

TEST(PlantTest, RejectsNonCodewordInput) {
    CodeParams p = tiny_params();
    SplitRng rng(14);
    Word c0 = frsgap::encode(p, frsgap::random_message(p, rng));
    Word junk = frsgap::random_word(p, rng);
    ASSERT_FALSE(frsgap::is_codeword(p, junk));
    EXPECT_THROW(frsgap::plant_corrupted_line(p, junk, c0, Rational(1, 4),
                                              CorruptionModel::JointBlock, rng),
                 NotACodeword);
}

TEST(PlantTest, SameSeedReproducesThePlant) {
    CodeParams p = tiny_params();
    SplitRng rng_a(15), rng_b(15);
    Word c0 = frsgap::encode(p, frsgap::poly_from(p.ctx, {2, 5}));
    Word c1 = frsgap::encode(p, frsgap::poly_from(p.ctx, {1, 0}));
    PlantedLine a = frsgap::plant_corrupted_line(p, c0, c1, Rational(1, 2),
                                                 CorruptionModel::PerAlpha, rng_a);
    PlantedLine b = frsgap::plant_corrupted_line(p, c0, c1, Rational(1, 2),
                                                 CorruptionModel::PerAlpha, rng_b);
    EXPECT_EQ(a.line.u0, b.line.u0);
    EXPECT_EQ(a.line.u1, b.line.u1);
    EXPECT_EQ(a.corrupted_blocks, b.corrupted_blocks);
}

// ---------------------------------------------------------------------------
// Configuration plumbing
// ---------------------------------------------------------------------------

TEST(ConfigTest, PresetsHaveExpectedShapes) {
    ExperimentConfig tiny = frsgap::preset_by_name("tiny");
    EXPECT_EQ(tiny.q, 17u);
    EXPECT_EQ(tiny.m, 2u);
    EXPECT_EQ(tiny.samples, 0u);
    EXPECT_EQ(tiny.mode, SearchMode::Oracle);
    ExperimentConfig small = frsgap::preset_by_name("small");
    EXPECT_EQ(small.q, 8191u);
    EXPECT_EQ(small.n, 32u);
    EXPECT_EQ(small.k, 64u);
    EXPECT_EQ(small.mode, SearchMode::Decoder);
    EXPECT_GT(small.samples, 0u);
    EXPECT_THROW(frsgap::preset_by_name("huge"), ConfigError);
}

TEST(ConfigTest, ApplyKvParsesEveryKey) {
    ExperimentConfig cfg;
    apply_config_kv(cfg, "q", "8191");
    apply_config_kv(cfg, "gamma", "17");
    apply_config_kv(cfg, "m", "8");
    apply_config_kv(cfg, "n", "32");
    apply_config_kv(cfg, "k", "64");
    apply_config_kv(cfg, "delta", "1/3");
    apply_config_kv(cfg, "eps", "2");
    apply_config_kv(cfg, "r", "5");
    apply_config_kv(cfg, "t1", "4");
    apply_config_kv(cfg, "t2", "8");
    apply_config_kv(cfg, "a", "100");
    apply_config_kv(cfg, "retry-budget", "64");
    apply_config_kv(cfg, "window", "3");
    apply_config_kv(cfg, "trials", "9");
    apply_config_kv(cfg, "seed", "12345");
    apply_config_kv(cfg, "samples", "256");
    apply_config_kv(cfg, "ell", "2");
    apply_config_kv(cfg, "mode", "decoder");
    apply_config_kv(cfg, "choice", "farthest");
    apply_config_kv(cfg, "model", "per-alpha");
    apply_config_kv(cfg, "oracle-cap", "4096");
    apply_config_kv(cfg, "run-ca", "false");
    EXPECT_EQ(cfg.q, 8191u);
    EXPECT_EQ(cfg.delta, Rational(1, 3));
    EXPECT_EQ(cfg.eps, Rational(2));
    EXPECT_EQ(cfg.mode, SearchMode::Decoder);
    EXPECT_EQ(cfg.model, CorruptionModel::PerAlpha);
    EXPECT_FALSE(cfg.run_ca);
    EXPECT_THROW(apply_config_kv(cfg, "bogus", "1"), ConfigError);
    EXPECT_THROW(apply_config_kv(cfg, "q", "seventeen"), ConfigError);
    EXPECT_THROW(apply_config_kv(cfg, "delta", "0.25"), ConfigError);
    EXPECT_THROW(apply_config_kv(cfg, "mode", "psychic"), ConfigError);
    EXPECT_THROW(apply_config_kv(cfg, "run-ca", "maybe"), ConfigError);
}

TEST(ConfigTest, ConfigFileParsesFlatKeyValues) {
    std::string path = ::testing::TempDir() + "frsgap_config_test.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "q = 17\n";
        out << "\n";
        out << "delta=1/4   # trailing comment\n";
        out << "model = joint-block\n";
    }
    auto pairs = frsgap::load_config_file(path);
    ASSERT_EQ(pairs.size(), 3u);
    EXPECT_EQ(pairs[0].first, "q");
    EXPECT_EQ(pairs[0].second, "17");
    EXPECT_EQ(pairs[1].second, "1/4");
    EXPECT_EQ(pairs[2].second, "joint-block");
    {
        std::ofstream out(path);
        out << "just a line without equals\n";
    }
    EXPECT_THROW(frsgap::load_config_file(path), ConfigError);
    std::remove(path.c_str());
    EXPECT_THROW(frsgap::load_config_file(path), ConfigError);
}

TEST(ConfigTest, GammaZeroDerivesAPrimitiveRoot) {
    ExperimentConfig cfg = frsgap::preset_small();
    CodeParams p = cfg.code_params();
    EXPECT_EQ(p.ctx.gamma_order(), p.ctx.modulus() - 1);
    ExperimentConfig bad;
    bad.q = 15;  // composite
    EXPECT_THROW(bad.code_params(), ConfigError);
}

// ---------------------------------------------------------------------------
// run_line_gap
// ---------------------------------------------------------------------------

TEST(LineGapTest, ExactCodeLineIsAllClose) {
    // delta = 1/8 gives a zero corruption budget: the planted line IS a
    // code-line and every parameter sits at distance zero.
    ExperimentConfig cfg = tiny_cfg();
    cfg.delta = Rational(1, 8);
    cfg.model = CorruptionModel::JointBlock;
    cfg.trials = 10;
    ExperimentReport rep = frsgap::run_line_gap(cfg);
    EXPECT_FALSE(rep.violation);
    EXPECT_EQ(rep.aggregate.at("all_close").get<std::size_t>(), 10u);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.at("verdict").get<std::string>(), "all-close");
        EXPECT_EQ(t.at("close_fraction").get<std::string>(), "1/1");
        EXPECT_EQ(t.at("pair_distance").get<std::string>(), "0/1");
    }
}

TEST(LineGapTest, PlantedJointLinesAreAllCloseAndRecovered) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::JointBlock;
    cfg.trials = 30;
    cfg.seed = 21;
    ExperimentReport rep = frsgap::run_line_gap(cfg);
    EXPECT_FALSE(rep.violation);
    EXPECT_EQ(rep.aggregate.at("all_close").get<std::size_t>(), 30u);
    EXPECT_EQ(rep.aggregate.at("ca_found").get<std::size_t>(), 30u);
    EXPECT_EQ(rep.aggregate.at("ca_recovered").get<std::size_t>(), 30u);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.at("verdict").get<std::string>(), "all-close");
        EXPECT_EQ(t.at("ca").get<std::string>(), "found");
        EXPECT_TRUE(t.at("ca_recovered").get<bool>());
        EXPECT_FALSE(t.at("far_exists").get<bool>());
    }
}

TEST(LineGapTest, RandomLinesAreFarAndSparse) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::None;
    cfg.trials = 300;
    cfg.seed = 22;
    ExperimentReport rep = frsgap::run_line_gap(cfg);
    EXPECT_FALSE(rep.violation);
    EXPECT_EQ(rep.aggregate.at("violations").get<std::size_t>(), 0u);
    std::size_t zero_close = 0, far = 0;
    for (const auto& t : rep.trials) {
        if (t.at("close_count").get<std::uint64_t>() == 0) ++zero_close;
        if (t.at("far_exists").get<bool>()) ++far;
    }
    EXPECT_GE(zero_close, 290u);
    EXPECT_GE(far, 295u);
    EXPECT_LE(rep.aggregate.at("close_total").get<std::uint64_t>(), 5u);
}

TEST(LineGapTest, PerAlphaCloseCountMatchesHealingRoots) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::PerAlpha;
    cfg.trials = 50;
    cfg.seed = 23;
    ExperimentReport rep = frsgap::run_line_gap(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        // Two corrupted blocks, so between 1 (colliding roots) and 2 close
        // parameters; all other parameters sit at distance 1/2 > 1/3.
        std::uint64_t close = t.at("close_count").get<std::uint64_t>();
        EXPECT_GE(close, 1u);
        EXPECT_LE(close, 2u);
        EXPECT_TRUE(t.at("far_exists").get<bool>());
        EXPECT_EQ(t.at("verdict").get<std::string>(), "sparse");
        EXPECT_GE(t.at("l_emp").get<std::size_t>(), 1u);
    }
}

TEST(LineGapTest, ReportBytesAreReproducible) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::JointBlock;
    cfg.trials = 8;
    ExperimentReport a = frsgap::run_line_gap(cfg);
    ExperimentReport b = frsgap::run_line_gap(cfg);
    EXPECT_EQ(a.to_jsonl(), b.to_jsonl());
    // Every line parses back as JSON, framed config / trials / aggregate.
    std::istringstream in(a.to_jsonl());
    std::string line;
    std::vector<json> parsed;
    while (std::getline(in, line)) parsed.push_back(json::parse(line));
    ASSERT_EQ(parsed.size(), 10u);
    EXPECT_EQ(parsed.front().at("type").get<std::string>(), "config");
    EXPECT_EQ(parsed.back().at("type").get<std::string>(), "aggregate");
}

TEST(LineGapTest, SampledSweepEstimatesTheCloseFraction) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::PerAlpha;
    cfg.samples = 400;
    cfg.trials = 5;
    cfg.seed = 24;
    ExperimentReport rep = frsgap::run_line_gap(cfg);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.at("swept").get<std::uint64_t>(), 400u);
    }
    // True per-trial fraction is 1/17 or 2/17; the mean estimate must land
    // in a generous band around that range.
    std::uint64_t close = rep.aggregate.at("close_total").get<std::uint64_t>();
    double fraction = static_cast<double>(close) / 2000.0;
    EXPECT_GT(fraction, 0.02);
    EXPECT_LT(fraction, 0.25);
}

TEST(LineGapTest, ValidationRejectsBadConfigs) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.delta = Rational(0);
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.trials = 0;
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.t1 = 1;
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.delta = Rational(9, 10);  // far radius 6/5 >= 1
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.mode = SearchMode::Decoder;  // tiny decoder reach 1/4 < far radius 1/3
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.t1 = 5;  // t2 = 4 < t1 while correlated agreement is requested
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.q = 65537;
    cfg.gamma = 0;
    cfg.samples = 0;  // exhaustive sweep too large
    EXPECT_THROW(frsgap::run_line_gap(cfg), ConfigError);
}

TEST(LineGapTest, DecoderModeAgreesWithOracle) {
    // Window s=2 at (q=17, m=4, n=4, k=3) reaches radius 1/2, which covers
    // both blown-up radii, so decoder and oracle runs see identical trials.
    ExperimentConfig cfg;
    cfg.q = 17;
    cfg.gamma = 3;
    cfg.m = 4;
    cfg.n = 4;
    cfg.k = 3;
    cfg.delta = Rational(1, 4);
    cfg.t1 = 2;
    cfg.t2 = 4;
    cfg.a = 2;
    cfg.window = 2;
    cfg.trials = 40;
    cfg.seed = 25;
    cfg.model = CorruptionModel::None;
    cfg.run_ca = false;
    cfg.mode = SearchMode::Oracle;
    ExperimentReport oracle = frsgap::run_line_gap(cfg);
    cfg.mode = SearchMode::Decoder;
    ExperimentReport decoder = frsgap::run_line_gap(cfg);
    ASSERT_EQ(oracle.trials.size(), decoder.trials.size());
    for (std::size_t i = 0; i < oracle.trials.size(); ++i) {
        EXPECT_EQ(oracle.trials[i], decoder.trials[i]);
    }
    EXPECT_EQ(oracle.aggregate, decoder.aggregate);
}

// ---------------------------------------------------------------------------
// run_affine_gap
// ---------------------------------------------------------------------------

TEST(AffineGapTest, EllOneMatchesLineGap) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.model = CorruptionModel::None;
    cfg.trials = 20;
    cfg.seed = 30;
    cfg.ell = 1;
    ExperimentReport lines = frsgap::run_line_gap(cfg);
    ExperimentReport affine = frsgap::run_affine_gap(cfg);
    ASSERT_EQ(lines.trials.size(), affine.trials.size());
    for (std::size_t i = 0; i < lines.trials.size(); ++i) {
        EXPECT_EQ(lines.trials[i], affine.trials[i]);
    }
    EXPECT_EQ(lines.aggregate, affine.aggregate);
    EXPECT_EQ(lines.config.at("experiment").get<std::string>(), "line-gap");
    EXPECT_EQ(affine.config.at("experiment").get<std::string>(), "affine-gap");
}

TEST(AffineGapTest, AllCodeSubspaceHasDensityOne) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.ell = 2;
    cfg.model = CorruptionModel::JointBlock;
    cfg.delta = Rational(1, 8);  // zero corruption budget: U lies inside C
    cfg.trials = 4;
    cfg.seed = 31;
    ExperimentReport rep = frsgap::run_affine_gap(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.at("density").get<std::string>(), "1/1");
        EXPECT_FALSE(t.at("far_exists").get<bool>());
        EXPECT_EQ(t.at("verdict").get<std::string>(), "all-close");
    }
}

TEST(AffineGapTest, PlantedAnchorKeepsEveryPointClose) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.ell = 2;
    cfg.model = CorruptionModel::JointBlock;
    cfg.trials = 4;
    cfg.seed = 32;
    ExperimentReport rep = frsgap::run_affine_gap(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.at("density").get<std::string>(), "1/1");
        EXPECT_EQ(t.at("verdict").get<std::string>(), "all-close");
        EXPECT_EQ(t.at("corrupted_blocks").get<std::size_t>(), 1u);
    }
}

TEST(AffineGapTest, RandomSubspacesSatisfyLiftingIdentities) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.ell = 2;
    cfg.model = CorruptionModel::None;
    cfg.trials = 10;
    cfg.seed = 33;
    ExperimentReport rep = frsgap::run_affine_gap(cfg);
    EXPECT_FALSE(rep.violation);
    EXPECT_TRUE(rep.aggregate.at("bounds_ok").get<bool>());
    EXPECT_TRUE(rep.aggregate.at("multiplicity_ok").get<bool>());
    std::size_t far_trials = 0;
    for (const auto& t : rep.trials) {
        if (!t.at("far_exists").get<bool>()) continue;
        ++far_trials;
        EXPECT_TRUE(t.at("bound_ok").get<bool>());
        EXPECT_TRUE(t.at("multiplicity_ok").get<bool>());
        EXPECT_NE(t.at("verdict").get<std::string>(), "violation");
    }
    EXPECT_GE(far_trials, 8u);  // random subspaces are essentially always far
}

TEST(AffineGapTest, ValidationRejectsBadConfigs) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.ell = 0;
    EXPECT_THROW(frsgap::run_affine_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.ell = 2;
    cfg.mode = SearchMode::Decoder;
    EXPECT_THROW(frsgap::run_affine_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.ell = 2;
    cfg.model = CorruptionModel::PerAlpha;
    EXPECT_THROW(frsgap::run_affine_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.ell = 8;  // 17^8 blows the enumeration budget
    EXPECT_THROW(frsgap::run_affine_gap(cfg), ConfigError);
    cfg = tiny_cfg();
    cfg.ell = 3;
    cfg.model = CorruptionModel::JointBlock;  // needs ell <= k = 2 directions
    EXPECT_THROW(frsgap::run_affine_gap(cfg), ConfigError);
}

// ---------------------------------------------------------------------------
// pin-test / design-check / decoder-check
// ---------------------------------------------------------------------------

TEST(PinTestRun, MeetsTheBoundWithValidSamples) {
    ExperimentConfig cfg = tiny_cfg();
    cfg.experiment = "pin-test";
    cfg.eps = Rational(1, 4);
    cfg.trials = 12;
    cfg.samples = 1500;
    cfg.seed = 40;
    ExperimentReport rep = frsgap::run_pin_test(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        EXPECT_TRUE(t.at("pass").get<bool>());
        EXPECT_TRUE(t.at("invariants_ok").get<bool>());
        EXPECT_GE(t.at("dim").get<std::size_t>(), 1u);
        EXPECT_LE(t.at("dim").get<std::size_t>(), 2u);
    }
}

TEST(DesignCheckRun, RandomSubspacesStayUnderTheBound) {
    ExperimentConfig cfg;
    cfg.experiment = "design-check";
    cfg.q = 17;
    cfg.gamma = 3;
    cfg.m = 3;
    cfg.n = 2;
    cfg.k = 5;
    cfg.trials = 60;
    cfg.seed = 41;
    ExperimentReport rep = frsgap::run_design_check(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        EXPECT_TRUE(t.at("pass").get<bool>());
        EXPECT_EQ(t.at("range").get<std::string>(), "full-unit-group");
    }
}

TEST(DecoderCheckRun, RoundTripsAgainstBruteForce) {
    ExperimentConfig cfg;
    cfg.experiment = "decoder-check";
    cfg.q = 17;
    cfg.gamma = 3;
    cfg.m = 4;
    cfg.n = 4;
    cfg.k = 3;
    cfg.window = 2;
    cfg.trials = 40;
    cfg.seed = 42;
    cfg.mode = SearchMode::Oracle;
    ExperimentReport rep = frsgap::run_decoder_check(cfg);
    EXPECT_FALSE(rep.violation);
    for (const auto& t : rep.trials) {
        EXPECT_TRUE(t.at("pass").get<bool>());
        EXPECT_TRUE(t.at("brute_ok").get<bool>());
        EXPECT_TRUE(t.at("contains_truth").get<bool>());
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

TEST(SweepTest, EmptyGridYieldsEmptyStream) {
    EXPECT_TRUE(frsgap::sweep({}).empty());
}

TEST(SweepTest, GridRunsInOrder) {
    std::vector<ExperimentConfig> grid;
    for (const Rational& d : {Rational(1, 8), Rational(3, 16), Rational(1, 4)}) {
        ExperimentConfig cfg = tiny_cfg();
        cfg.model = CorruptionModel::JointBlock;
        cfg.trials = 3;
        cfg.delta = d;
        grid.push_back(cfg);
    }
    auto reports = frsgap::sweep(grid);
    ASSERT_EQ(reports.size(), 3u);
    EXPECT_EQ(reports[0].config.at("delta").get<std::string>(), "1/8");
    EXPECT_EQ(reports[1].config.at("delta").get<std::string>(), "3/16");
    EXPECT_EQ(reports[2].config.at("delta").get<std::string>(), "1/4");
}

TEST(SweepTest, ConfigErrorsAreRecordedAndTheCampaignContinues) {
    std::vector<ExperimentConfig> grid;
    ExperimentConfig bad = tiny_cfg();
    bad.trials = 0;
    grid.push_back(bad);
    ExperimentConfig good = tiny_cfg();
    good.model = CorruptionModel::JointBlock;
    good.trials = 2;
    grid.push_back(good);
    ExperimentConfig unknown = tiny_cfg();
    unknown.experiment = "teleport";
    grid.push_back(unknown);
    auto reports = frsgap::sweep(grid);
    ASSERT_EQ(reports.size(), 3u);
    EXPECT_TRUE(reports[0].config.contains("error"));
    EXPECT_FALSE(reports[1].config.contains("error"));
    EXPECT_EQ(reports[1].trials.size(), 2u);
    EXPECT_TRUE(reports[2].config.contains("error"));
}

// ---------------------------------------------------------------------------
// sweep_trend
// ---------------------------------------------------------------------------

TEST(TrendTest, TwoPointLadderFitsAReciprocalExponent) {
    frsgap::TrendReport rep = frsgap::sweep_trend({8191, 16381}, {Rational(1, 4)},
                                                  /*trials=*/12, /*samples=*/16384,
                                                  /*seed=*/50);
    ASSERT_EQ(rep.cells.size(), 2u);
    ASSERT_EQ(rep.exponents.size(), 1u);
    EXPECT_TRUE(rep.spot_checks_ok);
    EXPECT_GT(rep.mean_exponent, 0.5);
    EXPECT_LT(rep.mean_exponent, 1.5);
    // JSONL framing: config, one cell line per cell, aggregate.
    std::istringstream in(rep.to_jsonl());
    std::string line;
    std::vector<json> parsed;
    while (std::getline(in, line)) parsed.push_back(json::parse(line));
    ASSERT_EQ(parsed.size(), 4u);
    EXPECT_EQ(parsed.front().at("type").get<std::string>(), "config");
    EXPECT_EQ(parsed[1].at("type").get<std::string>(), "cell");
    EXPECT_EQ(parsed.back().at("type").get<std::string>(), "aggregate");
}

TEST(TrendTest, ValidationRejectsDegenerateLadders) {
    EXPECT_THROW(frsgap::sweep_trend({8191}, {Rational(1, 4)}, 4, 64, 1), ConfigError);
    EXPECT_THROW(frsgap::sweep_trend({8191, 16381}, {}, 4, 64, 1), ConfigError);
    EXPECT_THROW(frsgap::sweep_trend({8191, 16381}, {Rational(1, 4)}, 0, 64, 1),
                 ConfigError);
}

}  // namespace
