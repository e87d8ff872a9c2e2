#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "claimdecomp/aggregation/aggregation.hpp"
#include "claimdecomp/error.hpp"
#include "support.hpp"

using namespace claimdecomp;

namespace {

constexpr Answer Y = Answer::Yes;
constexpr Answer N = Answer::No;
constexpr Answer U = Answer::Unknown;

// Interval table written out by hand: label i covers [i/6, (i+1)/6), and the
// last one also takes 1.0.
int interval_oracle(double v) {
    for (int i = 0; i < 5; ++i)
        if (v < (i + 1) / 6.0) return i;
    return 5;
}

}  // namespace

TEST(Aggregate, FractionOfYes) {
    EXPECT_DOUBLE_EQ(aggregate_veracity({{Y, Y, N, N}, std::nullopt}), 0.5);
    EXPECT_DOUBLE_EQ(aggregate_veracity({{Y, Y, Y}, std::nullopt}), 1.0);
    EXPECT_DOUBLE_EQ(aggregate_veracity({{Y, N, U}, std::nullopt}), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(aggregate_veracity({{Y, N, U}, std::nullopt}, UnknownPolicy::Exclude), 0.5);
}

TEST(Aggregate, MaskAndErrors) {
    EXPECT_DOUBLE_EQ(aggregate_veracity({{Y, N, N}, std::vector<bool>{true, true, false}}), 0.5);
    EXPECT_THROW(aggregate_veracity({{}, std::nullopt}), InvalidArgument);
    EXPECT_THROW(aggregate_veracity({{Y, N}, std::vector<bool>{true}}), InvalidArgument);
    EXPECT_THROW(aggregate_veracity({{Y, N}, std::vector<bool>{false, false}}), InvalidArgument);
    EXPECT_THROW(aggregate_veracity({{U, U}, std::nullopt}, UnknownPolicy::Exclude), InvalidArgument);
}

TEST(ScoreToLabel, BoundariesAndEndpoints) {
    EXPECT_EQ(score_to_label(0.5), Veracity::HalfTrue);
    EXPECT_EQ(score_to_label(0.0), Veracity::PantsOnFire);
    EXPECT_EQ(score_to_label(1.0), Veracity::True);
    EXPECT_EQ(score_to_label(1.0 / 6.0), Veracity::False);
    EXPECT_EQ(score_to_label(std::nextafter(1.0 / 6.0, 0.0)), Veracity::PantsOnFire);
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(ordinal(score_to_label(k / 6.0)), std::min(k, 5)) << k;
    EXPECT_THROW(score_to_label(-1e-12), InvalidArgument);
    EXPECT_THROW(score_to_label(1.0 + 1e-12), InvalidArgument);
    EXPECT_THROW(score_to_label(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
}

TEST(ScoreToLabel, MonotoneOnGrid) {
    int prev = 0;
    for (int i = 0; i <= 100000; ++i) {
        const double v = i / 100000.0;
        const int o = ordinal(score_to_label(v));
        ASSERT_GE(o, prev) << v;
        ASSERT_EQ(o, interval_oracle(v)) << v;
        prev = o;
    }
}

TEST(PredictClaim, Examples) {
    const auto fig = testsupport::simple_record("f", {Y, Y, N, N}, Veracity::BarelyTrue);
    EXPECT_EQ(predict_claim(fig, 0), Veracity::HalfTrue);
    EXPECT_NE(predict_claim(fig, 0), fig.gold_label);
    EXPECT_EQ(predict_claim(testsupport::simple_record("s", {Y}), 0), Veracity::True);
    EXPECT_EQ(predict_claim(testsupport::simple_record("m", {Y, N, N}), 0, std::vector<bool>{true, true, false}),
              Veracity::HalfTrue);
    EXPECT_THROW(predict_claim(fig, 1), InvalidArgument);
}

TEST(SelectAnswers, AnnotationChoices) {
    const auto records = testsupport::load_fixture();
    const auto& c1 = records[0];  // 3 then 2 subquestions
    EXPECT_EQ(select_annotation(c1, AnnotationChoice::Larger), 0u);
    EXPECT_EQ(select_annotation(c1, AnnotationChoice::Second), 1u);
    EXPECT_EQ(select_annotation(c1, AnnotationChoice::Merged), std::nullopt);
    EXPECT_EQ(select_answers(c1, AnnotationChoice::Larger), (std::vector<Answer>{Y, N, Y}));
    EXPECT_EQ(select_answers(c1, AnnotationChoice::Second), (std::vector<Answer>{Y, N}));
    EXPECT_EQ(select_answers(c1, AnnotationChoice::Merged), (std::vector<Answer>{Y, N, Y, Y, N}));

    const auto& c4 = records[3];  // 2 then 1
    EXPECT_EQ(select_annotation(c4, AnnotationChoice::Larger), 0u);
    const auto& c2 = records[1];  // a single annotation
    EXPECT_EQ(select_annotation(c2, AnnotationChoice::Second), std::nullopt);
    EXPECT_TRUE(select_answers(c2, AnnotationChoice::Second).empty());

    auto tie = testsupport::simple_record("t", {N});
    tie.annotations.push_back(tie.annotations[0]);
    tie.annotations[1].subquestions[0].answer = Y;
    EXPECT_EQ(select_answers(tie, AnnotationChoice::Larger), (std::vector<Answer>{N}));
}

TEST(Baseline, MostFrequentIsHalfTrue) {
    const std::vector<Veracity> golds(50, Veracity::False);
    for (auto v : baseline(BaselineKind::MostFrequent, golds, std::nullopt, 1)) EXPECT_EQ(v, Veracity::HalfTrue);
    const auto dist = corpus_label_distribution();
    double sum = 0;
    for (double p : dist) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(dist[3], 0.24);
}

TEST(Baseline, UniformFrequencies) {
    const std::vector<Veracity> golds(60000, Veracity::True);
    const auto preds = baseline(BaselineKind::RandomUniform, golds, std::nullopt, 99);
    std::array<int, 6> counts{};
    for (auto v : preds) ++counts[static_cast<std::size_t>(ordinal(v))];
    for (int c : counts) EXPECT_NEAR(c / 60000.0, 1.0 / 6.0, 0.01);
}

TEST(Baseline, LabelDistFrequenciesAndPointMass) {
    const std::vector<Veracity> golds(60000, Veracity::True);
    const auto dist = corpus_label_distribution();
    const auto preds = baseline(BaselineKind::RandomLabelDist, golds, std::nullopt, 5);
    std::array<int, 6> counts{};
    for (auto v : preds) ++counts[static_cast<std::size_t>(ordinal(v))];
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(counts[i] / 60000.0, dist[i], 0.01);

    LabelDistribution point{};
    point[5] = 1.0;
    for (auto v : baseline(BaselineKind::RandomLabelDist, std::vector<Veracity>(100, Veracity::False), point, 3))
        EXPECT_EQ(v, Veracity::True);
    LabelDistribution bad{};
    bad[0] = 0.5;
    EXPECT_THROW(baseline(BaselineKind::RandomLabelDist, golds, bad, 1), InvalidArgument);
}

TEST(Baseline, SeedDeterminesOutput) {
    const std::vector<Veracity> golds(500, Veracity::True);
    EXPECT_EQ(baseline(BaselineKind::RandomUniform, golds, std::nullopt, 42),
              baseline(BaselineKind::RandomUniform, golds, std::nullopt, 42));
    EXPECT_NE(baseline(BaselineKind::RandomUniform, golds, std::nullopt, 42),
              baseline(BaselineKind::RandomUniform, golds, std::nullopt, 43));
}

TEST(EvaluateClassifier, Identity) {
    const std::vector<Veracity> g = {Veracity::True, Veracity::False, Veracity::False, Veracity::HalfTrue};
    const auto r = evaluate_classifier(g, g);
    EXPECT_DOUBLE_EQ(r.micro_f1, 1.0);
    EXPECT_DOUBLE_EQ(r.mae, 0.0);
    // three classes present with F1 = 1, three absent with F1 = 0
    EXPECT_DOUBLE_EQ(r.macro_f1, 0.5);
}

TEST(EvaluateClassifier, ConstantShift) {
    std::vector<Veracity> g, p;
    for (int i = 0; i < 5; ++i) {
        g.push_back(veracity_from_ordinal(i));
        p.push_back(veracity_from_ordinal(i + 1));
    }
    const auto r = evaluate_classifier(p, g);
    EXPECT_DOUBLE_EQ(r.mae, 1.0);
    EXPECT_DOUBLE_EQ(r.micro_f1, 0.0);
    EXPECT_THROW(evaluate_classifier({}, {}), InvalidArgument);
    EXPECT_THROW(evaluate_classifier(p, {Veracity::True}), InvalidArgument);
}

TEST(EvaluateClassifier, MatchesCountingOracle) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> lab(0, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<Veracity> p(n), g(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = veracity_from_ordinal(lab(rng));
            g[i] = veracity_from_ordinal(lab(rng));
        }
        std::array<double, 6> tp{}, fp{}, fn{};
        double correct = 0, abs_err = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int a = ordinal(p[i]), b = ordinal(g[i]);
            if (a == b) {
                ++tp[a];
                ++correct;
            } else {
                ++fp[a];
                ++fn[b];
            }
            abs_err += std::abs(a - b);
        }
        double macro = 0;
        for (int c = 0; c < 6; ++c) {
            const double denom = 2 * tp[c] + fp[c] + fn[c];
            macro += denom > 0 ? 2 * tp[c] / denom : 0.0;
        }
        const auto r = evaluate_classifier(p, g);
        EXPECT_NEAR(r.macro_f1, macro / 6, 1e-12);
        EXPECT_NEAR(r.micro_f1, correct / n, 1e-12);
        EXPECT_NEAR(r.mae, abs_err / n, 1e-12);
        EXPECT_DOUBLE_EQ(r.mae, evaluate_classifier(g, p).mae);
    }
}
