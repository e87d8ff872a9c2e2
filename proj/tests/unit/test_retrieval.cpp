#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "claimdecomp/error.hpp"
#include "claimdecomp/retrieval/evaluation.hpp"
#include "claimdecomp/retrieval/evidence.hpp"
#include "claimdecomp/retrieval/score_matrix.hpp"
#include "claimdecomp/retrieval/scorers.hpp"
#include "claimdecomp/retrieval/selection.hpp"
#include "support.hpp"

using namespace claimdecomp;

namespace {

ScoreMatrix matrix(std::size_t rows, std::size_t cols, std::vector<double> v) {
    return ScoreMatrix(index_ids('p', rows), index_ids('h', cols), std::move(v), "test");
}

// Okapi BM25 written against whitespace-split lowercase words, which is all
// the tokenizer does on these punctuation-free strings.
std::vector<double> bm25_oracle(const std::vector<std::string>& docs, const std::string& query, double k1,
                                double b) {
    std::vector<std::vector<std::string>> words;
    for (const auto& d : docs) {
        std::istringstream in(d);
        words.emplace_back(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>());
    }
    double avg = 0;
    for (const auto& w : words) avg += static_cast<double>(w.size());
    avg /= static_cast<double>(words.size());
    std::istringstream qin(query);
    std::vector<std::string> terms{std::istream_iterator<std::string>(qin), std::istream_iterator<std::string>()};
    std::vector<double> out(docs.size(), 0.0);
    for (const auto& t : terms) {
        double df = 0;
        for (const auto& w : words) df += std::count(w.begin(), w.end(), t) > 0 ? 1 : 0;
        const double m = static_cast<double>(docs.size());
        const double idf = std::log((m - df + 0.5) / (df + 0.5) + 1.0);
        for (std::size_t d = 0; d < docs.size(); ++d) {
            const double tf = static_cast<double>(std::count(words[d].begin(), words[d].end(), t));
            const double len = static_cast<double>(words[d].size());
            out[d] += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avg));
        }
    }
    return out;
}

}  // namespace

TEST(ScoreMatrix, ShapeAndValueChecks) {
    EXPECT_THROW(matrix(3, 2, {0, 0, 0, 0, 0}), DataError);
    EXPECT_THROW(matrix(1, 1, {std::nan("")}), DataError);
    EXPECT_THROW(ScoreMatrix(index_ids('p', 1), index_ids('h', 1), {1.5}, "x", true), DataError);
    EXPECT_NO_THROW(ScoreMatrix(index_ids('p', 1), index_ids('h', 1), {1.5}, "x", false));
    const auto m = matrix(2, 3, {1, 2, 3, 4, 5, 6});
    EXPECT_EQ(m.at(1, 0), 4);
    EXPECT_EQ(m.row_max(0), 3);
    EXPECT_EQ(m.paragraph_ids(), (std::vector<std::string>{"p0", "p1"}));
}

TEST(ScoreMatrix, JsonRoundTrip) {
    std::mt19937 rng(3);
    const auto m = ScoreMatrix(index_ids('p', 4), {"q-a", "q-b"}, testsupport::random_matrix(rng, 4, 2), "nli", true);
    std::stringstream io;
    save_scores(io, m);
    EXPECT_EQ(load_scores(io), m);
    EXPECT_EQ(score_matrix_from_json(score_matrix_to_json(m)), m);
}

TEST(ScoreMatrix, FileWithWrongCountIsRejected) {
    const std::string text =
        R"({"paragraph_ids":["a","b","c"],"hypothesis_ids":["x","y"],"scores":[0.1,0.2,0.3,0.4,0.5]})";
    EXPECT_THROW(score_matrix_from_json(text), DataError);
    EXPECT_THROW(score_matrix_from_json("{"), DataError);
}

TEST(Bm25, MatchesDirectFormula) {
    const std::vector<std::string> docs = {"a a b", "b c"};
    const auto m = bm25_scores(docs, {"a"});
    const auto oracle = bm25_oracle(docs, "a", 1.2, 0.75);
    ASSERT_EQ(m.rows(), 2u);
    EXPECT_NEAR(m.at(0, 0), std::log(2.0) * 4.4 / 3.38, 1e-12);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(m.at(i, 0), oracle[i], 1e-6);
}

TEST(Bm25, RandomCorporaMatchOracle) {
    std::mt19937 rng(17);
    const std::vector<std::string> vocab = {"tax", "rise", "jobs", "texas", "crime", "fell", "law", "budget"};
    std::uniform_int_distribution<std::size_t> w(0, vocab.size() - 1), len(1, 9), ndocs(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> docs(ndocs(rng));
        for (auto& d : docs)
            for (std::size_t i = 0, n = len(rng); i < n; ++i) d += (i ? " " : "") + vocab[w(rng)];
        std::vector<std::string> hyps(3);
        for (auto& h : hyps)
            for (std::size_t i = 0, n = len(rng); i < n; ++i) h += (i ? " " : "") + vocab[w(rng)];
        const Bm25Params params{0.5 + trial * 0.05, (trial % 5) / 4.0};
        const auto m = bm25_scores(docs, hyps, params);
        for (std::size_t j = 0; j < hyps.size(); ++j) {
            const auto oracle = bm25_oracle(docs, hyps[j], params.k1, params.b);
            for (std::size_t i = 0; i < docs.size(); ++i) EXPECT_NEAR(m.at(i, j), oracle[i], 1e-9);
        }
    }
}

TEST(Bm25, EdgeCases) {
    const auto m = bm25_scores({"a b", "a b", "c"}, {"zzz", "a"});
    EXPECT_EQ(m.at(0, 0), 0.0);
    EXPECT_EQ(m.at(1, 0), 0.0);
    EXPECT_EQ(m.at(2, 0), 0.0);
    EXPECT_EQ(m.at(0, 1), m.at(1, 1));
    EXPECT_THROW(bm25_scores({}, {"a"}), InvalidArgument);
    EXPECT_THROW(bm25_scores({"a"}, {"a"}, {0.0, 0.5}), InvalidArgument);
    EXPECT_THROW(bm25_scores({"a"}, {"a"}, {1.2, 1.5}), InvalidArgument);
}

TEST(Lexical, DistinctTokenShare) {
    const auto m = lexical_scores({"Taxes rose in Ohio.", "Crime fell."}, {"taxes rose", "taxes fell fell", ""});
    EXPECT_DOUBLE_EQ(m.at(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(m.at(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(m.at(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(m.at(1, 2), 0.0);
    EXPECT_TRUE(m.bounded());
}

TEST(ExternalScorer, ConstantMockAndPoolIndependence) {
    ExternalScorer constant(testsupport::mock_adapter("--score=0.5"), 1);
    const auto c = constant.score({"p1", "p2"}, {"h1", "h2", "h3"});
    for (double v : c.scores()) EXPECT_EQ(v, 0.5);

    const std::vector<std::string> paras = {"taxes rose in ohio", "crime fell", "the law passed", "jobs grew"};
    const std::vector<std::string> hyps = {"taxes rose", "crime rose", "jobs law"};
    ExternalScorer one(testsupport::mock_adapter(), 1);
    ExternalScorer three(testsupport::mock_adapter(), 3);
    EXPECT_EQ(one.score(paras, hyps).scores(), three.score(paras, hyps).scores());
    EXPECT_DOUBLE_EQ(one.score(paras, hyps).at(0, 0), 1.0);
}

TEST(ExternalScorer, ErrorsNameThePair) {
    AdapterClient client(testsupport::mock_adapter("--error-on=entail"));
    try {
        external_scores({"p"}, {"h"}, client);
        FAIL() << "expected ProtocolError";
    } catch (const ProtocolError& e) {
        EXPECT_NE(std::string(e.what()).find("paragraph 0 x hypothesis 0"), std::string::npos) << e.what();
    }
}

TEST(SelectTopK, Examples) {
    EXPECT_EQ(select_topk(std::vector<double>{0.9, 0.1, 0.5}, 2), (IndexSet{0, 2}));
    EXPECT_EQ(select_topk(matrix(3, 2, {0.2, 0.8, 0.7, 0.1, 0.3, 0.3}), 1), (IndexSet{0}));
    EXPECT_TRUE(select_topk(std::vector<double>{0.9, 0.1}, 0).empty());
    EXPECT_EQ(select_topk(std::vector<double>{0.5, 0.5, 0.5}, 2), (IndexSet{0, 1}));
    EXPECT_THROW(select_topk(std::vector<double>{0.5}, 2), InvalidArgument);
}

TEST(SelectTopK, MatchesSortOracleAndIsMonotoneInvariant) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 4;
        const auto m = matrix(rows, cols, testsupport::random_matrix(rng, rows, cols, trial % 2 ? 4 : 0));
        const std::size_t k = rng() % (rows + 1);
        std::vector<std::pair<double, std::size_t>> maxima;
        for (std::size_t i = 0; i < rows; ++i) {
            double best = -1;
            for (std::size_t j = 0; j < cols; ++j) best = std::max(best, m.at(i, j));
            maxima.push_back({-best, i});
        }
        std::sort(maxima.begin(), maxima.end());
        IndexSet oracle;
        for (std::size_t i = 0; i < k; ++i) oracle.insert(maxima[i].second);
        const auto got = select_topk(m, k);
        EXPECT_EQ(got, oracle);
        EXPECT_LE(got.size(), k);

        std::vector<double> shifted = m.scores();
        for (auto& v : shifted) v = 3.0 * v + 7.0;
        EXPECT_EQ(select_topk(matrix(rows, cols, shifted), k), got);
    }
}

TEST(Retrieve, MergedUsesTheLargerMaximum) {
    const auto support = matrix(2, 1, {0.9, 0.2});
    const auto refute = matrix(2, 1, {0.1, 0.8});
    EXPECT_EQ(retrieve_from_matrices(&support, &refute, RetrievalMode::Merged, 2).selected, (IndexSet{0, 1}));
    EXPECT_EQ(retrieve_from_matrices(&support, &refute, RetrievalMode::Merged, 1).selected, (IndexSet{0}));
    EXPECT_EQ(retrieve_from_matrices(&support, &refute, RetrievalMode::Refute, 1).selected, (IndexSet{1}));
    EXPECT_EQ(retrieve_from_matrices(&support, nullptr, RetrievalMode::Support, 1).selected, (IndexSet{0}));
    EXPECT_THROW(retrieve_from_matrices(&support, nullptr, RetrievalMode::Merged, 1), InvalidArgument);
    const auto other = matrix(3, 1, {0, 0, 0});
    EXPECT_THROW(retrieve_from_matrices(&support, &other, RetrievalMode::Merged, 1), InvalidArgument);
}

TEST(Retrieve, ScoresStatementsWithAScorer) {
    LexicalScorer lexical;
    const std::vector<Hypothesis> hyps = {{"taxes rose", std::string("taxes did not rise")}};
    for (auto mode : {RetrievalMode::Support, RetrievalMode::Refute, RetrievalMode::Merged}) {
        const auto r = retrieve({"anything"}, hyps, mode, lexical, 1);
        EXPECT_EQ(r.selected, (IndexSet{0}));
        EXPECT_EQ(r.mode, mode);
        EXPECT_EQ(r.k, 1u);
    }
    const auto r = retrieve({"taxes went up", "taxes did not rise at all"}, hyps, RetrievalMode::Refute, lexical, 1);
    EXPECT_EQ(r.selected, (IndexSet{1}));
    EXPECT_THROW(retrieve({"p"}, {{"s", std::nullopt}}, RetrievalMode::Refute, lexical, 1), InvalidArgument);
    EXPECT_EQ(parse_retrieval_mode(to_string(RetrievalMode::Merged)), RetrievalMode::Merged);
}

TEST(EvaluateRetrieval, Conventions) {
    EXPECT_DOUBLE_EQ(evaluate_retrieval({1, 2}, {1, 2}), 1.0);
    EXPECT_DOUBLE_EQ(evaluate_retrieval({1, 2}, {2, 3}), 0.5);
    EXPECT_DOUBLE_EQ(evaluate_retrieval({}, {}), 1.0);
    EXPECT_DOUBLE_EQ(evaluate_retrieval({}, {1}), 0.0);
    EXPECT_DOUBLE_EQ(evaluate_retrieval({1}, {}), 0.0);

    RetrievalCounts c;
    c.add({1, 2}, {2, 3});
    c.add({0}, {0});
    EXPECT_EQ(c.hits, 2u);
    EXPECT_DOUBLE_EQ(c.precision(), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(c.recall(), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(c.f1(), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(RetrievalCounts{}.f1(), 1.0);
}

TEST(RandomBaseline, DistributionAndSeed) {
    for (auto l : random_retrieval_baseline(1000, {1.0, 0.0, 0.0}, 9)) EXPECT_EQ(l, ParagraphLabel::Context);
    const auto dist = evidence_label_distribution();
    EXPECT_NEAR(dist[0] + dist[1] + dist[2], 1.0, 1e-12);
    EXPECT_NEAR(dist[0], 87.6 / 101.0, 1e-12);
    const auto draws = random_retrieval_baseline(100000, dist, 1234);
    std::array<double, 3> freq{};
    for (auto l : draws) freq[static_cast<std::size_t>(l)] += 1.0 / 100000.0;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(freq[i], dist[i], 0.005);
    EXPECT_EQ(random_retrieval_baseline(500, dist, 77), random_retrieval_baseline(500, dist, 77));
    EXPECT_THROW(random_retrieval_baseline(3, {0.5, 0.5, 0.5}, 1), InvalidArgument);
    EXPECT_THROW(random_retrieval_baseline(3, {1.5, -0.5, 0.0}, 1), InvalidArgument);
}

TEST(HumanAgreement, Examples) {
    EXPECT_DOUBLE_EQ(human_agreement({{0, 2}, {0, 2}, {0, 2}}), 1.0);
    EXPECT_NEAR(human_agreement({{1}, {1}, {2}}), 2.0 / 3.0, 1e-12);
    EXPECT_THROW(human_agreement({{1}, {1}}), InvalidArgument);
    const auto counts = human_agreement_counts({{1}, {1}, {2}});
    EXPECT_EQ(counts[2].hits, 0u);
    EXPECT_EQ(counts[0].hits, 1u);
}

TEST(Evidence, MajorityLabel) {
    using L = ParagraphLabel;
    EXPECT_EQ(majority_label({L::Support, L::Support, L::Context}), L::Support);
    EXPECT_EQ(majority_label({L::Support, L::Refute, L::Context}), L::Context);
    EXPECT_EQ(majority_label({L::Refute, L::Support}), L::Context);
    EXPECT_EQ(majority_label({L::Refute, L::Refute}), L::Refute);
    EXPECT_EQ(majority_label({}), L::Context);
}

TEST(Evidence, FixtureGoldByHand) {
    const auto records = testsupport::load_fixture();
    const auto& c1 = records[0];
    EXPECT_EQ(judged_subquestions(c1), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(judging_annotators(c1), (std::vector<std::string>{"e1", "e2", "e3"}));
    EXPECT_EQ(gold_evidence_for(c1, 0), (EvidenceGold{{1}, {3}}));
    // paragraph 3 of subquestion 1 was skipped by e2, which counts as a context vote
    EXPECT_EQ(gold_evidence_for(c1, 1), (EvidenceGold{{}, {2, 3}}));
    const auto gold = gold_evidence(c1);
    EXPECT_EQ(gold, (EvidenceGold{{1}, {2, 3}}));
    EXPECT_EQ(gold.relevant(), (IndexSet{1, 2, 3}));
    EXPECT_EQ(gold.for_mode(RetrievalMode::Support), (IndexSet{1}));
    EXPECT_EQ(gold.for_mode(RetrievalMode::Refute), (IndexSet{2, 3}));
    EXPECT_EQ(gold.for_mode(RetrievalMode::Merged), (IndexSet{1, 2, 3}));

    using L = ParagraphLabel;
    EXPECT_EQ(annotator_claim_labels(c1, "e1"), (std::vector<L>{L::Context, L::Support, L::Refute, L::Refute}));
    EXPECT_EQ(annotator_claim_labels(c1, "e2"), (std::vector<L>{L::Support, L::Support, L::Refute, L::Refute}));
    EXPECT_EQ(annotator_claim_labels(c1, "e3"), (std::vector<L>{L::Context, L::Context, L::Support, L::Refute}));
    const auto rel = annotator_relevance(c1);
    EXPECT_EQ(rel, (std::vector<IndexSet>{{1, 2, 3}, {0, 1, 2, 3}, {2, 3}}));
    EXPECT_NEAR(human_agreement(rel), (6.0 / 7 + 6.0 / 7 + 0.8) / 3, 1e-12);

    EXPECT_EQ(gold_evidence(records[2]), EvidenceGold{});  // no judgments
}

TEST(Evidence, ClaimLabelTieGoesToSupport) {
    auto r = testsupport::simple_record("t", {Answer::Yes, Answer::No});
    r.paragraph_judgments = std::vector<ParagraphJudgment>{{"e", 0, 0, ParagraphLabel::Refute},
                                                           {"e", 1, 0, ParagraphLabel::Support}};
    EXPECT_EQ(annotator_claim_labels(r, "e")[0], ParagraphLabel::Support);
    EXPECT_EQ(annotator_claim_labels(r, "e")[1], ParagraphLabel::Context);
}

TEST(Evidence, StatsOnFixture) {
    const auto s = evidence_stats(testsupport::load_fixture());
    EXPECT_EQ(s.n_claims, 3u);
    EXPECT_EQ(s.n_subquestions, 4u);
    EXPECT_DOUBLE_EQ(s.paragraphs_per_subquestion, 13.0 / 4.0);
    EXPECT_DOUBLE_EQ(s.paragraphs_per_claim, 3.0);
    // context / support / refute votes counted cell by cell: 20 / 7 / 10
    EXPECT_NEAR(s.per_subquestion_pct[0], 100.0 * 20 / 37, 1e-9);
    EXPECT_NEAR(s.per_subquestion_pct[1], 100.0 * 7 / 37, 1e-9);
    EXPECT_NEAR(s.per_subquestion_pct[2], 100.0 * 10 / 37, 1e-9);
    EXPECT_NEAR(s.per_claim_pct[0], 100.0 * 10 / 25, 1e-9);
    EXPECT_NEAR(s.per_claim_pct[1], 100.0 * 7 / 25, 1e-9);
    EXPECT_NEAR(s.per_claim_pct[2], 100.0 * 8 / 25, 1e-9);

    // rows rated by three annotators; the two-annotator claim drops out
    const double sub_kappa = testsupport::fleiss_from_counts({{3, 0, 0}, {1, 2, 0}, {3, 0, 0}, {0, 0, 3},
                                                              {2, 1, 0}, {3, 0, 0}, {0, 1, 2}, {1, 0, 2},
                                                              {0, 3, 0}, {2, 0, 1}, {3, 0, 0}});
    const double claim_kappa = testsupport::fleiss_from_counts(
        {{2, 1, 0}, {1, 2, 0}, {0, 1, 2}, {0, 0, 3}, {0, 3, 0}, {2, 0, 1}, {3, 0, 0}});
    ASSERT_TRUE(s.per_subquestion_kappa && s.per_claim_kappa);
    EXPECT_NEAR(*s.per_subquestion_kappa, sub_kappa, 1e-9);
    EXPECT_NEAR(*s.per_claim_kappa, claim_kappa, 1e-9);

    EXPECT_THROW(evidence_stats({testsupport::load_fixture()[2]}), InvalidArgument);
}
