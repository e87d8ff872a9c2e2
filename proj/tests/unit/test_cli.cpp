#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "cli_cases.hpp"
#include "support.hpp"

using testsupport::run_cli;

namespace {

const std::string kData = testsupport::fixture("mini_dataset.jsonl");

nlohmann::json json_report(const std::vector<std::string>& args) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, HelpAndVersion) {
    const auto help = run_cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("retrieve"), std::string::npos);
    const auto version = run_cli({"--version"});
    EXPECT_EQ(version.code, 0);
    EXPECT_NE(version.out.find("claimdecomp"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"stats"}).code, 2);
    EXPECT_EQ(run_cli({"stats", "--dataset", kData, "--report", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"stats", "--dataset", "/nonexistent/file.jsonl"}).code, 2);
    EXPECT_EQ(run_cli({"stats", "--dataset", kData, "--split", "train"}).code, 2);
    EXPECT_EQ(run_cli({"aggregate", "--dataset", kData, "--jobs", "0"}).code, 2);
    EXPECT_EQ(run_cli({"retrieve", "--dataset", kData, "--k", "many"}).code, 2);
    const auto r = run_cli({"stats", "--dataset", kData, "--bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
}

TEST(Cli, DataErrorsExitOne) {
    const auto r = run_cli({"stats", "--dataset", testsupport::fixture("ratings.jsonl")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"stats", "--dataset", kData, "--splits", testsupport::fixture("mini_splits.json"), "--split",
                       "dev"})
                  .code,
              1);
    EXPECT_EQ(run_cli({"eval-decomp", "--dataset", kData, "--generated", testsupport::fixture("generated.jsonl"),
                       "--sim", "matrix:" + testsupport::fixture("matrix_scores.jsonl")})
                  .code,
              1);
}

TEST(Cli, ExternalScorerThatExitsIsAProtocolFailure) {
    const auto r = run_cli({"retrieve", "--dataset", kData, "--scorer", "external:true", "--converter", "rule"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("adapter"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, StatsTableOne) {
    const auto j = json_report({"stats", "--dataset", kData, "--splits", testsupport::fixture("mini_splits.json"),
                                "--split", "train", "--report", "json"});
    EXPECT_EQ(j["command"], "stats");
    const auto& row = j["tables"][0]["rows"][0];
    EXPECT_EQ(row["split"], "train");
    EXPECT_EQ(row["claims"], 2);
    EXPECT_EQ(row["subquestions"], 8);
}

TEST(Cli, AggregateTableFive) {
    const auto j = json_report({"aggregate", "--dataset", kData, "--table", "5", "--report", "json"});
    const auto& rows = j["tables"][0]["rows"];
    ASSERT_EQ(rows.size(), 4u);
    const auto& qa = rows[3];
    EXPECT_EQ(qa["method"], "question-aggregation");
    // larger annotations give mostly-true (2/3 yes), mostly-true (3/4), pants-on-fire
    // and pants-on-fire against half-true, mostly-true, false and pants-on-fire
    EXPECT_DOUBLE_EQ(qa["micro_f1"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(qa["mae"].get<double>(), 0.5);
}

TEST(Cli, MaskFileAndUnknownPolicy) {
    const std::string mask = ::testing::TempDir() + "mask.jsonl";
    {
        std::ofstream(mask) << R"({"id": "c1", "mask": [true, true, false]})" << '\n';
    }
    const auto j = json_report({"aggregate", "--dataset", kData, "--use-mask-file", mask, "--unknown", "exclude",
                                "--predictions", "--report", "json"});
    const auto& preds = j["tables"][1]["rows"];
    EXPECT_EQ(preds[0]["id"], "c1");
    EXPECT_EQ(preds[0]["predicted"], "half-true");
    EXPECT_EQ(preds[1]["predicted"], "true");  // unknown excluded: 3 of 3 yes
}

TEST(Cli, RetrieveDefaultReport) {
    const auto j = json_report({"retrieve", "--dataset", kData, "--mode", "merged", "--report", "json"});
    const auto& row = j["tables"][0]["rows"][0];
    EXPECT_EQ(row["method"], "bm25");
    EXPECT_EQ(row["units"], 3);
    EXPECT_NE(run_cli({"retrieve", "--dataset", kData, "--lenient"}).code, 2);
}

TEST(Cli, ConvertReportsUnconvertible) {
    const auto j = json_report({"convert", "-q", "Is X Y?", "-q", "Did taxes rise?", "--report", "json"});
    const auto& rows = j["tables"][0]["rows"];
    EXPECT_EQ(rows[0]["statement"], "X is Y.");
    EXPECT_EQ(rows[0]["negation"], "X is not Y.");
    EXPECT_EQ(rows[1]["provenance"], "unconvertible");
    EXPECT_TRUE(rows[1]["statement"].is_null());
}

TEST(Cli, ConvertViaExternalAdapter) {
    const auto j = json_report(
        {"convert", "-q", "Did taxes rise?", "--converter", "external:" + testsupport::mock_adapter(), "--report", "json"});
    EXPECT_EQ(j["tables"][0]["rows"][0]["statement"], "It holds that Did taxes rise.");
    EXPECT_EQ(j["tables"][0]["rows"][0]["provenance"], "external");
}

TEST(Cli, AdapterFromEnvironment) {
    ::setenv("CLAIMDECOMP_ADAPTER", testsupport::mock_adapter("--score=0.25").c_str(), 1);
    const auto r = run_cli({"retrieve", "--dataset", kData, "--scorer", "external", "--converter", "rule", "--report",
                            "json"});
    ::unsetenv("CLAIMDECOMP_ADAPTER");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run_cli({"retrieve", "--dataset", kData, "--scorer", "external"}).code, 2);
}

TEST(Cli, EvalDecompAndAgreement) {
    const auto recall = json_report(
        {"eval-decomp", "--judgments", testsupport::fixture("match_judgments.jsonl"), "--report", "json"});
    const auto& r = recall["tables"][0]["rows"][0];
    EXPECT_DOUBLE_EQ(r["r_all"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(r["r_literal"].get<double>(), 0.75);
    EXPECT_DOUBLE_EQ(r["r_implied"].get<double>(), 0.0);

    const auto matrix = json_report({"eval-decomp", "--dataset", kData, "--generated",
                                     testsupport::fixture("generated_c1.jsonl"), "--sim",
                                     "matrix:" + testsupport::fixture("matrix_scores.jsonl"), "--report", "json"});
    EXPECT_DOUBLE_EQ(matrix["tables"][0]["rows"][0]["mean_matching_score"].get<double>(), 0.8);

    const auto agree = json_report({"agreement", "--judgments", testsupport::fixture("pair_judgments.jsonl"),
                                    "--report", "json"});
    // per pair (more, fewer): (1/3, 0), (1/4, 1/2), (0, 0)
    const auto& u = agree["tables"][0]["rows"][0];
    EXPECT_NEAR(u["more_qs_pct"].get<double>(), 100.0 * (1.0 / 3 + 0.25) / 3, 1e-9);
    EXPECT_NEAR(u["fewer_qs_pct"].get<double>(), 100.0 * 0.5 / 3, 1e-9);
}

TEST(Cli, DeterministicAcrossRunsAndJobs) {
    const auto cases = testsupport::determinism_cases(CLAIMDECOMP_FIXTURES, testsupport::mock_adapter());
    for (const auto& base : cases) {
        auto one = base;
        one.insert(one.end(), {"--jobs", "1"});
        auto four = base;
        four.insert(four.end(), {"--jobs", "4"});
        const auto a = run_cli(one), b = run_cli(one), c = run_cli(four);
        ASSERT_EQ(a.code, 0) << base[0] << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << base[0];
        EXPECT_EQ(a.out, c.out) << base[0];
        EXPECT_FALSE(a.out.empty());
    }
}
