#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "claimdecomp/model/dataset_io.hpp"
#include "claimdecomp/model/types.hpp"

namespace testsupport {

inline std::string fixture(const std::string& name) { return std::string(CLAIMDECOMP_FIXTURES) + "/" + name; }

inline std::string mock_adapter(const std::string& flags = "") {
    std::string cmd = CLAIMDECOMP_MOCK_ADAPTER;
    if (!flags.empty()) cmd += " " + flags;
    return cmd;
}

inline std::vector<claimdecomp::ClaimRecord> load_fixture(const std::string& name = "mini_dataset.jsonl") {
    std::ifstream in(fixture(name));
    return claimdecomp::parse_dataset(in, claimdecomp::ParseMode::Strict).records;
}

inline claimdecomp::ClaimRecord simple_record(const std::string& id, std::vector<claimdecomp::Answer> answers,
                                              claimdecomp::Veracity gold = claimdecomp::Veracity::HalfTrue) {
    claimdecomp::ClaimRecord r;
    r.id = id;
    r.claim = "Claim " + id + " is stated here.";
    r.gold_label = gold;
    r.justification = {"Some justification."};
    r.article_paragraphs = {"First paragraph.", "Second paragraph."};
    claimdecomp::Annotation a;
    a.annotator_id = "a";
    for (std::size_t i = 0; i < answers.size(); ++i)
        a.subquestions.push_back({"Question " + std::to_string(i) + "?", answers[i], claimdecomp::Source::Claim, {},
                                  std::nullopt});
    r.annotations.push_back(std::move(a));
    return r;
}

inline std::vector<double> random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int levels = 0) {
    std::vector<double> out(rows * cols);
    if (levels > 0) {
        std::uniform_int_distribution<int> d(0, levels);
        for (auto& v : out) v = static_cast<double>(d(rng)) / static_cast<double>(levels);
    } else {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        for (auto& v : out) v = d(rng);
    }
    return out;
}

/// Fleiss' kappa straight from the textbook definition, over per-item
/// category counts. Every row must have the same total.
inline double fleiss_from_counts(const std::vector<std::vector<double>>& counts) {
    const double items = static_cast<double>(counts.size());
    double raters = 0;
    for (double c : counts[0]) raters += c;
    std::vector<double> column(counts[0].size(), 0.0);
    double p_bar = 0;
    for (const auto& row : counts) {
        double agree = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            agree += row[j] * (row[j] - 1);
            column[j] += row[j];
        }
        p_bar += agree / (raters * (raters - 1));
    }
    p_bar /= items;
    double p_e = 0;
    for (double c : column) p_e += (c / (items * raters)) * (c / (items * raters));
    return (p_bar - p_e) / (1 - p_e);
}

}  // namespace testsupport
