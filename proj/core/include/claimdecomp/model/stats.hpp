#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "claimdecomp/model/types.hpp"

namespace claimdecomp {

/// Corpus statistics at claim and subquestion level. Percentages are in
/// [0, 100]. Answer and source percentages are taken over every subquestion
/// of every annotation; the label distribution over claims.
struct DatasetStats {
    std::size_t n_claims = 0;
    std::size_t n_annotations = 0;
    std::size_t n_subquestions = 0;
    double avg_tokens_per_claim = 0.0;
    double avg_subquestions_per_annotation = 0.0;
    std::array<double, 3> answer_pct{};  // indexed by Answer
    std::array<double, 2> source_pct{};  // indexed by Source
    std::array<double, kVeracityCount> label_dist{};

    double answer(Answer a) const { return answer_pct[static_cast<std::size_t>(a)]; }
    double source(Source s) const { return source_pct[static_cast<std::size_t>(s)]; }
    double label(Veracity v) const { return label_dist[static_cast<std::size_t>(v)]; }
};

/// Throws InvalidArgument on an empty list. When the corpus has no
/// subquestions at all, answer and source percentages are all zero.
DatasetStats compute_stats(const std::vector<ClaimRecord>& records);

}  // namespace claimdecomp
