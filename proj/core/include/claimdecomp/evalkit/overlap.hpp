#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "claimdecomp/model/types.hpp"

namespace claimdecomp {

enum class OverlapAveraging : std::uint8_t {
    PerQuestion,  // mean of per-question precisions
    Pooled,       // matched n-grams over all questions / question n-grams
};

/// Lexical overlap of one question type with its claim.
struct OverlapRow {
    std::size_t n_questions = 0;
    double questions_per_claim = 0.0;
    double rouge1_p = 0.0;
    double rouge2_p = 0.0;
    double rougeL_p = 0.0;
};

struct LexicalOverlap {
    OverlapRow literal;
    OverlapRow implied;
};

/// Overlap of typed subquestions with their claim, by literal/implied type.
/// Untyped subquestions are skipped. questions_per_claim divides by the
/// number of claims holding at least one typed subquestion. Questions with
/// a single token count as 0 for ROUGE-2.
LexicalOverlap lexical_overlap(const std::vector<ClaimRecord>& records,
                               OverlapAveraging averaging = OverlapAveraging::PerQuestion);

}  // namespace claimdecomp
