#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace claimdecomp {

/// Whether a reference question is covered by some generated question.
struct MatchJudgment {
    std::string claim_id;
    std::size_t reference_index = 0;
    bool matched = false;
    bool implied = false;
};

struct RecallReport {
    double r_all = 0.0;
    std::optional<double> r_literal;
    std::optional<double> r_implied;
    std::size_t n_all = 0;
    std::size_t n_literal = 0;
    std::size_t n_implied = 0;
};

/// Throws InvalidArgument on an empty list. A subgroup with no judgments
/// is left unset.
RecallReport recall_report(const std::vector<MatchJudgment>& judgments);

}  // namespace claimdecomp
