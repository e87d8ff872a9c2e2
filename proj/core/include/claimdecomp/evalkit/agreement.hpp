#pragma once

#include <optional>
#include <string>
#include <vector>

namespace claimdecomp {

/// Items x raters categorical ratings. `categories`, when nonempty, is the
/// closed category set; ratings outside it are rejected.
struct RatingTable {
    std::vector<std::vector<std::string>> ratings;
    std::vector<std::string> categories;
};

/// Fleiss' kappa. nullopt when chance agreement is 1. Throws InvalidArgument
/// for fewer than 2 items or raters, ragged rows, or unknown categories.
std::optional<double> fleiss_kappa(const RatingTable& table);

/// Cohen's kappa for two raters. nullopt when chance agreement is 1.
std::optional<double> cohen_kappa(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  const std::vector<std::string>& categories = {});

/// Per-question flags "not expressed by the other annotation" for one
/// annotation pair.
struct UnmatchedJudgment {
    std::vector<bool> first;
    std::vector<bool> second;
};

struct UnmatchedFractions {
    double all = 0.0;
    double more_qs = 0.0;
    double fewer_qs = 0.0;
};

/// Unmatched share within the larger and the smaller set (the first set
/// counts as larger on a tie) and their mean. Throws InvalidArgument when
/// either set is empty.
UnmatchedFractions unmatched_fraction(const UnmatchedJudgment& pair);

/// Averages of the per-pair fractions over many annotation pairs.
UnmatchedFractions unmatched_fraction(const std::vector<UnmatchedJudgment>& pairs);

}  // namespace claimdecomp
