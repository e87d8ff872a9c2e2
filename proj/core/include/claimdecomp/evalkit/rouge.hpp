#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace claimdecomp {

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// All text overloads tokenize with claimdecomp::tokenize.

/// Clipped n-gram precision. A candidate with fewer than n tokens scores 0;
/// callers that want to warn about it can check rouge_n_defined first.
double rouge_n_precision(std::span<const std::string> candidate,
                         std::span<const std::string> reference, int n);
double rouge_n_precision(std::string_view candidate, std::string_view reference, int n);
bool rouge_n_defined(std::string_view candidate, int n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// Throws InvalidArgument when either side has no tokens.
PrecisionRecallF1 rouge_l(std::span<const std::string> candidate,
                          std::span<const std::string> reference);
PrecisionRecallF1 rouge_l(std::string_view candidate, std::string_view reference);

/// Bag-of-tokens F1 (multiset overlap). Two empty inputs score 1, one empty
/// input scores 0.
double token_f1(std::string_view candidate, std::string_view reference);

}  // namespace claimdecomp
