#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "claimdecomp/model/types.hpp"

namespace claimdecomp {

/// Separator between template fields. Model adapters remap it to their own
/// special token.
inline constexpr std::string_view kQgSeparator = "[SEP]";

/// One training/inference example for the multi-question generator:
/// `n` questions for one claim.
struct QgMultipleExample {
    int n = 1;
    std::string claim;
    ClaimContext context;
    std::vector<std::string> questions;
};

/// "<n> [SEP] <claim> [SEP] <speaker> | <date> | <venue>".
/// Throws InvalidArgument when n < 1 or the claim contains the separator.
std::string encode_qg_multiple(int n, std::string_view claim, const ClaimContext& context);

/// Questions joined by " [SEP] ". A single question is returned verbatim.
/// Throws InvalidArgument on an empty list or when a question contains the
/// separator.
std::string encode_qg_multiple_target(const std::vector<std::string>& questions);

/// Splits generator output on the separator and trims each piece. Throws
/// DataError on an empty segment or when the count differs from expected_n.
std::vector<std::string> parse_qg_multiple(std::string_view output, int expected_n);

/// Input/target pair for a whole example; checks n == questions.size().
std::pair<std::string, std::string> encode(const QgMultipleExample& example);

/// Drops byte-identical repeats, keeping first occurrences in order.
std::vector<std::string> dedup_exact(const std::vector<std::string>& questions);

}  // namespace claimdecomp
