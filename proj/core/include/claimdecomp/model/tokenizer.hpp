#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claimdecomp {

/// The one tokenizer used for token counts and every n-gram metric.
///
/// Lowercases ASCII letters, splits on whitespace, then peels leading and
/// trailing ASCII punctuation off each chunk, one token per character.
/// Punctuation inside a chunk ("mail-in", "state's", "3.5") stays put.
/// Bytes >= 0x80 are passed through untouched.
std::vector<std::string> tokenize(std::string_view text);

/// Number of Unicode code points in a UTF-8 string. Malformed sequences
/// count one per byte.
std::size_t utf8_length(std::string_view text) noexcept;

}  // namespace claimdecomp
