#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "claimdecomp/model/types.hpp"

namespace claimdecomp {

enum class ParseMode { Strict, Lenient };

/// A record dropped in lenient mode.
struct ParseIssue {
    std::size_t line = 0;
    std::string field;
    std::string message;
};

struct ParseResult {
    std::vector<ClaimRecord> records;
    std::vector<ParseIssue> issues;
};

/// Reads the native line-delimited dataset. Blank lines are skipped.
/// Strict mode throws ParseError on the first violation; lenient mode drops
/// the offending record and appends a ParseIssue.
ParseResult parse_dataset(std::istream& in, ParseMode mode);

/// Reads the upstream release layout (example_id/person/annotator_1 ... style
/// keys), maps it onto the native schema and validates like parse_dataset.
/// Key aliases are listed in dataset_io.cpp.
ParseResult import_released(std::istream& in, ParseMode mode);

/// Checks every record invariant. Throws DataError (field-qualified) on the
/// first violation. Does not check id uniqueness, which is corpus-level.
void validate_record(const ClaimRecord& record);

/// One JSON object, no trailing newline. Keys are emitted in a fixed order.
std::string serialize_record(const ClaimRecord& record);
void write_dataset(std::ostream& out, const std::vector<ClaimRecord>& records);

/// Ids per split (train, validation, validation-sub, test, ...).
struct SplitManifest {
    std::map<std::string, std::vector<std::string>, std::less<>> splits;
};

/// Manifest file: a JSON object mapping split name to an array of ids.
SplitManifest parse_split_manifest(std::istream& in);

/// Records whose id is listed under `split`, in dataset order. Ids listed in
/// the manifest but absent from `records` are ignored. Throws DataError for an
/// unknown split name.
std::vector<ClaimRecord> select_split(const std::vector<ClaimRecord>& records,
                                      const SplitManifest& manifest, std::string_view split);

}  // namespace claimdecomp
