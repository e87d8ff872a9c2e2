#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "claimdecomp/aggregation/aggregation.hpp"
#include "claimdecomp/error.hpp"
#include "claimdecomp/model/types.hpp"
#include "report.hpp"

namespace claimdecomp::cli {

inline constexpr std::uint64_t kDefaultSeed = 20231;
inline constexpr const char* kAdapterEnv = "CLAIMDECOMP_ADAPTER";

/// Bad flag values or combinations; reported with exit status 2.
class UsageError : public Error {
  public:
    using Error::Error;
};

struct OutputOptions {
    std::string report = "pretty";
    std::uint64_t seed = kDefaultSeed;
    std::size_t jobs = 1;
};

struct DatasetOptions {
    std::string dataset;
    std::string layout = "native";
    std::string splits;
    std::string split;
    bool lenient = false;
};

void add_output_options(CLI::App& app, OutputOptions& o, bool with_seed);
void add_dataset_options(CLI::App& app, DatasetOptions& o, bool required);

/// Loaded records plus the split they came from ("all" without a manifest).
struct LoadedDataset {
    std::string split;
    std::vector<ClaimRecord> records;
};

/// Reads the dataset and applies the split selection. Lenient-mode issues
/// are written to `err` as one line each.
std::vector<ClaimRecord> load_records(const DatasetOptions& o, std::ostream& err);

/// One entry per manifest split, in manifest order, when a manifest is given
/// without --split; otherwise a single entry.
std::vector<LoadedDataset> load_split_groups(const DatasetOptions& o, std::ostream& err);

/// Non-blank lines of a JSONL file parsed as JSON objects. Throws ParseError
/// with the line number on malformed input.
std::vector<nlohmann::json> read_jsonl(const std::string& path);

AnnotationChoice parse_annotation_choice(const std::string& s);

/// The command after "external:", or the CLAIMDECOMP_ADAPTER environment
/// variable for a bare "external". Throws InvalidArgument when neither is set.
std::string adapter_command(const std::string& spec);

/// Executes the parsed subcommand and returns its report.
class Command {
  public:
    virtual ~Command() = default;
    virtual Report execute(std::ostream& err) = 0;
    virtual const OutputOptions& output() const = 0;
};

std::unique_ptr<Command> make_stats(CLI::App& parent);
std::unique_ptr<Command> make_aggregate(CLI::App& parent);
std::unique_ptr<Command> make_retrieve(CLI::App& parent);
std::unique_ptr<Command> make_eval_decomp(CLI::App& parent);
std::unique_ptr<Command> make_agreement(CLI::App& parent);
std::unique_ptr<Command> make_convert(CLI::App& parent);

}  // namespace claimdecomp::cli
