#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "claimdecomp/error.hpp"
#include "claimdecomp/model/dataset_io.hpp"

namespace claimdecomp::cli {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

ParseResult read_dataset(const DatasetOptions& o) {
    auto in = open_input(o.dataset);
    const auto mode = o.lenient ? ParseMode::Lenient : ParseMode::Strict;
    if (o.layout == "released") return import_released(in, mode);
    return parse_dataset(in, mode);
}

void report_issues(const ParseResult& r, std::ostream& err) {
    for (const auto& issue : r.issues)
        err << "warning: line " << issue.line << ": " << issue.field << ": " << issue.message
            << " (record skipped)\n";
}

SplitManifest read_manifest(const std::string& path) {
    auto in = open_input(path);
    return parse_split_manifest(in);
}

}  // namespace

void add_output_options(CLI::App& app, OutputOptions& o, bool with_seed) {
    app.add_option("--report", o.report, "Output format")
        ->check(CLI::IsMember({"tsv", "json", "pretty"}))
        ->capture_default_str();
    if (with_seed) app.add_option("--seed", o.seed, "Seed for random baselines")->capture_default_str();
    app.add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_dataset_options(CLI::App& app, DatasetOptions& o, bool required) {
    auto* d = app.add_option("--dataset", o.dataset, "Dataset file (JSON lines)")->check(CLI::ExistingFile);
    if (required) d->required();
    app.add_option("--layout", o.layout, "Dataset layout: native or released")
        ->check(CLI::IsMember({"native", "released"}))
        ->capture_default_str();
    app.add_option("--splits", o.splits, "Split manifest (JSON object of id lists)")->check(CLI::ExistingFile);
    app.add_option("--split", o.split, "Split to select from the manifest");
    app.add_flag("--lenient", o.lenient, "Skip invalid records with a warning instead of failing");
}

std::vector<ClaimRecord> load_records(const DatasetOptions& o, std::ostream& err) {
    if (!o.split.empty() && o.splits.empty()) throw UsageError("--split needs --splits");
    auto parsed = read_dataset(o);
    report_issues(parsed, err);
    if (o.split.empty()) return std::move(parsed.records);
    return select_split(parsed.records, read_manifest(o.splits), o.split);
}

std::vector<LoadedDataset> load_split_groups(const DatasetOptions& o, std::ostream& err) {
    if (o.splits.empty() || !o.split.empty()) {
        return {{o.split.empty() ? "all" : o.split, load_records(o, err)}};
    }
    auto parsed = read_dataset(o);
    report_issues(parsed, err);
    const auto manifest = read_manifest(o.splits);
    std::vector<LoadedDataset> out;
    for (const auto& [name, _] : manifest.splits)
        out.push_back({name, select_split(parsed.records, manifest, name)});
    return out;
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    auto in = open_input(path);
    std::vector<nlohmann::json> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(n, path, std::string("malformed JSON: ") + e.what());
        }
        if (!out.back().is_object()) throw ParseError(n, path, "expected a JSON object");
    }
    return out;
}

AnnotationChoice parse_annotation_choice(const std::string& s) {
    if (s == "larger") return AnnotationChoice::Larger;
    if (s == "first") return AnnotationChoice::First;
    if (s == "second") return AnnotationChoice::Second;
    if (s == "merged") return AnnotationChoice::Merged;
    throw UsageError("unknown annotation choice '" + s + "'");
}

std::string adapter_command(const std::string& spec) {
    const std::string prefix = "external:";
    if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size()) return spec.substr(prefix.size());
    if (const char* env = std::getenv(kAdapterEnv); env && *env) return env;
    throw UsageError("no adapter command: use external:CMD or set " + std::string(kAdapterEnv));
}

}  // namespace claimdecomp::cli
