#include <map>
#include <ostream>

#include "claimdecomp/error.hpp"
#include "claimdecomp/parallel.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

std::map<std::string, std::vector<bool>> read_masks(const std::string& path) {
    std::map<std::string, std::vector<bool>> out;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        if (!j.contains("id") || !j["id"].is_string() || !j.contains("mask") || !j["mask"].is_array())
            throw ParseError(n, "mask", "expected {\"id\": string, \"mask\": [bool, ...]}");
        std::vector<bool> mask;
        for (const auto& b : j["mask"]) {
            if (!b.is_boolean()) throw ParseError(n, "mask", "mask entries must be booleans");
            mask.push_back(b.get<bool>());
        }
        out[j["id"].get<std::string>()] = std::move(mask);
    }
    return out;
}

BaselineKind parse_baseline(const std::string& s) {
    if (s == "random-uniform") return BaselineKind::RandomUniform;
    if (s == "random-label-dist") return BaselineKind::RandomLabelDist;
    return BaselineKind::MostFrequent;
}

class AggregateCommand final : public Command {
  public:
    explicit AggregateCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("aggregate", "Veracity prediction from subquestion answers (table 5)");
        add_dataset_options(*app, m_data, true);
        add_output_options(*app, m_out, true);
        app->add_option("--annotation", m_annotation, "Annotation to aggregate: larger, first, second or merged")
            ->check(CLI::IsMember({"larger", "first", "second", "merged"}))
            ->capture_default_str();
        app->add_option("--unknown", m_unknown, "Unknown answers: count (in the denominator) or exclude")
            ->check(CLI::IsMember({"count", "exclude"}))
            ->capture_default_str();
        app->add_option("--use-mask-file", m_mask_file, "JSON lines of {id, mask} relevance masks")
            ->check(CLI::ExistingFile);
        app->add_option("--baseline", m_baseline, "Report a baseline instead of question aggregation")
            ->check(CLI::IsMember({"random-uniform", "random-label-dist", "most-frequent"}));
        app->add_option("--table", m_table, "5: question aggregation and all baselines")->check(CLI::IsMember({5}));
        app->add_flag("--predictions", m_predictions, "Also list per-claim predictions");
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream& err) override {
        const auto records = load_records(m_data, err);
        const auto choice = parse_annotation_choice(m_annotation);
        const auto unknown = m_unknown == "exclude" ? UnknownPolicy::Exclude : UnknownPolicy::Count;
        std::map<std::string, std::vector<bool>> masks;
        if (!m_mask_file.empty()) masks = read_masks(m_mask_file);

        struct Outcome {
            std::optional<double> score;
            std::string skipped_reason;
        };
        std::vector<Outcome> outcomes(records.size());
        parallel_for(records.size(), m_out.jobs, [&](std::size_t i, std::size_t) {
            const auto& r = records[i];
            AnswerVector v{select_answers(r, choice), std::nullopt};
            if (auto it = masks.find(r.id); it != masks.end()) v.relevance_mask = it->second;
            if (v.answers.empty()) {
                outcomes[i].skipped_reason = "no subquestions in the selected annotation";
                return;
            }
            try {
                outcomes[i].score = aggregate_veracity(v, unknown);
            } catch (const InvalidArgument& e) {
                outcomes[i].skipped_reason = e.what();
            }
        });

        std::vector<Veracity> golds, preds;
        std::size_t skipped = 0;
        Table predictions("predictions", {"id", "gold", "predicted", "score"});
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (!outcomes[i].score) {
                ++skipped;
                err << "warning: claim '" << records[i].id << "' skipped: " << outcomes[i].skipped_reason << '\n';
                continue;
            }
            golds.push_back(records[i].gold_label);
            preds.push_back(score_to_label(*outcomes[i].score));
            predictions.add({records[i].id, std::string(to_string(golds.back())),
                             std::string(to_string(preds.back())), *outcomes[i].score});
        }
        if (golds.empty()) throw DataError("no claim could be aggregated");

        Table summary("aggregation", {"method", "claims", "skipped", "macro_f1", "micro_f1", "mae"});
        const auto add_row = [&](const std::string& method, const std::vector<Veracity>& p) {
            const auto rep = evaluate_classifier(p, golds);
            summary.add({method, cell(golds.size()), cell(skipped), rep.macro_f1, rep.micro_f1, rep.mae});
        };
        std::vector<std::string> baselines;
        if (m_table == 5) baselines = {"random-uniform", "random-label-dist", "most-frequent"};
        else if (!m_baseline.empty()) baselines = {m_baseline};
        for (const auto& b : baselines)
            add_row(b, baseline(parse_baseline(b), golds, std::nullopt, m_out.seed));
        if (m_table == 5 || m_baseline.empty()) add_row("question-aggregation", preds);

        Report report{"aggregate", {}};
        report.tables.push_back(std::move(summary));
        if (m_predictions) report.tables.push_back(std::move(predictions));
        return report;
    }

  private:
    DatasetOptions m_data;
    OutputOptions m_out;
    std::string m_annotation = "larger";
    std::string m_unknown = "count";
    std::string m_mask_file;
    std::string m_baseline;
    int m_table = 0;
    bool m_predictions = false;
};

}  // namespace

std::unique_ptr<Command> make_aggregate(CLI::App& parent) { return std::make_unique<AggregateCommand>(parent); }

}  // namespace claimdecomp::cli
