#include "claimdecomp/evalkit/overlap.hpp"
#include "claimdecomp/model/stats.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

class StatsCommand final : public Command {
  public:
    explicit StatsCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("stats", "Dataset statistics (table 1) or question-type overlap (table 4)");
        add_dataset_options(*app, m_data, true);
        add_output_options(*app, m_out, false);
        app->add_option("--table", m_table, "1: corpus statistics, 4: lexical overlap by question type")
            ->check(CLI::IsMember({1, 4}))
            ->capture_default_str();
        app->add_option("--averaging", m_averaging, "Table 4 ROUGE averaging: per-question or pooled")
            ->check(CLI::IsMember({"per-question", "pooled"}))
            ->capture_default_str();
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream& err) override {
        Report report{"stats", {}};
        const auto groups = load_split_groups(m_data, err);
        if (m_table == 4) {
            Table t("lexical_overlap", {"split", "type", "questions", "questions_per_claim", "rouge1_p",
                                        "rouge2_p", "rougeL_p"});
            const auto avg = m_averaging == "pooled" ? OverlapAveraging::Pooled : OverlapAveraging::PerQuestion;
            for (const auto& g : groups) {
                const auto o = lexical_overlap(g.records, avg);
                for (const auto& [name, row] : {std::pair{"literal", o.literal}, std::pair{"implied", o.implied}})
                    t.add({g.split, std::string(name), cell(row.n_questions), row.questions_per_claim,
                           row.rouge1_p, row.rouge2_p, row.rougeL_p});
            }
            report.tables.push_back(std::move(t));
            return report;
        }

        std::vector<std::string> cols = {"split", "claims", "annotations", "subquestions",
                                         "tokens_per_claim", "subquestions_per_annotation",
                                         "yes_pct", "no_pct", "unknown_pct",
                                         "source_claim_pct", "source_justification_pct"};
        for (auto v : kAllVeracities) cols.push_back(std::string(to_string(v)) + "_pct");
        Table t("dataset_stats", cols);
        for (const auto& g : groups) {
            if (g.records.empty()) {
                err << "warning: split '" << g.split << "' selects no records\n";
                continue;
            }
            const auto s = compute_stats(g.records);
            std::vector<Cell> row = {g.split,
                                     cell(s.n_claims),
                                     cell(s.n_annotations),
                                     cell(s.n_subquestions),
                                     s.avg_tokens_per_claim,
                                     s.avg_subquestions_per_annotation,
                                     s.answer(Answer::Yes),
                                     s.answer(Answer::No),
                                     s.answer(Answer::Unknown),
                                     s.source(Source::Claim),
                                     s.source(Source::Justification)};
            for (auto v : kAllVeracities) row.emplace_back(s.label(v));
            t.add(std::move(row));
        }
        report.tables.push_back(std::move(t));
        return report;
    }

  private:
    DatasetOptions m_data;
    OutputOptions m_out;
    int m_table = 1;
    std::string m_averaging = "per-question";
};

}  // namespace

std::unique_ptr<Command> make_stats(CLI::App& parent) { return std::make_unique<StatsCommand>(parent); }

}  // namespace claimdecomp::cli
