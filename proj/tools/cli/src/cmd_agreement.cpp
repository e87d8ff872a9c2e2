#include "claimdecomp/error.hpp"
#include "claimdecomp/evalkit/agreement.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

std::vector<bool> bool_list(const nlohmann::json& j, const char* key, std::size_t line) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(line, key, "expected an array of booleans");
    std::vector<bool> out;
    for (const auto& b : j[key]) {
        if (!b.is_boolean()) throw ParseError(line, key, "expected an array of booleans");
        out.push_back(b.get<bool>());
    }
    return out;
}

std::vector<UnmatchedJudgment> read_pairs(const std::string& path) {
    std::vector<UnmatchedJudgment> out;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        UnmatchedJudgment p{bool_list(j, "first", n), bool_list(j, "second", n)};
        if (p.first.empty() || p.second.empty()) throw ParseError(n, "first", "both annotations need questions");
        out.push_back(std::move(p));
    }
    if (out.empty()) throw DataError("'" + path + "' holds no annotation pairs");
    return out;
}

// One item per line: {"ratings": [label, ...]}; labels may be strings,
// integers or booleans and are compared by their JSON text.
RatingTable read_ratings(const std::string& path) {
    RatingTable t;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        if (!j.contains("ratings") || !j["ratings"].is_array())
            throw ParseError(n, "ratings", "expected {\"ratings\": [label, ...]}");
        std::vector<std::string> row;
        for (const auto& r : j["ratings"]) {
            if (r.is_string()) row.push_back(r.get<std::string>());
            else if (r.is_number_integer() || r.is_boolean()) row.push_back(r.dump());
            else throw ParseError(n, "ratings", "labels must be strings, integers or booleans");
        }
        t.ratings.push_back(std::move(row));
    }
    return t;
}

class AgreementCommand final : public Command {
  public:
    explicit AgreementCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("agreement", "Inter-annotator agreement (table 2, kappa)");
        add_output_options(*app, m_out, false);
        app->add_option("--judgments", m_judgments, "JSON lines of {first: [bool], second: [bool]} unmatched flags")
            ->check(CLI::ExistingFile);
        app->add_option("--ratings", m_ratings, "JSON lines of {ratings: [label, ...]}, one item per line")
            ->check(CLI::ExistingFile);
        app->add_option("--kappa", m_kappa, "fleiss or cohen (two raters)")
            ->check(CLI::IsMember({"fleiss", "cohen"}))
            ->capture_default_str();
        app->add_option("--categories", m_categories, "Closed category list")->delimiter(',');
        app->add_option("--table", m_table, "2: unmatched question shares")->check(CLI::IsMember({2}));
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream&) override {
        if (m_table == 2 && m_judgments.empty()) throw UsageError("--table 2 needs --judgments");
        if (m_judgments.empty() && m_ratings.empty()) throw UsageError("give --judgments and/or --ratings");
        Report report{"agreement", {}};
        if (!m_judgments.empty()) {
            const auto pairs = read_pairs(m_judgments);
            const auto f = unmatched_fraction(pairs);
            Table t("unmatched_questions", {"pairs", "all_pct", "more_qs_pct", "fewer_qs_pct"});
            t.add({cell(pairs.size()), 100.0 * f.all, 100.0 * f.more_qs, 100.0 * f.fewer_qs});
            report.tables.push_back(std::move(t));
        }
        if (!m_ratings.empty()) {
            auto table = read_ratings(m_ratings);
            table.categories = m_categories;
            std::optional<double> kappa;
            if (m_kappa == "fleiss") {
                kappa = fleiss_kappa(table);
            } else {
                std::vector<std::string> a, b;
                for (const auto& row : table.ratings) {
                    if (row.size() != 2) throw DataError("cohen kappa needs exactly two ratings per item");
                    a.push_back(row[0]);
                    b.push_back(row[1]);
                }
                kappa = cohen_kappa(a, b, m_categories);
            }
            Table t("kappa", {"statistic", "items", "raters", "kappa"});
            t.add({m_kappa, cell(table.ratings.size()),
                   cell(table.ratings.empty() ? std::size_t{0} : table.ratings.front().size()), cell(kappa)});
            report.tables.push_back(std::move(t));
        }
        return report;
    }

  private:
    OutputOptions m_out;
    std::string m_judgments;
    std::string m_ratings;
    std::string m_kappa = "fleiss";
    std::vector<std::string> m_categories;
    int m_table = 0;
};

}  // namespace

std::unique_ptr<Command> make_agreement(CLI::App& parent) { return std::make_unique<AgreementCommand>(parent); }

}  // namespace claimdecomp::cli
