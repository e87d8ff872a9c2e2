#include <map>
#include <ostream>

#include "claimdecomp/codec/qg_template.hpp"
#include "claimdecomp/error.hpp"
#include "claimdecomp/evalkit/matching.hpp"
#include "claimdecomp/evalkit/recall.hpp"
#include "claimdecomp/evalkit/rouge.hpp"
#include "claimdecomp/parallel.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

// Generated sets, either as question lists or as raw generator output
// ("output" plus the requested count "n").
std::map<std::string, std::vector<std::string>> read_generated(const std::string& path) {
    std::map<std::string, std::vector<std::string>> out;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        if (!j.contains("id") || !j["id"].is_string()) throw ParseError(n, "id", "missing claim id");
        std::vector<std::string> qs;
        if (j.contains("questions")) {
            if (!j["questions"].is_array()) throw ParseError(n, "questions", "expected an array of strings");
            for (const auto& q : j["questions"]) {
                if (!q.is_string()) throw ParseError(n, "questions", "expected an array of strings");
                qs.push_back(q.get<std::string>());
            }
        } else if (j.contains("output") && j["output"].is_string()) {
            if (!j.contains("n") || !j["n"].is_number_integer())
                throw ParseError(n, "n", "raw output needs the requested question count");
            try {
                qs = parse_qg_multiple(j["output"].get<std::string>(), j["n"].get<int>());
            } catch (const DataError& e) {
                throw ParseError(n, "output", e.what());
            }
        } else {
            throw ParseError(n, "questions", "expected \"questions\" or \"output\"");
        }
        out[j["id"].get<std::string>()] = dedup_exact(qs);
    }
    return out;
}

std::map<std::string, Matrix> read_similarity_matrices(const std::string& path) {
    std::map<std::string, Matrix> out;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        if (!j.contains("id") || !j["id"].is_string() || !j.contains("scores") || !j["scores"].is_array())
            throw ParseError(n, "scores", "expected {\"id\": string, \"scores\": [[real, ...], ...]}");
        const auto& rows = j["scores"];
        const std::size_t cols = rows.empty() ? 0 : rows[0].size();
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || rows[r].size() != cols)
                throw ParseError(n, "scores", "ragged similarity matrix");
            for (std::size_t c = 0; c < cols; ++c) {
                if (!rows[r][c].is_number()) throw ParseError(n, "scores", "scores must be numbers");
                m(r, c) = rows[r][c].get<double>();
            }
        }
        out[j["id"].get<std::string>()] = std::move(m);
    }
    return out;
}

std::vector<MatchJudgment> read_match_judgments(const std::string& path) {
    std::vector<MatchJudgment> out;
    std::size_t n = 0;
    for (const auto& j : read_jsonl(path)) {
        ++n;
        MatchJudgment m;
        try {
            m.claim_id = j.at("claim_id").get<std::string>();
            m.reference_index = j.at("ref_index").get<std::size_t>();
            m.matched = j.at("matched").get<bool>();
            const auto qtype = j.at("qtype").get<std::string>();
            if (qtype != "literal" && qtype != "implied") throw ParseError(n, "qtype", "expected literal or implied");
            m.implied = qtype == "implied";
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(n, "judgment", std::string("expected claim_id, ref_index, matched, qtype: ") + e.what());
        }
        out.push_back(std::move(m));
    }
    if (out.empty()) throw DataError("'" + path + "' holds no judgments");
    return out;
}

class EvalDecompCommand final : public Command {
  public:
    explicit EvalDecompCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("eval-decomp", "Generated-vs-reference question sets and recall (table 3)");
        add_dataset_options(*app, m_data, false);
        add_output_options(*app, m_out, false);
        app->add_option("--generated", m_generated, "JSON lines of {id, questions} or {id, output, n}")
            ->check(CLI::ExistingFile);
        app->add_option("--sim", m_sim, "rouge1p, rouge2p, rougelf, tokenf1 or matrix:FILE")->capture_default_str();
        app->add_option("--annotation", m_annotation, "Reference annotation: larger, first, second or merged")
            ->check(CLI::IsMember({"larger", "first", "second", "merged"}))
            ->capture_default_str();
        app->add_option("--judgments", m_judgments, "JSON lines of {claim_id, ref_index, matched, qtype}")
            ->check(CLI::ExistingFile);
        app->add_option("--table", m_table, "3: recall over all, literal and implied questions")
            ->check(CLI::IsMember({3}));
        app->add_flag("--per-claim", m_per_claim, "Also list per-claim matching scores");
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream& err) override {
        if (m_table == 3 && m_judgments.empty()) throw UsageError("--table 3 needs --judgments");
        if (m_generated.empty() && m_judgments.empty())
            throw UsageError("nothing to evaluate: give --generated (with --dataset) or --judgments");
        Report report{"eval-decomp", {}};
        if (!m_generated.empty()) similarity(report, err);
        if (!m_judgments.empty()) {
            const auto r = recall_report(read_match_judgments(m_judgments));
            Table t("recall", {"questions", "r_all", "literal_questions", "r_literal", "implied_questions", "r_implied"});
            t.add({cell(r.n_all), r.r_all, cell(r.n_literal), cell(r.r_literal), cell(r.n_implied), cell(r.r_implied)});
            report.tables.push_back(std::move(t));
        }
        return report;
    }

  private:
    void similarity(Report& report, std::ostream& err) const {
        if (m_data.dataset.empty()) throw UsageError("--generated needs --dataset for the reference questions");
        const auto records = load_records(m_data, err);
        const auto generated = read_generated(m_generated);
        const bool external = m_sim.rfind("matrix:", 0) == 0;
        const auto kind = external ? SimilarityKind::ExternalMatrix : parse_similarity_kind(m_sim);
        std::map<std::string, Matrix> matrices;
        if (external) matrices = read_similarity_matrices(m_sim.substr(7));
        const auto choice = parse_annotation_choice(m_annotation);

        struct Job {
            const ClaimRecord* record;
            std::vector<std::string> generated;
            std::vector<std::string> reference;
            SimilaritySpec spec;
        };
        std::vector<Job> jobs;
        for (const auto& r : records) {
            auto g = generated.find(r.id);
            if (g == generated.end() || g->second.empty()) continue;
            Job job{&r, g->second, {}, SimilaritySpec::of(kind)};
            if (choice == AnnotationChoice::Merged) {
                for (const auto& a : r.annotations)
                    for (const auto& q : a.subquestions) job.reference.push_back(q.text);
            } else if (auto idx = select_annotation(r, choice)) {
                for (const auto& q : r.annotations[*idx].subquestions) job.reference.push_back(q.text);
            }
            if (job.reference.empty()) {
                err << "warning: claim '" << r.id << "' has no reference questions; skipped\n";
                continue;
            }
            if (external) {
                auto m = matrices.find(r.id);
                if (m == matrices.end()) throw DataError("no similarity matrix for claim '" + r.id + "'");
                job.spec = SimilaritySpec::from_matrix(m->second);
            }
            jobs.push_back(std::move(job));
        }
        if (jobs.empty()) throw DataError("no claim has both generated and reference questions");
        if (kind == SimilarityKind::Rouge2P) {
            std::size_t short_questions = 0;
            for (const auto& j : jobs)
                for (const auto& q : j.generated) short_questions += !rouge_n_defined(q, 2);
            if (short_questions)
                err << "warning: " << short_questions << " generated question(s) shorter than 2 tokens score 0\n";
        }

        std::vector<double> scores(jobs.size());
        parallel_for(jobs.size(), m_out.jobs, [&](std::size_t i, std::size_t) {
            scores[i] = set_similarity(jobs[i].generated, jobs[i].reference, jobs[i].spec);
        });
        double sum = 0.0;
        Table per_claim("set_similarity_per_claim", {"id", "generated", "reference", "score"});
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            sum += scores[i];
            per_claim.add({jobs[i].record->id, cell(jobs[i].generated.size()), cell(jobs[i].reference.size()),
                           scores[i]});
        }
        Table t("set_similarity", {"similarity", "claims", "mean_matching_score"});
        t.add({external ? std::string("external-matrix") : std::string(to_string(kind)), cell(jobs.size()),
               sum / static_cast<double>(jobs.size())});
        report.tables.push_back(std::move(t));
        if (m_per_claim) report.tables.push_back(std::move(per_claim));
    }

    DatasetOptions m_data;
    OutputOptions m_out;
    std::string m_generated;
    std::string m_sim = "rougelf";
    std::string m_annotation = "larger";
    std::string m_judgments;
    int m_table = 0;
    bool m_per_claim = false;
};

}  // namespace

std::unique_ptr<Command> make_eval_decomp(CLI::App& parent) { return std::make_unique<EvalDecompCommand>(parent); }

}  // namespace claimdecomp::cli
