#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "claimdecomp/codec/statements.hpp"
#include "claimdecomp/error.hpp"
#include "claimdecomp/parallel.hpp"
#include "claimdecomp/protocol/adapter_client.hpp"
#include "claimdecomp/retrieval/evaluation.hpp"
#include "claimdecomp/retrieval/evidence.hpp"
#include "claimdecomp/retrieval/scorers.hpp"
#include "claimdecomp/retrieval/selection.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

constexpr RetrievalMode kAllModes[] = {RetrievalMode::Support, RetrievalMode::Refute, RetrievalMode::Merged};

std::string join(const IndexSet& s) {
    std::string out;
    for (std::size_t i : s) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    }
    return out;
}

IndexSet labeled(const std::vector<ParagraphLabel>& labels, RetrievalMode mode) {
    IndexSet out;
    for (std::size_t p = 0; p < labels.size(); ++p) {
        const auto l = labels[p];
        const bool keep = mode == RetrievalMode::Support   ? l == ParagraphLabel::Support
                          : mode == RetrievalMode::Refute ? l == ParagraphLabel::Refute
                                                          : l != ParagraphLabel::Context;
        if (keep) out.insert(p);
    }
    return out;
}

// One annotator's labels for one subquestion; unjudged paragraphs are context.
std::vector<ParagraphLabel> subquestion_labels(const ClaimRecord& r, const std::string& annotator,
                                               std::size_t flat) {
    std::vector<ParagraphLabel> out(r.article_paragraphs.size(), ParagraphLabel::Context);
    for (const auto& j : *r.paragraph_judgments)
        if (j.annotator_id == annotator && j.subquestion_index == flat && j.paragraph_index < out.size())
            out[j.paragraph_index] = j.label;
    return out;
}

std::vector<std::string> annotators_of_subquestion(const ClaimRecord& r, std::size_t flat) {
    std::set<std::string> ids;
    for (const auto& j : *r.paragraph_judgments)
        if (j.subquestion_index == flat) ids.insert(j.annotator_id);
    return {ids.begin(), ids.end()};
}

/// Hypotheses of one claim plus the score matrices built from them.
struct ClaimWork {
    std::size_t record = 0;
    std::vector<std::size_t> flat_indices;  // empty for external decompositions
    std::vector<Hypothesis> hypotheses;
    std::optional<ScoreMatrix> support;
    std::optional<ScoreMatrix> refute;
    /// refute column -> hypothesis index
    std::vector<std::size_t> refute_columns;
};

/// A scored unit: a whole claim, or one subquestion of it.
struct Unit {
    std::size_t work = 0;
    std::optional<std::size_t> column;  // hypothesis index for subquestion granularity
    EvidenceGold gold;
    std::string label;
};

ScoreMatrix column_of(const ScoreMatrix& m, std::size_t col) {
    std::vector<double> scores;
    for (std::size_t i = 0; i < m.rows(); ++i) scores.push_back(m.at(i, col));
    return ScoreMatrix(m.paragraph_ids(), {m.hypothesis_ids()[col]}, std::move(scores), m.scorer_name(),
                       m.bounded());
}

class RetrieveCommand final : public Command {
  public:
    explicit RetrieveCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("retrieve", "Evidence paragraph retrieval and its evaluation (tables 6, 7)");
        add_dataset_options(*app, m_data, true);
        add_output_options(*app, m_out, true);
        app->add_option("--scorer", m_scorer, "bm25, lexical, external[:CMD] or matrix:FILE")->capture_default_str();
        app->add_option("--mode", m_mode, "support, refute or merged")
            ->check(CLI::IsMember({"support", "refute", "merged"}))
            ->capture_default_str();
        app->add_option("--k", m_k, "gold (support + refute count) or a paragraph count")->capture_default_str();
        app->add_option("--decomp", m_decomp, "gold, or JSON lines of {id, questions}")->capture_default_str();
        app->add_option("--converter", m_converter, "Statement source: auto, rule, external[:CMD] or none")
            ->capture_default_str();
        app->add_option("--baseline", m_baseline, "random or human instead of a scorer")
            ->check(CLI::IsMember({"random", "human"}));
        app->add_option("--table", m_table, "6: evidence label statistics, 7: F1 for all modes")
            ->check(CLI::IsMember({6, 7}));
        app->add_option("--granularity", m_granularity, "claim or subquestion")
            ->check(CLI::IsMember({"claim", "subquestion"}))
            ->capture_default_str();
        app->add_option("--timeout-ms", m_timeout_ms, "Adapter reply timeout")->capture_default_str();
        app->add_option("--bm25-k1", m_bm25.k1, "BM25 k1")->capture_default_str();
        app->add_option("--bm25-b", m_bm25.b, "BM25 b")->capture_default_str();
        app->add_flag("--per-claim", m_per_unit, "Also list per-unit selections");
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream& err) override {
        validate_options();
        auto all = load_records(m_data, err);
        std::vector<ClaimRecord> records;
        for (auto& r : all)
            if (r.paragraph_judgments && !r.paragraph_judgments->empty()) records.push_back(std::move(r));
        if (records.size() != all.size())
            err << "warning: " << all.size() - records.size() << " claim(s) without paragraph judgments skipped\n";
        if (records.empty()) throw DataError("no claim carries paragraph judgments");

        Report report{"retrieve", {}};
        if (m_table == 6) {
            report.tables.push_back(table6(records));
            return report;
        }

        const bool need_scorer = m_table == 7 || m_baseline.empty();
        std::vector<ClaimWork> work = build_work(records, err);
        if (need_scorer) {
            convert(work, err);
            score(records, work);
        }
        const auto units = build_units(records, work);

        if (m_table == 7) {
            Table t("retrieval_f1", {"method", "granularity", "units", "support_f1", "refute_f1", "merged_f1"});
            std::vector<Cell> random_row = {std::string("random"), m_granularity, cell(units.size())};
            std::vector<Cell> human_row = {std::string("human"), m_granularity, std::int64_t{0}};
            std::vector<Cell> scorer_row = {scorer_label(), m_granularity, cell(units.size())};
            for (auto mode : kAllModes) {
                random_row.emplace_back(evaluate_random(records, work, units, mode, nullptr).f1());
                const auto human = evaluate_human(records, work, units, mode);
                human_row[2] = cell(human.second);
                human_row.push_back(human.second ? Cell(human.first) : Cell{});
                scorer_row.emplace_back(evaluate_scorer(records, work, units, mode, nullptr).f1());
            }
            t.add(std::move(random_row));
            t.add(std::move(human_row));
            t.add(std::move(scorer_row));
            report.tables.push_back(std::move(t));
            return report;
        }

        const auto mode = parse_retrieval_mode(m_mode);
        Table summary("retrieval", {"method", "mode", "granularity", "units", "precision", "recall", "f1",
                                    "missing_negations"});
        Table per_unit("selections", {"unit", "k", "selected", "gold", "f1"});
        if (m_baseline == "human") {
            const auto [f1, n] = evaluate_human(records, work, units, mode);
            summary.add({std::string("human"), m_mode, m_granularity, cell(n), Cell{}, Cell{},
                         n ? Cell(f1) : Cell{}, std::int64_t{0}});
        } else {
            const auto counts = m_baseline == "random" ? evaluate_random(records, work, units, mode, &per_unit)
                                                       : evaluate_scorer(records, work, units, mode, &per_unit);
            summary.add({m_baseline == "random" ? std::string("random") : scorer_label(), m_mode, m_granularity,
                         cell(units.size()), counts.precision(), counts.recall(), counts.f1(),
                         cell(m_baseline.empty() ? missing_negations(work, units, mode) : 0)});
        }
        report.tables.push_back(std::move(summary));
        if (m_per_unit && m_baseline != "human") report.tables.push_back(std::move(per_unit));
        return report;
    }

  private:
    void validate_options() {
        if (m_k != "gold") {
            try {
                std::size_t pos = 0;
                m_k_value = std::stoul(m_k, &pos);
                if (pos != m_k.size()) throw std::invalid_argument(m_k);
            } catch (const std::exception&) {
                throw UsageError("--k must be 'gold' or a non-negative integer, got '" + m_k + "'");
            }
        }
        if (m_decomp != "gold" && m_granularity == "subquestion")
            throw UsageError("--granularity subquestion needs --decomp gold");
        if (m_decomp != "gold" && m_baseline == "human")
            throw UsageError("--baseline human needs --decomp gold");
        const bool known = m_scorer == "bm25" || m_scorer == "lexical" || m_scorer.rfind("external", 0) == 0 ||
                           m_scorer.rfind("matrix:", 0) == 0;
        if (!known) throw UsageError("unknown scorer '" + m_scorer + "'");
        if (m_converter != "auto" && m_converter != "rule" && m_converter != "none" &&
            m_converter.rfind("external", 0) != 0)
            throw UsageError("unknown converter '" + m_converter + "'");
    }

    std::string scorer_label() const {
        if (m_scorer.rfind("external", 0) == 0) return "external";
        if (m_scorer.rfind("matrix:", 0) == 0) return "matrix";
        return m_scorer;
    }

    std::chrono::milliseconds timeout() const { return std::chrono::milliseconds(m_timeout_ms); }

    Table table6(const std::vector<ClaimRecord>& records) const {
        const auto st = evidence_stats(records);
        Table t("evidence_labels", {"granularity", "units", "paragraphs_per_unit", "context_pct", "support_pct",
                                    "refute_pct", "fleiss_kappa"});
        t.add({std::string("subquestion"), cell(st.n_subquestions), st.paragraphs_per_subquestion,
               st.per_subquestion_pct[0], st.per_subquestion_pct[1], st.per_subquestion_pct[2],
               cell(st.per_subquestion_kappa)});
        t.add({std::string("claim"), cell(st.n_claims), st.paragraphs_per_claim, st.per_claim_pct[0],
               st.per_claim_pct[1], st.per_claim_pct[2], cell(st.per_claim_kappa)});
        return t;
    }

    std::vector<ClaimWork> build_work(const std::vector<ClaimRecord>& records, std::ostream& err) const {
        std::map<std::string, std::vector<std::string>> external;
        if (m_decomp != "gold") {
            std::size_t n = 0;
            for (const auto& j : read_jsonl(m_decomp)) {
                ++n;
                if (!j.contains("id") || !j["id"].is_string() || !j.contains("questions") ||
                    !j["questions"].is_array())
                    throw ParseError(n, "decomp", "expected {\"id\": string, \"questions\": [string, ...]}");
                auto& qs = external[j["id"].get<std::string>()];
                for (const auto& q : j["questions"]) {
                    if (!q.is_string()) throw ParseError(n, "questions", "questions must be strings");
                    qs.push_back(q.get<std::string>());
                }
            }
        }
        std::vector<ClaimWork> out;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            ClaimWork w;
            w.record = i;
            if (m_decomp == "gold") {
                w.flat_indices = judged_subquestions(r);
                for (std::size_t f : w.flat_indices) {
                    const auto* q = r.flat_subquestion(f);
                    if (!q) throw DataError("claim '" + r.id + "': judged subquestion " + std::to_string(f) +
                                            " does not exist");
                    w.hypotheses.push_back({q->text, std::nullopt});
                }
            } else {
                auto it = external.find(r.id);
                if (it == external.end() || it->second.empty()) {
                    err << "warning: claim '" << r.id << "' has no decomposition in " << m_decomp << "; skipped\n";
                    continue;
                }
                for (const auto& q : it->second) w.hypotheses.push_back({q, std::nullopt});
            }
            out.push_back(std::move(w));
        }
        if (out.empty()) throw DataError("no claim has a decomposition to score");
        return out;
    }

    // Replaces question text with declarative statements where possible.
    void convert(std::vector<ClaimWork>& work, std::ostream& err) const {
        if (m_converter == "none") return;
        std::unique_ptr<AdapterClient> client;
        const bool external_only = m_converter.rfind("external", 0) == 0;
        if (external_only) client = std::make_unique<AdapterClient>(adapter_command(m_converter), timeout());
        const bool fallback = m_converter == "auto" && std::getenv(kAdapterEnv);
        std::map<std::string, Hypothesis> cache;
        std::size_t unconverted = 0;
        for (auto& w : work)
            for (auto& h : w.hypotheses) {
                const std::string question = h.affirmative;
                if (auto it = cache.find(question); it != cache.end()) {
                    h = it->second;
                    if (!h.negated) ++unconverted;
                    continue;
                }
                std::optional<StatementPair> pair;
                if (!external_only) {
                    try {
                        pair = question_to_statements(question);
                    } catch (const Unconvertible&) {
                    }
                }
                if (!pair && (external_only || fallback)) {
                    if (!client) client = std::make_unique<AdapterClient>(adapter_command("external"), timeout());
                    pair = convert_via_external(question, *client);
                }
                if (pair) h = Hypothesis::from(*pair);
                else ++unconverted;
                cache.emplace(question, h);
            }
        if (unconverted)
            err << "note: " << unconverted << " question(s) kept as questions without a negated form\n";
    }

    std::map<std::pair<std::string, std::string>, ScoreMatrix> read_matrices() const {
        std::map<std::pair<std::string, std::string>, ScoreMatrix> out;
        const std::string path = m_scorer.substr(std::string("matrix:").size());
        std::size_t n = 0;
        for (const auto& j : read_jsonl(path)) {
            ++n;
            if (!j.contains("claim_id") || !j["claim_id"].is_string())
                throw ParseError(n, "claim_id", "missing claim id");
            const std::string polarity = j.value("polarity", "support");
            if (polarity != "support" && polarity != "refute")
                throw ParseError(n, "polarity", "expected support or refute");
            try {
                out.insert_or_assign({j["claim_id"].get<std::string>(), polarity}, score_matrix_from_json(j.dump()));
            } catch (const DataError& e) {
                throw ParseError(n, "scores", e.what());
            }
        }
        return out;
    }

    void score(const std::vector<ClaimRecord>& records, std::vector<ClaimWork>& work) const {
        if (m_scorer.rfind("matrix:", 0) == 0) {
            const auto matrices = read_matrices();
            for (auto& w : work) {
                const auto& r = records[w.record];
                for (const char* polarity : {"support", "refute"}) {
                    auto it = matrices.find({r.id, polarity});
                    if (it == matrices.end()) continue;
                    if (it->second.rows() != r.article_paragraphs.size() || it->second.cols() != w.hypotheses.size())
                        throw DataError("claim '" + r.id + "': " + polarity + " matrix is " +
                                        std::to_string(it->second.rows()) + "x" + std::to_string(it->second.cols()) +
                                        ", expected " + std::to_string(r.article_paragraphs.size()) + "x" +
                                        std::to_string(w.hypotheses.size()));
                    if (std::string(polarity) == "support") {
                        w.support = it->second;
                    } else {
                        w.refute = it->second;
                        w.refute_columns.resize(w.hypotheses.size());
                        std::iota(w.refute_columns.begin(), w.refute_columns.end(), 0);
                    }
                }
                if (!w.support) throw DataError("claim '" + r.id + "' has no support matrix in the matrix file");
            }
            return;
        }

        const auto run = [&](Scorer& scorer, ClaimWork& w) {
            const auto& paragraphs = records[w.record].article_paragraphs;
            std::vector<std::string> affirmative, negated;
            for (std::size_t j = 0; j < w.hypotheses.size(); ++j) {
                affirmative.push_back(w.hypotheses[j].affirmative);
                if (w.hypotheses[j].negated) {
                    negated.push_back(*w.hypotheses[j].negated);
                    w.refute_columns.push_back(j);
                }
            }
            w.support = scorer.score(paragraphs, affirmative);
            if (!negated.empty()) w.refute = scorer.score(paragraphs, negated);
        };

        if (m_scorer.rfind("external", 0) == 0) {
            ExternalScorer scorer(adapter_command(m_scorer), m_out.jobs, timeout());
            for (auto& w : work) run(scorer, w);
            return;
        }
        parallel_for(work.size(), m_out.jobs, [&](std::size_t i, std::size_t) {
            if (m_scorer == "bm25") {
                Bm25Scorer scorer(m_bm25);
                run(scorer, work[i]);
            } else {
                LexicalScorer scorer;
                run(scorer, work[i]);
            }
        });
    }

    std::vector<Unit> build_units(const std::vector<ClaimRecord>& records, const std::vector<ClaimWork>& work) const {
        std::vector<Unit> units;
        for (std::size_t wi = 0; wi < work.size(); ++wi) {
            const auto& w = work[wi];
            const auto& r = records[w.record];
            if (m_granularity == "claim") {
                units.push_back({wi, std::nullopt, gold_evidence(r), r.id});
                continue;
            }
            for (std::size_t j = 0; j < w.flat_indices.size(); ++j)
                units.push_back({wi, j, gold_evidence_for(r, w.flat_indices[j]),
                                 r.id + "#" + std::to_string(w.flat_indices[j])});
        }
        return units;
    }

    std::size_t k_for(const Unit& u, std::size_t paragraphs) const {
        if (m_k == "gold") return u.gold.relevant().size();
        return std::min(m_k_value, paragraphs);
    }

    std::size_t missing_negations(const std::vector<ClaimWork>& work, const std::vector<Unit>& units,
                                  RetrievalMode mode) const {
        if (mode == RetrievalMode::Support) return 0;
        std::size_t n = 0;
        for (const auto& u : units) {
            const auto& w = work[u.work];
            if (u.column) n += std::find(w.refute_columns.begin(), w.refute_columns.end(), *u.column) ==
                               w.refute_columns.end();
            else n += w.refute_columns.empty();
        }
        return n;
    }

    // Selection for one unit. Units without any usable refute column select
    // nothing in refute mode and fall back to support ranking in merged mode.
    IndexSet select(const std::vector<ClaimRecord>& records, const ClaimWork& w, const Unit& u,
                    RetrievalMode mode) const {
        const std::size_t k = k_for(u, records[w.record].article_paragraphs.size());
        std::optional<ScoreMatrix> support, refute;
        if (u.column) {
            support = column_of(*w.support, *u.column);
            auto it = std::find(w.refute_columns.begin(), w.refute_columns.end(), *u.column);
            if (w.refute && it != w.refute_columns.end())
                refute = column_of(*w.refute, static_cast<std::size_t>(it - w.refute_columns.begin()));
        } else {
            support = w.support;
            refute = w.refute;
        }
        if (mode == RetrievalMode::Refute && !refute) return {};
        if (mode == RetrievalMode::Merged && !refute) mode = RetrievalMode::Support;
        return retrieve_from_matrices(&*support, refute ? &*refute : nullptr, mode, k).selected;
    }

    RetrievalCounts evaluate_scorer(const std::vector<ClaimRecord>& records, const std::vector<ClaimWork>& work,
                                    const std::vector<Unit>& units, RetrievalMode mode, Table* per_unit) const {
        std::vector<IndexSet> selected(units.size());
        parallel_for(units.size(), m_out.jobs, [&](std::size_t i, std::size_t) {
            selected[i] = select(records, work[units[i].work], units[i], mode);
        });
        return pool(units, selected, mode, records, work, per_unit);
    }

    RetrievalCounts evaluate_random(const std::vector<ClaimRecord>& records, const std::vector<ClaimWork>& work,
                                    const std::vector<Unit>& units, RetrievalMode mode, Table* per_unit) const {
        std::vector<IndexSet> selected(units.size());
        const auto dist = evidence_label_distribution();
        for (std::size_t i = 0; i < units.size(); ++i) {
            const auto m = records[work[units[i].work].record].article_paragraphs.size();
            selected[i] = labeled(random_retrieval_baseline(m, dist, m_out.seed + i), mode);
        }
        return pool(units, selected, mode, records, work, per_unit);
    }

    RetrievalCounts pool(const std::vector<Unit>& units, const std::vector<IndexSet>& selected, RetrievalMode mode,
                         const std::vector<ClaimRecord>& records, const std::vector<ClaimWork>& work,
                         Table* per_unit) const {
        RetrievalCounts counts;
        for (std::size_t i = 0; i < units.size(); ++i) {
            const auto gold = units[i].gold.for_mode(mode);
            counts.add(selected[i], gold);
            if (per_unit)
                per_unit->add({units[i].label,
                               cell(k_for(units[i], records[work[units[i].work].record].article_paragraphs.size())),
                               join(selected[i]), join(gold), evaluate_retrieval(selected[i], gold)});
        }
        return counts;
    }

    // Pooled leave-one-out agreement over units judged by exactly three
    // annotators. Returns the mean of the three pooled F1 values and the
    // number of units used.
    std::pair<double, std::size_t> evaluate_human(const std::vector<ClaimRecord>& records,
                                                  const std::vector<ClaimWork>& work, const std::vector<Unit>& units,
                                                  RetrievalMode mode) const {
        std::array<RetrievalCounts, 3> pooled;
        std::size_t used = 0;
        for (const auto& u : units) {
            const auto& w = work[u.work];
            const auto& r = records[w.record];
            std::vector<IndexSet> sets;
            if (u.column) {
                const std::size_t flat = w.flat_indices[*u.column];
                for (const auto& a : annotators_of_subquestion(r, flat))
                    sets.push_back(labeled(subquestion_labels(r, a, flat), mode));
            } else {
                for (const auto& a : judging_annotators(r)) sets.push_back(labeled(annotator_claim_labels(r, a), mode));
            }
            if (sets.size() != 3) continue;
            ++used;
            const auto c = human_agreement_counts(sets);
            for (std::size_t a = 0; a < 3; ++a) pooled[a] += c[a];
        }
        if (!used) return {0.0, 0};
        return {(pooled[0].f1() + pooled[1].f1() + pooled[2].f1()) / 3.0, used};
    }

    DatasetOptions m_data;
    OutputOptions m_out;
    std::string m_scorer = "bm25";
    std::string m_mode = "support";
    std::string m_k = "gold";
    std::size_t m_k_value = 0;
    std::string m_decomp = "gold";
    std::string m_converter = "auto";
    std::string m_baseline;
    int m_table = 0;
    std::string m_granularity = "claim";
    long m_timeout_ms = 30000;
    Bm25Params m_bm25;
    bool m_per_unit = false;
};

}  // namespace

std::unique_ptr<Command> make_retrieve(CLI::App& parent) { return std::make_unique<RetrieveCommand>(parent); }

}  // namespace claimdecomp::cli
