#include "claimdecomp/retrieval/evidence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "claimdecomp/error.hpp"
#include "claimdecomp/evalkit/agreement.hpp"

namespace claimdecomp {

namespace {

const std::vector<ParagraphJudgment>& judgments_of(const ClaimRecord& r) {
    static const std::vector<ParagraphJudgment> none;
    return r.paragraph_judgments ? *r.paragraph_judgments : none;
}

// annotator -> paragraph -> label, for one subquestion
using SubquestionVotes = std::map<std::string, std::map<std::size_t, ParagraphLabel>>;

SubquestionVotes votes_for(const ClaimRecord& r, std::size_t flat_subquestion) {
    SubquestionVotes out;
    for (const auto& j : judgments_of(r))
        if (j.subquestion_index == flat_subquestion) out[j.annotator_id][j.paragraph_index] = j.label;
    return out;
}

ParagraphLabel label_or_context(const std::map<std::size_t, ParagraphLabel>& m, std::size_t p) {
    auto it = m.find(p);
    return it == m.end() ? ParagraphLabel::Context : it->second;
}

std::size_t idx(ParagraphLabel l) { return static_cast<std::size_t>(l); }

std::array<double, 3> to_pct(const std::array<std::size_t, 3>& counts) {
    const std::size_t total = counts[0] + counts[1] + counts[2];
    std::array<double, 3> out{};
    if (total == 0) return out;
    for (std::size_t k = 0; k < 3; ++k)
        out[k] = 100.0 * static_cast<double>(counts[k]) / static_cast<double>(total);
    return out;
}

std::optional<double> kappa_of_modal_rows(const std::vector<std::vector<std::string>>& rows) {
    std::map<std::size_t, std::size_t> by_width;
    for (const auto& r : rows) ++by_width[r.size()];
    std::size_t width = 0;
    std::size_t best = 0;
    for (const auto& [w, n] : by_width)
        if (w >= 2 && n >= best) {
            best = n;
            width = w;
        }
    if (best < 2) return std::nullopt;
    RatingTable table;
    for (const auto& r : rows)
        if (r.size() == width) table.ratings.push_back(r);
    table.categories = {"context", "support", "refute"};
    return fleiss_kappa(table);
}

}  // namespace

IndexSet EvidenceGold::relevant() const {
    IndexSet out = support;
    out.insert(refute.begin(), refute.end());
    return out;
}

IndexSet EvidenceGold::for_mode(RetrievalMode mode) const {
    switch (mode) {
    case RetrievalMode::Support: return support;
    case RetrievalMode::Refute: return refute;
    case RetrievalMode::Merged: return relevant();
    }
    return relevant();
}

std::vector<std::size_t> judged_subquestions(const ClaimRecord& record) {
    std::set<std::size_t> seen;
    for (const auto& j : judgments_of(record)) seen.insert(j.subquestion_index);
    return {seen.begin(), seen.end()};
}

std::vector<std::string> judging_annotators(const ClaimRecord& record) {
    std::set<std::string> seen;
    for (const auto& j : judgments_of(record)) seen.insert(j.annotator_id);
    return {seen.begin(), seen.end()};
}

ParagraphLabel majority_label(const std::vector<ParagraphLabel>& votes) {
    std::array<std::size_t, 3> counts{};
    for (auto v : votes) ++counts[idx(v)];
    for (auto l : {ParagraphLabel::Support, ParagraphLabel::Refute})
        if (2 * counts[idx(l)] > votes.size()) return l;
    return ParagraphLabel::Context;
}

EvidenceGold gold_evidence_for(const ClaimRecord& record, std::size_t flat_subquestion) {
    const auto votes = votes_for(record, flat_subquestion);
    EvidenceGold gold;
    if (votes.empty()) return gold;
    for (std::size_t p = 0; p < record.article_paragraphs.size(); ++p) {
        std::vector<ParagraphLabel> cell;
        for (const auto& [_, labels] : votes) cell.push_back(label_or_context(labels, p));
        switch (majority_label(cell)) {
        case ParagraphLabel::Support: gold.support.insert(p); break;
        case ParagraphLabel::Refute: gold.refute.insert(p); break;
        case ParagraphLabel::Context: break;
        }
    }
    return gold;
}

EvidenceGold gold_evidence(const ClaimRecord& record) {
    EvidenceGold gold;
    for (std::size_t q : judged_subquestions(record)) {
        auto g = gold_evidence_for(record, q);
        gold.support.insert(g.support.begin(), g.support.end());
        gold.refute.insert(g.refute.begin(), g.refute.end());
    }
    return gold;
}

std::vector<ParagraphLabel> annotator_claim_labels(const ClaimRecord& record,
                                                   const std::string& annotator_id) {
    const std::size_t m = record.article_paragraphs.size();
    std::vector<std::size_t> support(m, 0), refute(m, 0);
    for (const auto& j : judgments_of(record)) {
        if (j.annotator_id != annotator_id || j.paragraph_index >= m) continue;
        if (j.label == ParagraphLabel::Support) ++support[j.paragraph_index];
        if (j.label == ParagraphLabel::Refute) ++refute[j.paragraph_index];
    }
    std::vector<ParagraphLabel> out(m, ParagraphLabel::Context);
    for (std::size_t p = 0; p < m; ++p) {
        if (support[p] == 0 && refute[p] == 0) continue;
        out[p] = support[p] >= refute[p] ? ParagraphLabel::Support : ParagraphLabel::Refute;
    }
    return out;
}

std::vector<IndexSet> annotator_relevance(const ClaimRecord& record) {
    std::vector<IndexSet> out;
    for (const auto& a : judging_annotators(record)) {
        const auto labels = annotator_claim_labels(record, a);
        IndexSet relevant;
        for (std::size_t p = 0; p < labels.size(); ++p)
            if (labels[p] != ParagraphLabel::Context) relevant.insert(p);
        out.push_back(std::move(relevant));
    }
    return out;
}

EvidenceStats evidence_stats(const std::vector<ClaimRecord>& records) {
    EvidenceStats st;
    std::array<std::size_t, 3> subq_counts{}, claim_counts{};
    std::vector<std::vector<std::string>> subq_rows, claim_rows;
    std::size_t subq_paragraphs = 0, claim_paragraphs = 0;

    for (const auto& r : records) {
        if (!r.paragraph_judgments || r.paragraph_judgments->empty()) continue;
        ++st.n_claims;
        const std::size_t m = r.article_paragraphs.size();
        claim_paragraphs += m;

        for (std::size_t q : judged_subquestions(r)) {
            ++st.n_subquestions;
            subq_paragraphs += m;
            const auto votes = votes_for(r, q);
            for (std::size_t p = 0; p < m; ++p) {
                std::vector<std::string> row;
                for (const auto& [_, labels] : votes) {
                    const auto l = label_or_context(labels, p);
                    ++subq_counts[idx(l)];
                    row.emplace_back(to_string(l));
                }
                subq_rows.push_back(std::move(row));
            }
        }

        const auto annotators = judging_annotators(r);
        std::vector<std::vector<ParagraphLabel>> per_annotator;
        for (const auto& a : annotators) per_annotator.push_back(annotator_claim_labels(r, a));
        for (std::size_t p = 0; p < m; ++p) {
            std::vector<std::string> row;
            for (const auto& labels : per_annotator) {
                ++claim_counts[idx(labels[p])];
                row.emplace_back(to_string(labels[p]));
            }
            claim_rows.push_back(std::move(row));
        }
    }
    if (st.n_claims == 0) throw InvalidArgument("evidence_stats: no record carries paragraph judgments");

    st.paragraphs_per_subquestion =
        st.n_subquestions == 0 ? 0.0
                               : static_cast<double>(subq_paragraphs) / static_cast<double>(st.n_subquestions);
    st.paragraphs_per_claim = static_cast<double>(claim_paragraphs) / static_cast<double>(st.n_claims);
    st.per_subquestion_pct = to_pct(subq_counts);
    st.per_claim_pct = to_pct(claim_counts);
    st.per_subquestion_kappa = kappa_of_modal_rows(subq_rows);
    st.per_claim_kappa = kappa_of_modal_rows(claim_rows);
    return st;
}

}  // namespace claimdecomp
