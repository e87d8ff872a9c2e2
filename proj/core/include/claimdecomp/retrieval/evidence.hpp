#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "claimdecomp/model/types.hpp"
#include "claimdecomp/retrieval/selection.hpp"

namespace claimdecomp {

/// Paragraphs that the annotator majority marked as support or refute.
struct EvidenceGold {
    IndexSet support;
    IndexSet refute;

    /// support ∪ refute
    IndexSet relevant() const;
    /// Gold set scored against a retrieval in `mode`: support-labeled only,
    /// refute-labeled only, or both for merged.
    IndexSet for_mode(RetrievalMode mode) const;

    bool operator==(const EvidenceGold&) const = default;
};

/// Flattened subquestion indices that carry at least one judgment, ascending.
std::vector<std::size_t> judged_subquestions(const ClaimRecord& record);

/// Distinct judging annotators in lexicographic order.
std::vector<std::string> judging_annotators(const ClaimRecord& record);

/// Majority label of one (subquestion, paragraph) cell. A label wins only
/// with more than half of the votes cast; anything else is context.
ParagraphLabel majority_label(const std::vector<ParagraphLabel>& votes);

/// Gold for one flattened subquestion.
EvidenceGold gold_evidence_for(const ClaimRecord& record, std::size_t flat_subquestion);

/// Claim-level gold: the union of the per-subquestion gold sets over all
/// judged subquestions. Records without judgments yield empty sets.
EvidenceGold gold_evidence(const ClaimRecord& record);

/// One annotator's claim-level label for each paragraph: the non-context
/// label they used most often across subquestions (support wins a tie), or
/// context if they never used one. Unjudged paragraphs count as context.
std::vector<ParagraphLabel> annotator_claim_labels(const ClaimRecord& record,
                                                   const std::string& annotator_id);

/// Claim-level relevant paragraphs of each judging annotator, in
/// judging_annotators order.
std::vector<IndexSet> annotator_relevance(const ClaimRecord& record);

/// Summary of the evidence annotations, with label shares per
/// (subquestion, paragraph, annotator) and per (claim, paragraph, annotator).
struct EvidenceStats {
    std::size_t n_claims = 0;
    std::size_t n_subquestions = 0;
    double paragraphs_per_subquestion = 0.0;
    double paragraphs_per_claim = 0.0;
    std::array<double, 3> per_subquestion_pct{};
    std::array<double, 3> per_claim_pct{};
    /// Fleiss kappa over items whose rater count equals the most common
    /// count; missing when no such items exist or chance agreement is 1.
    std::optional<double> per_subquestion_kappa;
    std::optional<double> per_claim_kappa;
};

/// Statistics over the records that carry judgments. Throws InvalidArgument
/// when none do.
EvidenceStats evidence_stats(const std::vector<ClaimRecord>& records);

}  // namespace claimdecomp
