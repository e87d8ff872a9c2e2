#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "claimdecomp/model/types.hpp"
#include "claimdecomp/retrieval/selection.hpp"

namespace claimdecomp {

/// Set F1 of a selection against gold. Both empty scores 1.0; exactly one
/// empty scores 0.0.
double evaluate_retrieval(const IndexSet& selected, const IndexSet& gold);

/// Counts pooled over many claims for micro-averaged precision/recall/F1.
struct RetrievalCounts {
    std::size_t hits = 0;
    std::size_t selected = 0;
    std::size_t gold = 0;

    void add(const IndexSet& selected_set, const IndexSet& gold_set);
    RetrievalCounts& operator+=(const RetrievalCounts& o);

    double precision() const;
    double recall() const;
    /// Same empty-set conventions as evaluate_retrieval.
    double f1() const;
};

/// Probabilities of context / support / refute, indexed by ParagraphLabel.
using ParagraphLabelDistribution = std::array<double, 3>;

/// Per-subquestion evidence label shares of the annotated evidence set
/// (87.6 / 5.4 / 8.0 percent), rescaled to sum to 1 since the published
/// shares add up to 101.
ParagraphLabelDistribution evidence_label_distribution();

/// Independent draws, one per paragraph. Throws InvalidArgument unless the
/// distribution is non-negative and sums to 1 within 1e-9.
std::vector<ParagraphLabel> random_retrieval_baseline(std::size_t paragraph_count,
                                                      const ParagraphLabelDistribution& dist,
                                                      std::uint64_t seed);

/// Leave-one-out agreement of exactly three annotators' relevant-paragraph
/// sets. Each annotator is scored against the majority of the other two; when
/// those two disagree on a paragraph, the earlier of them decides. Returns
/// the mean of the three F1 values. Throws InvalidArgument unless there are
/// three annotators.
double human_agreement(const std::vector<IndexSet>& annotators);

/// Per-annotator counts behind human_agreement, for pooling over claims.
std::array<RetrievalCounts, 3> human_agreement_counts(const std::vector<IndexSet>& annotators);

}  // namespace claimdecomp
