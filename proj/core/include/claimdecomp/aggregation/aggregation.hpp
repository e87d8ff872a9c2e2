#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "claimdecomp/model/label.hpp"
#include "claimdecomp/model/types.hpp"

namespace claimdecomp {

/// How "unknown" answers enter the yes fraction. Count keeps them in the
/// denominator (the plain fraction of yes answers); Exclude drops them.
enum class UnknownPolicy : std::uint8_t { Count, Exclude };

struct AnswerVector {
    std::vector<Answer> answers;
    /// When present, only entries marked true take part.
    std::optional<std::vector<bool>> relevance_mask;
};

/// Fraction of kept answers that are yes. Throws InvalidArgument when the
/// vector is empty, the mask length differs, or nothing is left to count.
double aggregate_veracity(const AnswerVector& v, UnknownPolicy unknown = UnknownPolicy::Count);

/// Maps a score in [0, 1] onto the six labels by sixths: [0,1/6) is
/// pants-on-fire, ..., [5/6,1] is true. Throws InvalidArgument outside [0, 1]
/// or for NaN.
Veracity score_to_label(double v_hat);

/// Which annotation of a claim to aggregate.
enum class AnnotationChoice : std::uint8_t {
    Larger,  // the one with more subquestions; the first on ties
    First,
    Second,
    Merged,  // all subquestions of both annotations
};

/// score_to_label(aggregate_veracity(...)) over one annotation's answers.
/// Throws InvalidArgument when the annotation does not exist.
Veracity predict_claim(const ClaimRecord& record, std::size_t annotation_index,
                       const std::optional<std::vector<bool>>& mask = std::nullopt,
                       UnknownPolicy unknown = UnknownPolicy::Count);

/// Answers selected by `choice`, in order. Empty when the record has no
/// annotations (or no second one for AnnotationChoice::Second).
std::vector<Answer> select_answers(const ClaimRecord& record, AnnotationChoice choice);

/// Index of the annotation selected by `choice`; nullopt for Merged or when
/// it does not exist.
std::optional<std::size_t> select_annotation(const ClaimRecord& record, AnnotationChoice choice);

/// Probability per label, indexed by ordinal.
using LabelDistribution = std::array<double, kVeracityCount>;

/// Label distribution of the filtered complex-claim corpus (9.1, 11.5, 22.9,
/// 24.0, 18.9, 13.6 percent).
LabelDistribution corpus_label_distribution();

enum class BaselineKind : std::uint8_t { RandomUniform, RandomLabelDist, MostFrequent };

/// One prediction per gold label. Random kinds draw from a mt19937_64 seeded
/// with `seed`; the mapping from raw draws to labels is fixed here so output
/// is identical across standard libraries. `dist` defaults to
/// corpus_label_distribution() and must sum to 1 within 1e-9.
std::vector<Veracity> baseline(BaselineKind kind, const std::vector<Veracity>& golds,
                               const std::optional<LabelDistribution>& dist, std::uint64_t seed);

struct ClassifierReport {
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double mae = 0.0;
    std::array<double, kVeracityCount> per_class_f1{};
};

/// Macro-F1 over all six classes (classes never predicted and never gold
/// contribute 0), micro-F1 (= accuracy) and mean absolute ordinal error.
/// Throws InvalidArgument on empty or unequal-length input.
ClassifierReport evaluate_classifier(const std::vector<Veracity>& preds,
                                     const std::vector<Veracity>& golds);

}  // namespace claimdecomp
