#include "claimdecomp/aggregation/aggregation.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

double aggregate_veracity(const AnswerVector& v, UnknownPolicy unknown) {
    if (v.answers.empty()) throw InvalidArgument("aggregate_veracity: no answers");
    if (v.relevance_mask && v.relevance_mask->size() != v.answers.size())
        throw InvalidArgument("aggregate_veracity: mask has " +
                              std::to_string(v.relevance_mask->size()) + " entries for " +
                              std::to_string(v.answers.size()) + " answers");
    std::size_t yes = 0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < v.answers.size(); ++i) {
        if (v.relevance_mask && !(*v.relevance_mask)[i]) continue;
        if (unknown == UnknownPolicy::Exclude && v.answers[i] == Answer::Unknown) continue;
        ++kept;
        if (v.answers[i] == Answer::Yes) ++yes;
    }
    if (kept == 0) throw InvalidArgument("aggregate_veracity: every answer was filtered out");
    return static_cast<double>(yes) / static_cast<double>(kept);
}

Veracity score_to_label(double v_hat) {
    if (!(v_hat >= 0.0 && v_hat <= 1.0))
        throw InvalidArgument("score_to_label: score " + std::to_string(v_hat) +
                              " outside [0, 1]");
    // Lower-closed sixths; the last interval also takes 1.0.
    int label = 0;
    for (int k = 1; k < static_cast<int>(kVeracityCount); ++k)
        if (v_hat >= static_cast<double>(k) / 6.0) label = k;
    return static_cast<Veracity>(label);
}

std::optional<std::size_t> select_annotation(const ClaimRecord& record, AnnotationChoice choice) {
    const auto& anns = record.annotations;
    switch (choice) {
    case AnnotationChoice::Larger:
        if (anns.empty()) return std::nullopt;
        if (anns.size() > 1 && anns[1].subquestions.size() > anns[0].subquestions.size()) return 1;
        return 0;
    case AnnotationChoice::First:
        return anns.empty() ? std::nullopt : std::optional<std::size_t>(0);
    case AnnotationChoice::Second:
        return anns.size() < 2 ? std::nullopt : std::optional<std::size_t>(1);
    case AnnotationChoice::Merged:
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Answer> select_answers(const ClaimRecord& record, AnnotationChoice choice) {
    std::vector<Answer> out;
    if (choice == AnnotationChoice::Merged) {
        for (const auto& a : record.annotations)
            for (const auto& q : a.subquestions) out.push_back(q.answer);
        return out;
    }
    if (auto idx = select_annotation(record, choice))
        for (const auto& q : record.annotations[*idx].subquestions) out.push_back(q.answer);
    return out;
}

Veracity predict_claim(const ClaimRecord& record, std::size_t annotation_index,
                       const std::optional<std::vector<bool>>& mask, UnknownPolicy unknown) {
    if (annotation_index >= record.annotations.size())
        throw InvalidArgument("claim '" + record.id + "' has no annotation " +
                              std::to_string(annotation_index));
    AnswerVector v;
    for (const auto& q : record.annotations[annotation_index].subquestions)
        v.answers.push_back(q.answer);
    v.relevance_mask = mask;
    return score_to_label(aggregate_veracity(v, unknown));
}

LabelDistribution corpus_label_distribution() {
    return {0.091, 0.115, 0.229, 0.240, 0.189, 0.136};
}

namespace {

// 53 random mantissa bits -> [0, 1).
double unit_interval(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int draw_from(const LabelDistribution& dist, std::mt19937_64& rng) {
    const double u = unit_interval(rng);
    double cumulative = 0.0;
    int last_positive = 0;
    for (int k = 0; k < static_cast<int>(kVeracityCount); ++k) {
        if (dist[k] <= 0.0) continue;
        last_positive = k;
        cumulative += dist[k];
        if (u < cumulative) return k;
    }
    return last_positive;  // rounding slack at the top end
}

void check_distribution(const LabelDistribution& dist) {
    double sum = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidArgument("label distribution has a negative or non-finite entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidArgument("label distribution sums to " + std::to_string(sum) + ", not 1");
}

}  // namespace

std::vector<Veracity> baseline(BaselineKind kind, const std::vector<Veracity>& golds,
                               const std::optional<LabelDistribution>& dist, std::uint64_t seed) {
    const LabelDistribution d = dist.value_or(corpus_label_distribution());
    if (kind != BaselineKind::RandomUniform) check_distribution(d);

    std::vector<Veracity> out;
    out.reserve(golds.size());
    std::mt19937_64 rng(seed);
    switch (kind) {
    case BaselineKind::RandomUniform:
        for (std::size_t i = 0; i < golds.size(); ++i)
            out.push_back(static_cast<Veracity>(
                static_cast<int>(unit_interval(rng) * static_cast<double>(kVeracityCount))));
        break;
    case BaselineKind::RandomLabelDist:
        for (std::size_t i = 0; i < golds.size(); ++i)
            out.push_back(static_cast<Veracity>(draw_from(d, rng)));
        break;
    case BaselineKind::MostFrequent: {
        int mode = 0;
        for (int k = 1; k < static_cast<int>(kVeracityCount); ++k)
            if (d[k] > d[mode]) mode = k;
        out.assign(golds.size(), static_cast<Veracity>(mode));
        break;
    }
    }
    return out;
}

ClassifierReport evaluate_classifier(const std::vector<Veracity>& preds,
                                     const std::vector<Veracity>& golds) {
    if (preds.empty()) throw InvalidArgument("evaluate_classifier: empty input");
    if (preds.size() != golds.size())
        throw InvalidArgument("evaluate_classifier: " + std::to_string(preds.size()) +
                              " predictions for " + std::to_string(golds.size()) + " golds");
    std::array<std::size_t, kVeracityCount> tp{}, predicted{}, actual{};
    std::size_t correct = 0;
    std::size_t abs_error = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const int p = ordinal(preds[i]);
        const int g = ordinal(golds[i]);
        ++predicted[p];
        ++actual[g];
        if (p == g) {
            ++tp[p];
            ++correct;
        }
        abs_error += static_cast<std::size_t>(std::abs(p - g));
    }
    ClassifierReport r;
    double f1_sum = 0.0;
    for (std::size_t k = 0; k < kVeracityCount; ++k) {
        // 2TP / (2TP + FP + FN); zero when the class never appears.
        const std::size_t denom = predicted[k] + actual[k];
        r.per_class_f1[k] = denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp[k]) / static_cast<double>(denom);
        f1_sum += r.per_class_f1[k];
    }
    const auto n = static_cast<double>(preds.size());
    r.macro_f1 = f1_sum / static_cast<double>(kVeracityCount);
    r.micro_f1 = static_cast<double>(correct) / n;
    r.mae = static_cast<double>(abs_error) / n;
    return r;
}

}  // namespace claimdecomp
