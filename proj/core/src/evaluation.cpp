#include "claimdecomp/retrieval/evaluation.hpp"

#include <cmath>
#include <random>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

double f1_from_counts(std::size_t hits, std::size_t selected, std::size_t gold) {
    if (selected == 0 && gold == 0) return 1.0;
    if (selected == 0 || gold == 0) return 0.0;
    // 2PR/(P+R) == 2|S∩G| / (|S| + |G|)
    return 2.0 * static_cast<double>(hits) / static_cast<double>(selected + gold);
}

std::size_t intersection_size(const IndexSet& a, const IndexSet& b) {
    std::size_t n = 0;
    for (std::size_t x : a) n += b.count(x);
    return n;
}

}  // namespace

double evaluate_retrieval(const IndexSet& selected, const IndexSet& gold) {
    return f1_from_counts(intersection_size(selected, gold), selected.size(), gold.size());
}

void RetrievalCounts::add(const IndexSet& selected_set, const IndexSet& gold_set) {
    hits += intersection_size(selected_set, gold_set);
    selected += selected_set.size();
    gold += gold_set.size();
}

RetrievalCounts& RetrievalCounts::operator+=(const RetrievalCounts& o) {
    hits += o.hits;
    selected += o.selected;
    gold += o.gold;
    return *this;
}

double RetrievalCounts::precision() const {
    if (selected == 0) return gold == 0 ? 1.0 : 0.0;
    return static_cast<double>(hits) / static_cast<double>(selected);
}

double RetrievalCounts::recall() const {
    if (gold == 0) return selected == 0 ? 1.0 : 0.0;
    return static_cast<double>(hits) / static_cast<double>(gold);
}

double RetrievalCounts::f1() const { return f1_from_counts(hits, selected, gold); }

ParagraphLabelDistribution evidence_label_distribution() {
    constexpr double context = 87.6;
    constexpr double support = 5.4;
    constexpr double refute = 8.0;
    constexpr double total = context + support + refute;
    return {context / total, support / total, refute / total};
}

std::vector<ParagraphLabel> random_retrieval_baseline(std::size_t paragraph_count,
                                                      const ParagraphLabelDistribution& dist,
                                                      std::uint64_t seed) {
    double sum = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidArgument("paragraph label distribution has a negative or non-finite entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidArgument("paragraph label distribution sums to " + std::to_string(sum));

    std::mt19937_64 rng(seed);
    std::vector<ParagraphLabel> out;
    out.reserve(paragraph_count);
    for (std::size_t i = 0; i < paragraph_count; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double cumulative = 0.0;
        int label = 0;
        for (int k = 0; k < 3; ++k) {
            if (dist[k] <= 0.0) continue;
            label = k;
            cumulative += dist[k];
            if (u < cumulative) break;
        }
        out.push_back(static_cast<ParagraphLabel>(label));
    }
    return out;
}

std::array<RetrievalCounts, 3> human_agreement_counts(const std::vector<IndexSet>& annotators) {
    if (annotators.size() != 3)
        throw InvalidArgument("human agreement needs exactly three annotators, got " +
                              std::to_string(annotators.size()));
    IndexSet universe;
    for (const auto& a : annotators) universe.insert(a.begin(), a.end());

    std::array<RetrievalCounts, 3> counts;
    for (std::size_t self = 0; self < 3; ++self) {
        std::size_t first = self == 0 ? 1 : 0;
        std::size_t second = self == 2 ? 1 : 2;
        IndexSet majority;
        for (std::size_t p : universe) {
            const int votes = static_cast<int>(annotators[first].count(p)) +
                              static_cast<int>(annotators[second].count(p));
            if (votes == 2 || (votes == 1 && annotators[first].count(p))) majority.insert(p);
        }
        counts[self].add(annotators[self], majority);
    }
    return counts;
}

double human_agreement(const std::vector<IndexSet>& annotators) {
    const auto counts = human_agreement_counts(annotators);
    return (counts[0].f1() + counts[1].f1() + counts[2].f1()) / 3.0;
}

}  // namespace claimdecomp
