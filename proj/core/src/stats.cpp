#include "claimdecomp/model/stats.hpp"

#include "claimdecomp/error.hpp"
#include "claimdecomp/model/tokenizer.hpp"

namespace claimdecomp {

DatasetStats compute_stats(const std::vector<ClaimRecord>& records) {
    if (records.empty()) throw InvalidArgument("compute_stats: empty record list");

    DatasetStats s;
    s.n_claims = records.size();
    std::size_t tokens = 0;
    std::array<std::size_t, 3> answers{};
    std::array<std::size_t, 2> sources{};
    std::array<std::size_t, kVeracityCount> labels{};

    for (const auto& r : records) {
        tokens += tokenize(r.claim).size();
        ++labels[static_cast<std::size_t>(r.gold_label)];
        for (const auto& a : r.annotations) {
            ++s.n_annotations;
            for (const auto& q : a.subquestions) {
                ++s.n_subquestions;
                ++answers[static_cast<std::size_t>(q.answer)];
                ++sources[static_cast<std::size_t>(q.source)];
            }
        }
    }

    const auto pct = [](std::size_t part, std::size_t whole) {
        return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
    };
    s.avg_tokens_per_claim = static_cast<double>(tokens) / static_cast<double>(s.n_claims);
    s.avg_subquestions_per_annotation =
        s.n_annotations == 0
            ? 0.0
            : static_cast<double>(s.n_subquestions) / static_cast<double>(s.n_annotations);
    for (std::size_t i = 0; i < answers.size(); ++i) s.answer_pct[i] = pct(answers[i], s.n_subquestions);
    for (std::size_t i = 0; i < sources.size(); ++i) s.source_pct[i] = pct(sources[i], s.n_subquestions);
    for (std::size_t i = 0; i < labels.size(); ++i) s.label_dist[i] = pct(labels[i], s.n_claims);
    return s;
}

}  // namespace claimdecomp
