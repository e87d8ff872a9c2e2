#include "claimdecomp/retrieval/selection.hpp"

#include <algorithm>
#include <numeric>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

std::string_view to_string(RetrievalMode m) noexcept {
    switch (m) {
    case RetrievalMode::Support: return "support";
    case RetrievalMode::Refute: return "refute";
    case RetrievalMode::Merged: return "merged";
    }
    return "support";
}

RetrievalMode parse_retrieval_mode(std::string_view s) {
    if (s == "support") return RetrievalMode::Support;
    if (s == "refute") return RetrievalMode::Refute;
    if (s == "merged") return RetrievalMode::Merged;
    throw DataError("unknown retrieval mode '" + std::string(s) + "'");
}

std::vector<double> representative_scores(const ScoreMatrix& m) {
    std::vector<double> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m.row_max(i);
    return out;
}

IndexSet select_topk(std::span<const double> representative, std::size_t k) {
    if (k > representative.size())
        throw InvalidArgument("select_topk: k = " + std::to_string(k) + " exceeds " +
                              std::to_string(representative.size()) + " paragraphs");
    std::vector<std::size_t> order(representative.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (representative[a] != representative[b])
                              return representative[a] > representative[b];
                          return a < b;
                      });
    return IndexSet(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
}

IndexSet select_topk(const ScoreMatrix& m, std::size_t k) {
    const auto rep = representative_scores(m);
    return select_topk(rep, k);
}

RetrievalResult retrieve_from_matrices(const ScoreMatrix* support, const ScoreMatrix* refute,
                                       RetrievalMode mode, std::size_t k) {
    RetrievalResult out{mode, {}, k};
    switch (mode) {
    case RetrievalMode::Support:
        if (!support) throw InvalidArgument("support retrieval needs a support score matrix");
        out.selected = select_topk(*support, k);
        break;
    case RetrievalMode::Refute:
        if (!refute) throw InvalidArgument("refute retrieval needs a negated-hypothesis score matrix");
        out.selected = select_topk(*refute, k);
        break;
    case RetrievalMode::Merged: {
        if (!support || !refute)
            throw InvalidArgument("merged retrieval needs both support and refute score matrices");
        if (support->rows() != refute->rows())
            throw InvalidArgument("merged retrieval: support and refute matrices differ in rows");
        auto rep = representative_scores(*support);
        const auto neg = representative_scores(*refute);
        for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = std::max(rep[i], neg[i]);
        out.selected = select_topk(rep, k);
        break;
    }
    }
    return out;
}

RetrievalResult retrieve(const std::vector<std::string>& paragraphs,
                         const std::vector<Hypothesis>& hypotheses, RetrievalMode mode,
                         Scorer& scorer, std::size_t k) {
    if (k > paragraphs.size())
        throw InvalidArgument("retrieve: k = " + std::to_string(k) + " exceeds " +
                              std::to_string(paragraphs.size()) + " paragraphs");
    std::optional<ScoreMatrix> support;
    std::optional<ScoreMatrix> refute;
    if (mode != RetrievalMode::Refute) {
        std::vector<std::string> affirmative;
        for (const auto& h : hypotheses) affirmative.push_back(h.affirmative);
        support = scorer.score(paragraphs, affirmative);
    }
    if (mode != RetrievalMode::Support) {
        std::vector<std::string> negated;
        for (std::size_t j = 0; j < hypotheses.size(); ++j) {
            if (!hypotheses[j].negated)
                throw InvalidArgument("hypothesis " + std::to_string(j) +
                                      " has no negated form; " + std::string(to_string(mode)) +
                                      " retrieval needs one (use an external converter)");
            negated.push_back(*hypotheses[j].negated);
        }
        refute = scorer.score(paragraphs, negated);
    }
    return retrieve_from_matrices(support ? &*support : nullptr, refute ? &*refute : nullptr, mode, k);
}

}  // namespace claimdecomp
