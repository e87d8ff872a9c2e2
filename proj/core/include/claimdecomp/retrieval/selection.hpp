#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimdecomp/codec/statements.hpp"
#include "claimdecomp/retrieval/score_matrix.hpp"
#include "claimdecomp/retrieval/scorers.hpp"

namespace claimdecomp {

using IndexSet = std::set<std::size_t>;

enum class RetrievalMode : std::uint8_t { Support, Refute, Merged };

std::string_view to_string(RetrievalMode m) noexcept;
RetrievalMode parse_retrieval_mode(std::string_view s);

struct RetrievalResult {
    RetrievalMode mode = RetrievalMode::Support;
    IndexSet selected;
    std::size_t k = 0;
};

/// A statement to score paragraphs against; `negated` is missing when no
/// converter produced one.
struct Hypothesis {
    std::string affirmative;
    std::optional<std::string> negated;

    static Hypothesis from(const StatementPair& p) { return {p.affirmative, p.negated}; }
};

/// Row maxima: each paragraph's best score over all hypotheses.
std::vector<double> representative_scores(const ScoreMatrix& m);

/// The k largest representative scores; ties go to the lower index. Throws
/// InvalidArgument when k exceeds the number of paragraphs.
IndexSet select_topk(std::span<const double> representative, std::size_t k);
IndexSet select_topk(const ScoreMatrix& m, std::size_t k);

/// Selection from precomputed matrices. Support mode ranks `support` rows,
/// refute mode `refute` rows, merged mode ranks each paragraph by the larger
/// of its two row maxima. Throws InvalidArgument when the needed matrix is
/// missing or the two matrices disagree on the paragraph count.
RetrievalResult retrieve_from_matrices(const ScoreMatrix* support, const ScoreMatrix* refute,
                                       RetrievalMode mode, std::size_t k);

/// Scores affirmative statements (support), negated statements (refute) or
/// both (merged) with `scorer`, then selects. Throws InvalidArgument when
/// refute or merged mode is asked for and some hypothesis lacks a negation.
RetrievalResult retrieve(const std::vector<std::string>& paragraphs,
                         const std::vector<Hypothesis>& hypotheses, RetrievalMode mode,
                         Scorer& scorer, std::size_t k);

}  // namespace claimdecomp
