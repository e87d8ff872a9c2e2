#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace claimdecomp {

/// Paragraph x hypothesis scores, row-major (row = paragraph). Immutable
/// once constructed; the constructor enforces the shape and value invariants.
class ScoreMatrix {
  public:
    /// Throws DataError when scores.size() != rows * cols, a score is not
    /// finite, or `bounded` is set and a score lies outside [0, 1].
    ScoreMatrix(std::vector<std::string> paragraph_ids, std::vector<std::string> hypothesis_ids,
                std::vector<double> scores, std::string scorer_name, bool bounded = false);

    std::size_t rows() const noexcept { return m_paragraph_ids.size(); }
    std::size_t cols() const noexcept { return m_hypothesis_ids.size(); }

    double at(std::size_t paragraph, std::size_t hypothesis) const {
        return m_scores[paragraph * cols() + hypothesis];
    }
    std::span<const double> row(std::size_t paragraph) const {
        return {m_scores.data() + paragraph * cols(), cols()};
    }

    /// Best score of a paragraph over all hypotheses; -inf with no hypotheses.
    double row_max(std::size_t paragraph) const;

    const std::vector<std::string>& paragraph_ids() const noexcept { return m_paragraph_ids; }
    const std::vector<std::string>& hypothesis_ids() const noexcept { return m_hypothesis_ids; }
    const std::vector<double>& scores() const noexcept { return m_scores; }
    const std::string& scorer_name() const noexcept { return m_scorer_name; }
    bool bounded() const noexcept { return m_bounded; }

    bool operator==(const ScoreMatrix&) const = default;

  private:
    std::vector<std::string> m_paragraph_ids;
    std::vector<std::string> m_hypothesis_ids;
    std::vector<double> m_scores;
    std::string m_scorer_name;
    bool m_bounded = false;
};

/// Default ids "p0", "p1", ... and "h0", "h1", ...
std::vector<std::string> index_ids(char prefix, std::size_t n);

/// Score-matrix file: one JSON object with paragraph_ids, hypothesis_ids and
/// a flat row-major scores array (plus optional scorer_name and bounded).
/// Floats are written with round-trip precision.
std::string score_matrix_to_json(const ScoreMatrix& m);
ScoreMatrix score_matrix_from_json(std::string_view text);

void save_scores(std::ostream& out, const ScoreMatrix& m);
ScoreMatrix load_scores(std::istream& in);

}  // namespace claimdecomp
