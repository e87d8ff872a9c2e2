#include "claimdecomp/retrieval/score_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

ScoreMatrix::ScoreMatrix(std::vector<std::string> paragraph_ids,
                         std::vector<std::string> hypothesis_ids, std::vector<double> scores,
                         std::string scorer_name, bool bounded)
    : m_paragraph_ids(std::move(paragraph_ids)),
      m_hypothesis_ids(std::move(hypothesis_ids)),
      m_scores(std::move(scores)),
      m_scorer_name(std::move(scorer_name)),
      m_bounded(bounded) {
    if (m_scores.size() != rows() * cols())
        throw DataError("score matrix: " + std::to_string(m_scores.size()) + " scores for " +
                        std::to_string(rows()) + " x " + std::to_string(cols()) + " cells");
    for (std::size_t i = 0; i < m_scores.size(); ++i) {
        const double s = m_scores[i];
        if (!std::isfinite(s))
            throw DataError("score matrix: non-finite score at cell " + std::to_string(i));
        if (m_bounded && (s < 0.0 || s > 1.0))
            throw DataError("score matrix: bounded scorer produced " + std::to_string(s) +
                            " at cell " + std::to_string(i));
    }
}

double ScoreMatrix::row_max(std::size_t paragraph) const {
    const auto r = row(paragraph);
    if (r.empty()) return -std::numeric_limits<double>::infinity();
    return *std::max_element(r.begin(), r.end());
}

std::vector<std::string> index_ids(char prefix, std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, prefix) + std::to_string(i));
    return ids;
}

std::string score_matrix_to_json(const ScoreMatrix& m) {
    nlohmann::ordered_json o;
    o["paragraph_ids"] = m.paragraph_ids();
    o["hypothesis_ids"] = m.hypothesis_ids();
    o["scores"] = m.scores();
    o["scorer_name"] = m.scorer_name();
    o["bounded"] = m.bounded();
    return o.dump();
}

ScoreMatrix score_matrix_from_json(std::string_view text) {
    using json = nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("score matrix: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("score matrix: expected an object");
    const auto strings = [&](const char* key) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_array())
            throw DataError(std::string("score matrix: missing array \"") + key + "\"");
        std::vector<std::string> out;
        for (const auto& v : *it) {
            if (!v.is_string()) throw DataError(std::string("score matrix: non-string in ") + key);
            out.push_back(v.get<std::string>());
        }
        return out;
    };
    auto paragraphs = strings("paragraph_ids");
    auto hypotheses = strings("hypothesis_ids");
    auto it = j.find("scores");
    if (it == j.end() || !it->is_array()) throw DataError("score matrix: missing array \"scores\"");
    std::vector<double> scores;
    for (const auto& v : *it) {
        if (!v.is_number()) throw DataError("score matrix: non-numeric score");
        scores.push_back(v.get<double>());
    }
    std::string name = "file";
    if (auto n = j.find("scorer_name"); n != j.end() && n->is_string()) name = n->get<std::string>();
    bool bounded = false;
    if (auto b = j.find("bounded"); b != j.end() && b->is_boolean()) bounded = b->get<bool>();
    return ScoreMatrix(std::move(paragraphs), std::move(hypotheses), std::move(scores),
                       std::move(name), bounded);
}

void save_scores(std::ostream& out, const ScoreMatrix& m) { out << score_matrix_to_json(m) << '\n'; }

ScoreMatrix load_scores(std::istream& in) {
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return score_matrix_from_json(text);
}

}  // namespace claimdecomp
