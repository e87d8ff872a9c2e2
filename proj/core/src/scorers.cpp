#include "claimdecomp/retrieval/scorers.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "claimdecomp/error.hpp"
#include "claimdecomp/model/tokenizer.hpp"
#include "claimdecomp/parallel.hpp"

namespace claimdecomp {

ScoreMatrix bm25_scores(const std::vector<std::string>& paragraphs,
                        const std::vector<std::string>& hypotheses, const Bm25Params& params) {
    if (paragraphs.empty()) throw InvalidArgument("bm25: empty paragraph list");
    if (!(params.k1 > 0.0)) throw InvalidArgument("bm25: k1 must be positive");
    if (!(params.b >= 0.0 && params.b <= 1.0)) throw InvalidArgument("bm25: b must lie in [0, 1]");

    const std::size_t m = paragraphs.size();
    std::vector<std::unordered_map<std::string, std::size_t>> tf(m);
    std::vector<double> length(m);
    std::unordered_map<std::string, std::size_t> df;
    double total_length = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto tokens = tokenize(paragraphs[i]);
        length[i] = static_cast<double>(tokens.size());
        total_length += length[i];
        for (const auto& t : tokens) ++tf[i][t];
        for (const auto& [t, _] : tf[i]) ++df[t];
    }
    const double avg_length = total_length / static_cast<double>(m);

    const auto idf = [&](const std::string& term) {
        auto it = df.find(term);
        const double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
        return std::log((static_cast<double>(m) - d + 0.5) / (d + 0.5) + 1.0);
    };

    std::vector<double> scores(m * hypotheses.size(), 0.0);
    for (std::size_t j = 0; j < hypotheses.size(); ++j) {
        const auto query = tokenize(hypotheses[j]);
        for (std::size_t i = 0; i < m; ++i) {
            const double norm =
                avg_length > 0.0 ? 1.0 - params.b + params.b * length[i] / avg_length : 1.0;
            double s = 0.0;
            for (const auto& t : query) {
                auto it = tf[i].find(t);
                if (it == tf[i].end()) continue;
                const auto f = static_cast<double>(it->second);
                s += idf(t) * f * (params.k1 + 1.0) / (f + params.k1 * norm);
            }
            scores[i * hypotheses.size() + j] = s;
        }
    }
    return ScoreMatrix(index_ids('p', m), index_ids('h', hypotheses.size()), std::move(scores),
                       "bm25", false);
}

ScoreMatrix lexical_scores(const std::vector<std::string>& paragraphs,
                           const std::vector<std::string>& hypotheses) {
    std::vector<std::unordered_set<std::string>> vocab(paragraphs.size());
    for (std::size_t i = 0; i < paragraphs.size(); ++i)
        for (auto& t : tokenize(paragraphs[i])) vocab[i].insert(std::move(t));

    std::vector<double> scores(paragraphs.size() * hypotheses.size(), 0.0);
    for (std::size_t j = 0; j < hypotheses.size(); ++j) {
        std::unordered_set<std::string> query;
        for (auto& t : tokenize(hypotheses[j])) query.insert(std::move(t));
        if (query.empty()) continue;
        for (std::size_t i = 0; i < paragraphs.size(); ++i) {
            std::size_t hit = 0;
            for (const auto& t : query) hit += vocab[i].count(t);
            scores[i * hypotheses.size() + j] =
                static_cast<double>(hit) / static_cast<double>(query.size());
        }
    }
    return ScoreMatrix(index_ids('p', paragraphs.size()), index_ids('h', hypotheses.size()),
                       std::move(scores), "lexical", true);
}

namespace {

[[noreturn]] void rethrow_for_pair(const ProtocolError& e, std::size_t i, std::size_t j) {
    const std::string where =
        "scoring paragraph " + std::to_string(i) + " x hypothesis " + std::to_string(j) + ": ";
    if (dynamic_cast<const TimeoutError*>(&e)) throw TimeoutError(where + e.what());
    throw ProtocolError(where + e.what());
}

}  // namespace

ScoreMatrix external_scores(const std::vector<std::string>& paragraphs,
                            const std::vector<std::string>& hypotheses, AdapterClient& client) {
    std::vector<double> scores(paragraphs.size() * hypotheses.size());
    for (std::size_t i = 0; i < paragraphs.size(); ++i)
        for (std::size_t j = 0; j < hypotheses.size(); ++j) {
            try {
                scores[i * hypotheses.size() + j] = client.entail(paragraphs[i], hypotheses[j]);
            } catch (const ProtocolError& e) {
                rethrow_for_pair(e, i, j);
            }
        }
    return ScoreMatrix(index_ids('p', paragraphs.size()), index_ids('h', hypotheses.size()),
                       std::move(scores), client.info().name, client.info().bounded);
}

ExternalScorer::ExternalScorer(const std::string& command, std::size_t pool_size,
                               std::chrono::milliseconds timeout) {
    pool_size = std::max<std::size_t>(1, pool_size);
    for (std::size_t i = 0; i < pool_size; ++i)
        m_pool.push_back(std::make_unique<AdapterClient>(command, timeout));
}

ExternalScorer::~ExternalScorer() = default;

std::string ExternalScorer::name() const { return m_pool.front()->info().name; }

const AdapterInfo& ExternalScorer::info() const { return m_pool.front()->info(); }

ScoreMatrix ExternalScorer::score(const std::vector<std::string>& paragraphs,
                                  const std::vector<std::string>& hypotheses) {
    const std::size_t cols = hypotheses.size();
    std::vector<double> scores(paragraphs.size() * cols);
    parallel_for(scores.size(), m_pool.size(), [&](std::size_t cell, std::size_t worker) {
        const std::size_t i = cell / cols;
        const std::size_t j = cell % cols;
        try {
            scores[cell] = m_pool[worker]->entail(paragraphs[i], hypotheses[j]);
        } catch (const ProtocolError& e) {
            rethrow_for_pair(e, i, j);
        }
    });
    return ScoreMatrix(index_ids('p', paragraphs.size()), index_ids('h', cols), std::move(scores),
                       info().name, info().bounded);
}

}  // namespace claimdecomp
