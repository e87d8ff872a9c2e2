#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "claimdecomp/protocol/adapter_client.hpp"
#include "claimdecomp/retrieval/score_matrix.hpp"

namespace claimdecomp {

/// Okapi BM25 free parameters: term-frequency saturation and length
/// normalisation.
struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// BM25 with paragraphs as the collection and each hypothesis as a query:
///
///   idf(t)   = ln((M - df + 0.5) / (df + 0.5) + 1)
///   s(p, h)  = sum over query tokens t (with repeats) of
///              idf(t) * tf(t,p) * (k1 + 1) / (tf(t,p) + k1 * (1 - b + b * |p| / avg|p|))
///
/// Tokens come from tokenize(). Throws InvalidArgument for an empty
/// paragraph list or k1 <= 0 or b outside [0, 1].
ScoreMatrix bm25_scores(const std::vector<std::string>& paragraphs,
                        const std::vector<std::string>& hypotheses, const Bm25Params& params = {});

/// Share of a hypothesis's distinct tokens that occur in the paragraph.
/// Bounded in [0, 1]; an empty hypothesis scores 0.
ScoreMatrix lexical_scores(const std::vector<std::string>& paragraphs,
                           const std::vector<std::string>& hypotheses);

/// One entail request per (paragraph, hypothesis) pair over a single
/// connection; premise = paragraph. Protocol errors are rethrown naming the
/// offending pair.
ScoreMatrix external_scores(const std::vector<std::string>& paragraphs,
                            const std::vector<std::string>& hypotheses, AdapterClient& client);

/// Anything that fills a paragraph x hypothesis matrix.
class Scorer {
  public:
    virtual ~Scorer() = default;
    virtual std::string name() const = 0;
    virtual ScoreMatrix score(const std::vector<std::string>& paragraphs,
                              const std::vector<std::string>& hypotheses) = 0;
};

class Bm25Scorer final : public Scorer {
  public:
    explicit Bm25Scorer(Bm25Params params = {}) : m_params(params) {}
    std::string name() const override { return "bm25"; }
    ScoreMatrix score(const std::vector<std::string>& paragraphs,
                      const std::vector<std::string>& hypotheses) override {
        return bm25_scores(paragraphs, hypotheses, m_params);
    }

  private:
    Bm25Params m_params;
};

class LexicalScorer final : public Scorer {
  public:
    std::string name() const override { return "lexical"; }
    ScoreMatrix score(const std::vector<std::string>& paragraphs,
                      const std::vector<std::string>& hypotheses) override {
        return lexical_scores(paragraphs, hypotheses);
    }
};

/// Entailment scores from adapter processes. `pool_size` connections are
/// started up front and pairs are spread over them; each connection carries
/// one request at a time. Cell values do not depend on the pool size.
class ExternalScorer final : public Scorer {
  public:
    ExternalScorer(const std::string& command, std::size_t pool_size,
                   std::chrono::milliseconds timeout = AdapterClient::kDefaultTimeout);
    ~ExternalScorer() override;

    std::string name() const override;
    const AdapterInfo& info() const;
    ScoreMatrix score(const std::vector<std::string>& paragraphs,
                      const std::vector<std::string>& hypotheses) override;

  private:
    std::vector<std::unique_ptr<AdapterClient>> m_pool;
};

}  // namespace claimdecomp
