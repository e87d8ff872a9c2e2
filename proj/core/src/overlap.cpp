#include "claimdecomp/evalkit/overlap.hpp"

#include <cmath>

#include "claimdecomp/evalkit/rouge.hpp"
#include "claimdecomp/model/tokenizer.hpp"

namespace claimdecomp {

namespace {

struct Accumulator {
    std::size_t n = 0;
    // per-question sums
    double r1 = 0.0, r2 = 0.0, rl = 0.0;
    // pooled numerators and denominators
    double hit1 = 0.0, hit2 = 0.0, hitl = 0.0;
    double den1 = 0.0, den2 = 0.0, denl = 0.0;

    void add(const std::vector<std::string>& q, const std::vector<std::string>& claim) {
        ++n;
        const double len = static_cast<double>(q.size());
        const double p1 = rouge_n_precision(q, claim, 1);
        const double p2 = rouge_n_precision(q, claim, 2);
        const double pl = q.empty() ? 0.0 : static_cast<double>(lcs_length(q, claim)) / len;
        r1 += p1;
        r2 += p2;
        rl += pl;
        const double grams2 = q.size() >= 2 ? len - 1.0 : 0.0;
        hit1 += std::round(p1 * len);
        hit2 += std::round(p2 * grams2);
        hitl += std::round(pl * len);
        den1 += len;
        den2 += grams2;
        denl += len;
    }

    OverlapRow row(OverlapAveraging averaging, std::size_t typed_claims) const {
        OverlapRow out;
        out.n_questions = n;
        if (typed_claims) out.questions_per_claim = static_cast<double>(n) / static_cast<double>(typed_claims);
        if (n == 0) return out;
        if (averaging == OverlapAveraging::PerQuestion) {
            const auto d = static_cast<double>(n);
            out.rouge1_p = r1 / d;
            out.rouge2_p = r2 / d;
            out.rougeL_p = rl / d;
        } else {
            out.rouge1_p = den1 > 0 ? hit1 / den1 : 0.0;
            out.rouge2_p = den2 > 0 ? hit2 / den2 : 0.0;
            out.rougeL_p = denl > 0 ? hitl / denl : 0.0;
        }
        return out;
    }
};

}  // namespace

LexicalOverlap lexical_overlap(const std::vector<ClaimRecord>& records, OverlapAveraging averaging) {
    Accumulator literal, implied;
    std::size_t typed_claims = 0;
    for (const auto& r : records) {
        const auto claim = tokenize(r.claim);
        bool typed = false;
        for (const auto& a : r.annotations)
            for (const auto& q : a.subquestions) {
                if (!q.qtype) continue;
                typed = true;
                (q.qtype->implied ? implied : literal).add(tokenize(q.text), claim);
            }
        typed_claims += typed;
    }
    return {literal.row(averaging, typed_claims), implied.row(averaging, typed_claims)};
}

}  // namespace claimdecomp
