#include "claimdecomp/evalkit/recall.hpp"

#include "claimdecomp/error.hpp"

namespace claimdecomp {

RecallReport recall_report(const std::vector<MatchJudgment>& judgments) {
    if (judgments.empty()) throw InvalidArgument("recall_report: no judgments");
    RecallReport r;
    std::size_t hit_all = 0, hit_literal = 0, hit_implied = 0;
    for (const auto& j : judgments) {
        ++r.n_all;
        hit_all += j.matched;
        if (j.implied) {
            ++r.n_implied;
            hit_implied += j.matched;
        } else {
            ++r.n_literal;
            hit_literal += j.matched;
        }
    }
    const auto frac = [](std::size_t a, std::size_t b) {
        return static_cast<double>(a) / static_cast<double>(b);
    };
    r.r_all = frac(hit_all, r.n_all);
    if (r.n_literal) r.r_literal = frac(hit_literal, r.n_literal);
    if (r.n_implied) r.r_implied = frac(hit_implied, r.n_implied);
    return r;
}

}  // namespace claimdecomp
