#include "claimdecomp/evalkit/rouge.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "claimdecomp/error.hpp"
#include "claimdecomp/model/tokenizer.hpp"

namespace claimdecomp {

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(std::span<const std::string> tokens,
                                                             std::size_t n) {
    std::map<std::vector<std::string>, std::size_t> out;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        ++out[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    return out;
}

}  // namespace

double rouge_n_precision(std::span<const std::string> candidate,
                         std::span<const std::string> reference, int n) {
    if (n < 1) throw InvalidArgument("rouge_n_precision: n must be at least 1");
    const auto un = static_cast<std::size_t>(n);
    if (candidate.size() < un) return 0.0;
    const auto cand = ngram_counts(candidate, un);
    const auto ref = ngram_counts(reference, un);
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand) {
        auto it = ref.find(gram);
        if (it != ref.end()) clipped += std::min(count, it->second);
    }
    return static_cast<double>(clipped) / static_cast<double>(candidate.size() - un + 1);
}

double rouge_n_precision(std::string_view candidate, std::string_view reference, int n) {
    const auto c = tokenize(candidate);
    const auto r = tokenize(reference);
    return rouge_n_precision(c, r, n);
}

bool rouge_n_defined(std::string_view candidate, int n) {
    return n >= 1 && tokenize(candidate).size() >= static_cast<std::size_t>(n);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

PrecisionRecallF1 rouge_l(std::span<const std::string> candidate,
                          std::span<const std::string> reference) {
    if (candidate.empty() || reference.empty())
        throw InvalidArgument("rouge_l: candidate and reference must both have tokens");
    const auto lcs = static_cast<double>(lcs_length(candidate, reference));
    PrecisionRecallF1 out;
    out.precision = lcs / static_cast<double>(candidate.size());
    out.recall = lcs / static_cast<double>(reference.size());
    if (lcs > 0.0) out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

PrecisionRecallF1 rouge_l(std::string_view candidate, std::string_view reference) {
    const auto c = tokenize(candidate);
    const auto r = tokenize(reference);
    return rouge_l(c, r);
}

double token_f1(std::string_view candidate, std::string_view reference) {
    const auto c = tokenize(candidate);
    const auto r = tokenize(reference);
    if (c.empty() && r.empty()) return 1.0;
    if (c.empty() || r.empty()) return 0.0;
    std::unordered_map<std::string, std::size_t> bag;
    for (const auto& t : r) ++bag[t];
    std::size_t common = 0;
    for (const auto& t : c) {
        auto it = bag.find(t);
        if (it != bag.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    return 2.0 * static_cast<double>(common) / static_cast<double>(c.size() + r.size());
}

}  // namespace claimdecomp
