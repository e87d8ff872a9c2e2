#include "claimdecomp/evalkit/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "claimdecomp/error.hpp"
#include "claimdecomp/evalkit/rouge.hpp"

namespace claimdecomp {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v)) {
    if (values.size() != rows * cols)
        throw InvalidArgument("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " given " + std::to_string(values.size()) + " values");
}

Matching hungarian_match(const Matrix& similarity) {
    for (double v : similarity.values)
        if (!std::isfinite(v)) throw InvalidArgument("hungarian_match: non-finite similarity");

    Matching out;
    const std::size_t n = std::max(similarity.rows, similarity.cols);
    const std::size_t real = std::min(similarity.rows, similarity.cols);
    if (real == 0) return out;

    // Shortest augmenting path with potentials, minimizing the negated
    // scores. Arrays are 1-based; column 0 is the virtual start.
    const auto cost = [&](std::size_t i, std::size_t j) {
        if (i > similarity.rows || j > similarity.cols) return 0.0;
        return -similarity(i - 1, j - 1);
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match_of_col(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match_of_col[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match_of_col[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_of_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match_of_col[j0] = match_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t i = match_of_col[j];
        if (i >= 1 && i <= similarity.rows && j <= similarity.cols) out.pairs.emplace_back(i - 1, j - 1);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    for (const auto& [i, j] : out.pairs) out.total += similarity(i, j);
    out.mean = out.total / static_cast<double>(real);
    return out;
}

std::string_view to_string(SimilarityKind k) noexcept {
    switch (k) {
    case SimilarityKind::Rouge1P: return "rouge1-p";
    case SimilarityKind::Rouge2P: return "rouge2-p";
    case SimilarityKind::RougeLF: return "rougeL-f";
    case SimilarityKind::TokenF1: return "token-f1";
    case SimilarityKind::ExternalMatrix: return "external-matrix";
    }
    return "rougeL-f";
}

SimilarityKind parse_similarity_kind(std::string_view s) {
    if (s == "rouge1-p" || s == "rouge1p") return SimilarityKind::Rouge1P;
    if (s == "rouge2-p" || s == "rouge2p") return SimilarityKind::Rouge2P;
    if (s == "rougeL-f" || s == "rougel-f" || s == "rougelf") return SimilarityKind::RougeLF;
    if (s == "token-f1" || s == "tokenf1") return SimilarityKind::TokenF1;
    if (s == "external-matrix") return SimilarityKind::ExternalMatrix;
    throw DataError("unknown similarity '" + std::string(s) +
                    "' (expected rouge1p, rouge2p, rougelf, tokenf1 or matrix:FILE)");
}

double pair_similarity(std::string_view generated, std::string_view reference, SimilarityKind kind) {
    switch (kind) {
    case SimilarityKind::Rouge1P: return rouge_n_precision(generated, reference, 1);
    case SimilarityKind::Rouge2P: return rouge_n_precision(generated, reference, 2);
    case SimilarityKind::RougeLF: return rouge_l(generated, reference).f1;
    case SimilarityKind::TokenF1: return token_f1(generated, reference);
    case SimilarityKind::ExternalMatrix: break;
    }
    throw InvalidArgument("pair_similarity: external-matrix similarity has no pairwise form");
}

Matrix similarity_matrix(const std::vector<std::string>& generated,
                         const std::vector<std::string>& reference, const SimilaritySpec& spec) {
    if (spec.kind == SimilarityKind::ExternalMatrix) {
        if (!spec.external) throw InvalidArgument("external-matrix similarity without a matrix");
        if (spec.external->rows != generated.size() || spec.external->cols != reference.size())
            throw InvalidArgument("external similarity matrix is " +
                                  std::to_string(spec.external->rows) + "x" +
                                  std::to_string(spec.external->cols) + " but the question sets are " +
                                  std::to_string(generated.size()) + "x" +
                                  std::to_string(reference.size()));
        return *spec.external;
    }
    Matrix m(generated.size(), reference.size());
    for (std::size_t i = 0; i < generated.size(); ++i)
        for (std::size_t j = 0; j < reference.size(); ++j)
            m(i, j) = pair_similarity(generated[i], reference[j], spec.kind);
    return m;
}

double set_similarity(const std::vector<std::string>& generated,
                      const std::vector<std::string>& reference, const SimilaritySpec& spec) {
    if (generated.empty() || reference.empty())
        throw InvalidArgument("set_similarity: both question lists must be nonempty");
    return hungarian_match(similarity_matrix(generated, reference, spec)).mean;
}

}  // namespace claimdecomp
