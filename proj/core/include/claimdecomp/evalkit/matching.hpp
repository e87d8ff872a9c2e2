#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace claimdecomp {

/// Dense row-major real matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}
    Matrix(std::size_t r, std::size_t c, std::vector<double> v);

    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    bool operator==(const Matrix&) const = default;
};

struct Matching {
    /// (row, column) pairs sorted by row; always min(rows, cols) of them.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total = 0.0;
    /// total / min(rows, cols), or 0 for an empty matrix.
    double mean = 0.0;
};

/// Maximum-weight one-to-one assignment. Rectangular inputs are zero-padded
/// to square; pairs touching padding are dropped. Throws InvalidArgument on
/// non-finite entries.
Matching hungarian_match(const Matrix& similarity);

enum class SimilarityKind : std::uint8_t { Rouge1P, Rouge2P, RougeLF, TokenF1, ExternalMatrix };

std::string_view to_string(SimilarityKind k) noexcept;
/// Accepts rouge1-p/rouge1p, rouge2-p/rouge2p, rougeL-f/rougelf,
/// token-f1/tokenf1 and external-matrix; throws DataError otherwise.
SimilarityKind parse_similarity_kind(std::string_view s);

struct SimilaritySpec {
    SimilarityKind kind = SimilarityKind::RougeLF;
    /// Rows index generated questions, columns reference questions.
    std::optional<Matrix> external;

    static SimilaritySpec of(SimilarityKind k) { return {k, std::nullopt}; }
    static SimilaritySpec from_matrix(Matrix m) { return {SimilarityKind::ExternalMatrix, std::move(m)}; }
};

double pair_similarity(std::string_view generated, std::string_view reference, SimilarityKind kind);

/// Rows = generated, columns = reference.
Matrix similarity_matrix(const std::vector<std::string>& generated,
                         const std::vector<std::string>& reference, const SimilaritySpec& spec);

/// Mean score of the maximum matching. Throws InvalidArgument when either
/// list is empty or an external matrix has the wrong shape.
double set_similarity(const std::vector<std::string>& generated,
                      const std::vector<std::string>& reference, const SimilaritySpec& spec);

}  // namespace claimdecomp
