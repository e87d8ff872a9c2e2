#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimdecomp/model/label.hpp"

namespace claimdecomp {

struct ClaimContext {
    std::string speaker;
    std::string date;  // ISO-8601 calendar date or empty
    std::string venue;

    bool operator==(const ClaimContext&) const = default;
};

enum class Answer : std::uint8_t { Yes, No, Unknown };
enum class Source : std::uint8_t { Claim, Justification };

/// Reasoning needed to pose an implied question.
enum class ImpliedCategory : std::uint8_t {
    DomainKnowledge,
    Context,
    ImplicitMeaning,
    StatisticalRigor,
};

/// Post-hoc literal/implied typing. `category` is only meaningful (and
/// optional) when `implied` is set.
struct QuestionType {
    bool implied = false;
    std::optional<ImpliedCategory> category;

    static QuestionType literal() { return {}; }
    static QuestionType implied_as(std::optional<ImpliedCategory> c) { return {true, c}; }

    bool operator==(const QuestionType&) const = default;
};

/// Character range [start, end) in the claim or in the justification.
/// Justification offsets address the paragraphs joined by a single '\n'.
/// Offsets count Unicode code points.
struct Span {
    Source field = Source::Claim;
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

struct Subquestion {
    std::string text;
    Answer answer = Answer::Unknown;
    Source source = Source::Justification;
    std::vector<Span> spans;
    std::optional<QuestionType> qtype;

    bool operator==(const Subquestion&) const = default;
};

struct Annotation {
    std::string annotator_id;
    std::vector<Subquestion> subquestions;

    bool operator==(const Annotation&) const = default;
};

enum class ParagraphLabel : std::uint8_t { Context, Support, Refute };

/// One evidence judgment. `subquestion_index` addresses the record's
/// subquestions flattened across annotations in order; `paragraph_index`
/// addresses article_paragraphs.
struct ParagraphJudgment {
    std::string annotator_id;
    std::size_t subquestion_index = 0;
    std::size_t paragraph_index = 0;
    ParagraphLabel label = ParagraphLabel::Context;

    bool operator==(const ParagraphJudgment&) const = default;
};

struct ClaimRecord {
    std::string id;
    std::string claim;
    ClaimContext context;
    Veracity gold_label = Veracity::HalfTrue;
    std::vector<std::string> justification;
    std::vector<std::string> article_paragraphs;
    std::vector<Annotation> annotations;
    std::optional<std::vector<ParagraphJudgment>> paragraph_judgments;

    /// Justification paragraphs joined by '\n', the text span offsets index.
    std::string justification_text() const;

    /// Subquestion at a flattened index, or nullptr when out of range.
    const Subquestion* flat_subquestion(std::size_t index) const noexcept;
    std::size_t flat_subquestion_count() const noexcept;

    bool operator==(const ClaimRecord&) const = default;
};

std::string_view to_string(Answer a) noexcept;
std::string_view to_string(Source s) noexcept;
std::string_view to_string(ImpliedCategory c) noexcept;
std::string_view to_string(ParagraphLabel l) noexcept;

// The parse_* helpers throw DataError naming the rejected value.
Answer parse_answer(std::string_view s);
Source parse_source(std::string_view s);
ImpliedCategory parse_implied_category(std::string_view s);
ParagraphLabel parse_paragraph_label(std::string_view s);

/// True when `date` is YYYY-MM-DD naming a real calendar day.
bool is_iso_date(std::string_view date);

}  // namespace claimdecomp
