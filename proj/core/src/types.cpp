#include "claimdecomp/model/types.hpp"

#include <array>
#include <chrono>
#include <charconv>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view what, std::string_view s,
                const std::array<std::string_view, N>& names) {
    for (std::size_t i = 0; i < N; ++i)
        if (s == names[i]) return static_cast<Enum>(i);
    throw DataError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

constexpr std::array<std::string_view, 3> kAnswers = {"yes", "no", "unknown"};
constexpr std::array<std::string_view, 2> kSources = {"claim", "justification"};
constexpr std::array<std::string_view, 4> kCategories = {
    "domain-knowledge", "context", "implicit-meaning", "statistical-rigor"};
constexpr std::array<std::string_view, 3> kParagraphLabels = {"context", "support", "refute"};

}  // namespace

std::string ClaimRecord::justification_text() const {
    std::string out;
    for (std::size_t i = 0; i < justification.size(); ++i) {
        if (i) out.push_back('\n');
        out += justification[i];
    }
    return out;
}

const Subquestion* ClaimRecord::flat_subquestion(std::size_t index) const noexcept {
    for (const auto& a : annotations) {
        if (index < a.subquestions.size()) return &a.subquestions[index];
        index -= a.subquestions.size();
    }
    return nullptr;
}

std::size_t ClaimRecord::flat_subquestion_count() const noexcept {
    std::size_t n = 0;
    for (const auto& a : annotations) n += a.subquestions.size();
    return n;
}

std::string_view to_string(Answer a) noexcept { return kAnswers[static_cast<std::size_t>(a)]; }
std::string_view to_string(Source s) noexcept { return kSources[static_cast<std::size_t>(s)]; }
std::string_view to_string(ImpliedCategory c) noexcept {
    return kCategories[static_cast<std::size_t>(c)];
}
std::string_view to_string(ParagraphLabel l) noexcept {
    return kParagraphLabels[static_cast<std::size_t>(l)];
}

Answer parse_answer(std::string_view s) { return parse_enum<Answer>("answer", s, kAnswers); }
Source parse_source(std::string_view s) { return parse_enum<Source>("source", s, kSources); }
ImpliedCategory parse_implied_category(std::string_view s) {
    return parse_enum<ImpliedCategory>("implied category", s, kCategories);
}
ParagraphLabel parse_paragraph_label(std::string_view s) {
    return parse_enum<ParagraphLabel>("paragraph label", s, kParagraphLabels);
}

bool is_iso_date(std::string_view date) {
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto field = [&](std::size_t pos, std::size_t len, auto& out) {
        const char* first = date.data() + pos;
        const char* last = first + len;
        for (const char* p = first; p != last; ++p)
            if (*p < '0' || *p > '9') return false;
        return std::from_chars(first, last, out).ec == std::errc{};
    };
    if (!field(0, 4, y) || !field(5, 2, m) || !field(8, 2, d)) return false;
    using namespace std::chrono;
    return year_month_day{year{y}, month{m}, day{d}}.ok();
}

}  // namespace claimdecomp
