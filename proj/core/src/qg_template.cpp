#include "claimdecomp/codec/qg_template.hpp"

#include <unordered_set>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

bool has_separator(std::string_view s) { return s.find(kQgSeparator) != std::string_view::npos; }

}  // namespace

std::string encode_qg_multiple(int n, std::string_view claim, const ClaimContext& context) {
    if (n < 1) throw InvalidArgument("encode_qg_multiple: n must be >= 1");
    if (has_separator(claim)) throw InvalidArgument("encode_qg_multiple: claim contains [SEP]");
    std::string out = std::to_string(n);
    out += ' ';
    out += kQgSeparator;
    out += ' ';
    out += claim;
    out += ' ';
    out += kQgSeparator;
    out += ' ';
    out += context.speaker + " | " + context.date + " | " + context.venue;
    return out;
}

std::string encode_qg_multiple_target(const std::vector<std::string>& questions) {
    if (questions.empty()) throw InvalidArgument("encode_qg_multiple_target: no questions");
    std::string out;
    for (std::size_t i = 0; i < questions.size(); ++i) {
        if (trim(questions[i]).empty())
            throw InvalidArgument("question " + std::to_string(i) + " is blank");
        if (has_separator(questions[i]))
            throw InvalidArgument("question " + std::to_string(i) + " contains the separator " +
                                  std::string(kQgSeparator));
        if (i) {
            out += ' ';
            out += kQgSeparator;
            out += ' ';
        }
        out += questions[i];
    }
    return out;
}

std::vector<std::string> parse_qg_multiple(std::string_view output, int expected_n) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = output.find(kQgSeparator, pos);
        const std::string_view piece =
            trim(output.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (piece.empty())
            throw DataError("generator output has an empty segment at position " +
                            std::to_string(out.size()));
        out.emplace_back(piece);
        if (next == std::string_view::npos) break;
        pos = next + kQgSeparator.size();
    }
    if (static_cast<int>(out.size()) != expected_n)
        throw DataError("generator output has " + std::to_string(out.size()) +
                        " questions, expected " + std::to_string(expected_n));
    return out;
}

std::pair<std::string, std::string> encode(const QgMultipleExample& example) {
    if (example.n < 1 || static_cast<std::size_t>(example.n) != example.questions.size())
        throw InvalidArgument("QgMultipleExample: n = " + std::to_string(example.n) + " but " +
                              std::to_string(example.questions.size()) + " questions");
    return {encode_qg_multiple(example.n, example.claim, example.context),
            encode_qg_multiple_target(example.questions)};
}

std::vector<std::string> dedup_exact(const std::vector<std::string>& questions) {
    std::vector<std::string> out;
    std::unordered_set<std::string_view> seen;
    out.reserve(questions.size());
    for (const auto& q : questions)
        if (seen.insert(q).second) out.push_back(q);
    return out;
}

}  // namespace claimdecomp
