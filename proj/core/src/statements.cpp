#include "claimdecomp/codec/statements.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

#include "claimdecomp/error.hpp"
#include "claimdecomp/protocol/adapter_client.hpp"

namespace claimdecomp {

namespace {

constexpr std::array<std::string_view, 12> kAuxiliaries = {
    "is", "are", "was", "were", "has", "have", "had", "will", "can", "could", "should", "would",
};
constexpr std::array<std::string_view, 3> kDoSupport = {"do", "does", "did"};
constexpr std::array<std::string_view, 14> kDeterminers = {
    "the", "a", "an", "this", "that", "these", "those", "his", "her", "its", "their", "our", "my", "your",
};
constexpr std::array<std::string_view, 8> kPronouns = {
    "he", "she", "it", "they", "we", "you", "i", "there",
};
constexpr std::array<std::string_view, 4> kConnectors = {"of", "and", "for", "&"};

template <std::size_t N>
bool one_of(std::string_view w, const std::array<std::string_view, N>& set) {
    return std::find(set.begin(), set.end(), w) != set.end();
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool capitalized(std::string_view w) {
    if (w.empty()) return false;
    const auto c = static_cast<unsigned char>(w.front());
    return std::isupper(c) || std::isdigit(c);
}

// Runs start on an uppercase word; digits may only continue one ("Route 66").
bool starts_run(std::string_view w) {
    return !w.empty() && std::isupper(static_cast<unsigned char>(w.front()));
}

bool participle(std::string_view w) {
    const std::string l = lower(w);
    return l.size() > 4 && (l.ends_with("ing") || l.ends_with("ed"));
}

// End (exclusive) of a capitalized run starting at `i`; connectors are kept
// only between two capitalized tokens.
std::size_t capitalized_run(const std::vector<std::string>& t, std::size_t i) {
    std::size_t j = i;
    while (j < t.size()) {
        if (capitalized(t[j])) {
            ++j;
        } else if (j > i && j + 1 < t.size() && one_of(lower(t[j]), kConnectors) &&
                   capitalized(t[j + 1])) {
            j += 2;
        } else {
            break;
        }
    }
    return j;
}

std::string join(const std::vector<std::string>& t, std::size_t from, std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to; ++i) {
        if (i > from) out.push_back(' ');
        out += t[i];
    }
    return out;
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::RuleBased ? "rule-based" : "external";
}

StatementPair question_to_statements(std::string_view question) {
    std::string_view q = question;
    while (!q.empty() && std::isspace(static_cast<unsigned char>(q.back()))) q.remove_suffix(1);
    if (q.empty() || q.back() != '?')
        throw Unconvertible("not a question: '" + std::string(question) + "'");
    q.remove_suffix(1);

    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < q.size();) {
        while (i < q.size() && std::isspace(static_cast<unsigned char>(q[i]))) ++i;
        const std::size_t start = i;
        while (i < q.size() && !std::isspace(static_cast<unsigned char>(q[i]))) ++i;
        if (i > start) tokens.emplace_back(q.substr(start, i - start));
    }
    if (tokens.size() < 3) throw Unconvertible("question too short to convert");

    const std::string aux = lower(tokens[0]);
    if (one_of(aux, kDoSupport))
        throw Unconvertible("do-support question needs verb re-inflection: '" +
                            std::string(question) + "'");
    if (!one_of(aux, kAuxiliaries))
        throw Unconvertible("question does not start with a supported auxiliary: '" +
                            std::string(question) + "'");

    std::size_t subject_end = 0;
    std::size_t run_start = 0;  // first token of a capitalized run, if any
    const std::string first = lower(tokens[1]);
    if (starts_run(tokens[1]) && !one_of(first, kDeterminers) && !one_of(first, kPronouns)) {
        run_start = 1;
        subject_end = capitalized_run(tokens, 1);
    } else if (one_of(first, kDeterminers)) {
        if (starts_run(tokens[2])) {
            run_start = 2;
            subject_end = capitalized_run(tokens, 2);
        } else {
            // "the job figures adjusted ...": up to three plain words, then a participle
            for (std::size_t j = 3; j < tokens.size() && j <= 5; ++j) {
                if (capitalized(tokens[j - 1])) break;
                if (participle(tokens[j])) {
                    subject_end = j;
                    break;
                }
            }
        }
    } else if (one_of(first, kPronouns)) {
        subject_end = 2;
    }
    if (subject_end == 0)
        throw Unconvertible("no subject chunk recognised in '" + std::string(question) + "'");
    // "Is Joe Biden President?": a run that swallows the whole question gives
    // its last token back as the predicate.
    if (run_start != 0 && subject_end == tokens.size() && subject_end - run_start >= 2)
        --subject_end;
    if (subject_end >= tokens.size())
        throw Unconvertible("nothing left after the subject in '" + std::string(question) + "'");

    std::string subject = join(tokens, 1, subject_end);
    subject[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(subject[0])));
    const std::string predicate = join(tokens, subject_end, tokens.size());

    StatementPair out;
    out.affirmative = subject + " " + aux + " " + predicate + ".";
    out.negated = subject + " " + aux + " not " + predicate + ".";
    out.provenance = Provenance::RuleBased;
    return out;
}

StatementPair convert_via_external(std::string_view question, AdapterClient& converter) {
    ConvertReply reply = converter.convert(question);
    const auto ends_with_question = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return !s.empty() && s.back() == '?';
    };
    if (ends_with_question(reply.statement) || ends_with_question(reply.negation))
        throw ProtocolError("converter returned a question instead of a statement for '" +
                            std::string(question) + "'");
    return {std::move(reply.statement), std::move(reply.negation), Provenance::External};
}

}  // namespace claimdecomp
