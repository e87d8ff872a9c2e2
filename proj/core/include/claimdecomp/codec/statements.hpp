#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace claimdecomp {

class AdapterClient;

enum class Provenance : std::uint8_t { RuleBased, External };

std::string_view to_string(Provenance p) noexcept;

/// Declarative form of a yes-no question plus its negation.
struct StatementPair {
    std::string affirmative;
    std::string negated;
    Provenance provenance = Provenance::RuleBased;

    bool operator==(const StatementPair&) const = default;
};

/// Rule-based conversion of an auxiliary-initial yes-no question.
///
/// The auxiliary is moved behind the subject, where the subject is one of
///   - a run of capitalized tokens, possibly continued by numbers
///     ("Joe Biden", "Bank of America", "Route 66"),
///   - a determiner followed by such a run ("the United States"),
///   - a determiner plus up to three lowercase words when the next word is a
///     participle ("the job figures adjusted ..."),
///   - a subject pronoun or existential "there".
/// The negation inserts "not" right after the auxiliary, so the two
/// statements differ by exactly that token.
///
/// Throws Unconvertible for do-support questions (do/does/did need verb
/// re-inflection), for questions that do not start with a supported
/// auxiliary, and whenever no subject chunk is recognised.
StatementPair question_to_statements(std::string_view question);

/// Asks an external converter. The reply is returned verbatim with
/// Provenance::External. Throws ProtocolError on a missing field, a
/// trailing '?' or a transport failure.
StatementPair convert_via_external(std::string_view question, AdapterClient& converter);

}  // namespace claimdecomp
