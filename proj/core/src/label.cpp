#include "claimdecomp/model/label.hpp"

#include <cctype>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

constexpr std::array<std::string_view, kVeracityCount> kNames = {
    "pants-on-fire", "false", "barely-true", "half-true", "mostly-true", "true",
};

std::string normalize_label(std::string_view raw) {
    std::string out;
    bool pending_hyphen = false;
    for (char c : raw) {
        if (c == ' ' || c == '_' || c == '-' || c == '\t') {
            pending_hyphen = !out.empty();
            continue;
        }
        if (pending_hyphen) {
            out.push_back('-');
            pending_hyphen = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

Veracity veracity_from_ordinal(int value) {
    if (value < 0 || value >= static_cast<int>(kVeracityCount))
        throw InvalidArgument("veracity ordinal out of range: " + std::to_string(value));
    return static_cast<Veracity>(value);
}

std::string_view to_string(Veracity v) noexcept {
    return kNames[static_cast<std::size_t>(v)];
}

Veracity parse_veracity(std::string_view name) {
    const std::string norm = normalize_label(name);
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (norm == kNames[i]) return static_cast<Veracity>(i);
    throw DataError("unknown veracity label '" + std::string(name) + "'");
}

}  // namespace claimdecomp
