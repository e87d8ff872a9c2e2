#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace claimdecomp {

/// Six-point truthfulness scale, ordered from most false to true.
enum class Veracity : std::uint8_t {
    PantsOnFire = 0,
    False = 1,
    BarelyTrue = 2,
    HalfTrue = 3,
    MostlyTrue = 4,
    True = 5,
};

inline constexpr std::size_t kVeracityCount = 6;

inline constexpr std::array<Veracity, kVeracityCount> kAllVeracities = {
    Veracity::PantsOnFire, Veracity::False,      Veracity::BarelyTrue,
    Veracity::HalfTrue,    Veracity::MostlyTrue, Veracity::True,
};

constexpr int ordinal(Veracity v) noexcept { return static_cast<int>(v); }

/// Throws InvalidArgument unless 0 <= value <= 5.
Veracity veracity_from_ordinal(int value);

/// Canonical lowercase name: "pants-on-fire", "false", "barely-true",
/// "half-true", "mostly-true", "true".
std::string_view to_string(Veracity v) noexcept;

/// Accepts the canonical names case-insensitively, treating runs of spaces,
/// underscores and hyphens as a single hyphen ("Pants on Fire", "HALF_TRUE").
/// Throws DataError on anything else.
Veracity parse_veracity(std::string_view name);

}  // namespace claimdecomp
