#pragma once

#include <boost/rational.hpp>

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace selfend {

/// Raised when an argument falls outside the protocol's domain
/// (endorsement count outside [0, 32], negative priority, alpha outside [0, 1]).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exact amount cannot be represented in whole mutez.
class PrecisionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class ProtocolVariant {
    EmmyPlus,
    // Endorsement reward keyed on the priority of the endorsed block.
    HeuristicFix,
    // 193 s priority step, 40/40 baker/endorser split.
    ModifiedDelayReward,
};

std::string_view to_string(ProtocolVariant v);
/// Accepts "emmy-plus", "heuristic" and "modified" (plus a few aliases).
ProtocolVariant parse_variant(std::string_view text);

inline constexpr int kEndorsersPerSlot = 32;

struct Priority {
    int value = 0;

    constexpr Priority() = default;
    constexpr explicit Priority(int v) : value(v) {
        if (v < 0) throw DomainError("priority must be >= 0, got " + std::to_string(v));
    }
    friend constexpr auto operator<=>(Priority, Priority) = default;
};

struct EndorsementCount {
    int value = 0;

    constexpr EndorsementCount() = default;
    constexpr explicit EndorsementCount(int v) : value(v) {
        if (v < 0 || v > kEndorsersPerSlot)
            throw DomainError("endorsement count must be in [0, 32], got " + std::to_string(v));
    }
    friend constexpr auto operator<=>(EndorsementCount, EndorsementCount) = default;
};

/// Delays and delay differences. Signed, so differences need no separate type.
using Seconds = std::chrono::seconds;

/// Exact amount of XTZ. Every reward formula is a ratio of small integers,
/// so a normalized 64-bit rational never loses precision.
using Xtz = boost::rational<std::int64_t>;

inline constexpr std::int64_t kMutezPerXtz = 1'000'000;

struct Mutez {
    std::int64_t value = 0;
    friend constexpr auto operator<=>(Mutez, Mutez) = default;
};

/// Projects an exact amount onto whole mutez; throws PrecisionError when the
/// amount is not an integral number of mutez (e.g. 2/3 XTZ).
Mutez to_mutez(const Xtz& amount);
double to_double(const Xtz& amount);
/// Decimal rendering with `places` fractional digits (rounded half away from zero).
std::string format_xtz(const Xtz& amount, int places = 6);

}  // namespace selfend
