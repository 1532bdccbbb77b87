#include "selfend/types.hpp"

#include <array>
#include <cstdlib>
#include <utility>

namespace selfend {

std::string_view to_string(ProtocolVariant v) {
    switch (v) {
        case ProtocolVariant::EmmyPlus: return "emmy-plus";
        case ProtocolVariant::HeuristicFix: return "heuristic";
        case ProtocolVariant::ModifiedDelayReward: return "modified";
    }
    return "unknown";
}

ProtocolVariant parse_variant(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, ProtocolVariant>, 7> names{{
        {"emmy-plus", ProtocolVariant::EmmyPlus},
        {"emmy+", ProtocolVariant::EmmyPlus},
        {"emmy", ProtocolVariant::EmmyPlus},
        {"heuristic", ProtocolVariant::HeuristicFix},
        {"heuristic-fix", ProtocolVariant::HeuristicFix},
        {"modified", ProtocolVariant::ModifiedDelayReward},
        {"modified-delay-reward", ProtocolVariant::ModifiedDelayReward},
    }};
    for (const auto& [name, variant] : names) {
        if (name == text) return variant;
    }
    throw DomainError("unknown protocol variant '" + std::string(text) +
                      "' (expected emmy-plus, heuristic or modified)");
}

Mutez to_mutez(const Xtz& amount) {
    const Xtz scaled = amount * kMutezPerXtz;
    if (scaled.denominator() != 1) {
        throw PrecisionError("amount " + std::to_string(amount.numerator()) + "/" +
                             std::to_string(amount.denominator()) +
                             " XTZ is not a whole number of mutez");
    }
    return Mutez{scaled.numerator()};
}

double to_double(const Xtz& amount) {
    return boost::rational_cast<double>(amount);
}

std::string format_xtz(const Xtz& amount, int places) {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;

    const bool negative = amount < 0;
    const Xtz magnitude = negative ? -amount : amount;
    // round half away from zero at the requested precision
    const std::int64_t num = magnitude.numerator();
    const std::int64_t den = magnitude.denominator();
    const std::int64_t whole = num / den;
    const std::int64_t rem = num % den;
    std::int64_t frac = (rem * scale * 2 + den) / (den * 2);
    std::int64_t int_part = whole;
    if (frac >= scale) {
        int_part += 1;
        frac -= scale;
    }

    std::string out = (negative && (int_part != 0 || frac != 0)) ? "-" : "";
    out += std::to_string(int_part);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

}  // namespace selfend
