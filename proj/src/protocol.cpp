#include "selfend/protocol.hpp"

#include <algorithm>

namespace selfend {

namespace {

constexpr std::int64_t kBaseDelay = 60;
constexpr std::int64_t kEmmyPriorityStep = 40;
constexpr std::int64_t kModifiedPriorityStep = 193;
constexpr std::int64_t kPerMissingEndorsement = 8;
constexpr int kFreeMissThreshold = 24;

}  // namespace

Seconds block_delay(ProtocolVariant variant, Priority p, EndorsementCount e) {
    const std::int64_t step =
        variant == ProtocolVariant::ModifiedDelayReward ? kModifiedPriorityStep : kEmmyPriorityStep;
    const std::int64_t missing = std::max(kFreeMissThreshold - e.value, 0);
    return Seconds{kBaseDelay + step * p.value + kPerMissingEndorsement * missing};
}

Xtz baking_reward(ProtocolVariant variant, Priority p, EndorsementCount e) {
    const std::int64_t rank = p.value + 1;
    if (variant == ProtocolVariant::ModifiedDelayReward) {
        return Xtz(5 * e.value, 4 * rank);
    }
    // 16/(p+1) * (4/5 + e/160) == (128 + e) / (10 (p+1))
    return Xtz(128 + e.value, 10 * rank);
}

Xtz endorsement_reward(ProtocolVariant variant, Priority p) {
    const std::int64_t rank = p.value + 1;
    if (variant == ProtocolVariant::ModifiedDelayReward) {
        return Xtz(5, 4 * rank);
    }
    return Xtz(2, rank);
}

}  // namespace selfend
