#pragma once

#include "selfend/types.hpp"

namespace selfend {

/// Minimum timestamp gap between a block and its predecessor.
///
/// Emmy+ and the heuristic fix: 60 + 40 p + 8 max(24 - e, 0).
/// Modified protocol:           60 + 193 p + 8 max(24 - e, 0).
///
/// `e` counts the endorsements of the *previous* block that this block
/// includes, not the endorsements this block later receives.
Seconds block_delay(ProtocolVariant variant, Priority p, EndorsementCount e);

/// Reward paid to the baker of a priority-`p` block including `e` endorsements.
///
/// Emmy+ and the heuristic fix: 16/(p+1) * (4/5 + e/160).
/// Modified protocol:           5/4 * e/(p+1).
Xtz baking_reward(ProtocolVariant variant, Priority p, EndorsementCount e);

/// Reward per endorsement.
///
/// The priority argument depends on the variant and is chosen by the caller:
/// Emmy+ and the modified protocol price an endorsement by the priority of
/// the block that *includes* it; the heuristic fix prices it by the priority
/// of the block it *endorses*.
Xtz endorsement_reward(ProtocolVariant variant, Priority p);

/// Priority used to price an endorsement under `variant`.
constexpr Priority endorsement_pricing_priority(ProtocolVariant variant, Priority including,
                                                Priority endorsed) {
    return variant == ProtocolVariant::HeuristicFix ? endorsed : including;
}

}  // namespace selfend
