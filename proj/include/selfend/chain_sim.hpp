#pragma once

#include "selfend/attack.hpp"
#include "selfend/probability.hpp"
#include "selfend/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace selfend {

/// Seedable 64-bit generator used by every simulation (period 2^19937 - 1).
using SimRng = std::mt19937_64;

/// Attacker's rights at one slot, drawn from an i.i.d. priority list and
/// 32 i.i.d. endorsement draws.
struct SlotRights {
    Priority attacker_top_priority;      // index of the attacker's first priority
    EndorsementCount attacker_endorsements;
    int attacker_consecutive_top = 0;    // >= 1 exactly when top priority is 0
};

/// Draws one slot's rights. Requires alpha strictly inside (0, 1).
SlotRights sample_slot_rights(StakeFraction alpha, SimRng& rng);

enum class SimMode { TupleSampling, ChainReplay };

struct SimConfig {
    StakeFraction alpha;
    ProtocolVariant variant = ProtocolVariant::EmmyPlus;
    std::uint64_t num_slots = 1;
    std::uint64_t rng_seed = 0;
    SimMode mode = SimMode::TupleSampling;
    EnumerationBounds bounds;  // used for the analytic reference only
};

struct SimOutcome {
    std::uint64_t slots_sampled = 0;
    std::uint64_t attacks_executed = 0;
    double empirical_rate = 0.0;         // attacks per slot
    double empirical_extra_value = 0.0;  // total extra XTZ over all slots
    double analytic_rate = 0.0;          // Pr[A2] per slot
    double analytic_value = 0.0;         // expected total extra XTZ over num_slots
    double rate_std_error = 0.0;         // binomial standard error of the analytic rate
    std::uint64_t seed = 0;
    ProtocolVariant variant = ProtocolVariant::EmmyPlus;
    double alpha = 0.0;
};

/// Samples num_slots independent (slot l-1, slot l, slot l+1) contexts and
/// executes the length-2 attack whenever assess_len2 reports it feasible and
/// profitable. Deterministic for a given seed.
SimOutcome run_monte_carlo(const SimConfig& config);

enum class Branch { Honest, Selfish, Reference };
std::string_view to_string(Branch b);

/// One block appended to a branch during an episode replay.
struct BlockEvent {
    Branch branch = Branch::Honest;
    int slot = 0;  // relative to slot l (0 = l, 1 = l+1)
    Priority priority;
    EndorsementCount endorsements_included;
    bool baked_by_attacker = false;
    Seconds timestamp{0};  // measured from the slot l-1 block
    Xtz attacker_reward{0};
};

struct ForkOutcome {
    Branch winning_branch = Branch::Honest;
    Seconds honest_elapsed{0};
    Seconds selfish_elapsed{0};
    Xtz attacker_reward_honest{0};
    Xtz attacker_reward_selfish{0};
};

struct Episode {
    ForkOutcome outcome;
    std::vector<BlockEvent> events;
};

/// Replays one attack opportunity block by block.
///
/// Honest branch: the honest priority-0 block at slot l, then the first
/// non-attacker priority (n_next) at slot l+1 carrying the 32 - e_cur
/// endorsements the attacker did not withhold. Selfish branch: the attacker's
/// priority-p block at slot l, then its priority-0 block at slot l+1 carrying
/// its own e_cur endorsements. The longer chain wins; with equal length the
/// branch whose second block is valid strictly earlier wins, ties go to the
/// honest branch.
///
/// The attacker's honest-play reward is accrued on a Reference branch where
/// the attacker endorses the honest block and bakes slot l+1 at priority 0
/// with all 32 endorsements.
Episode replay_episode(ProtocolVariant variant, const AttackTuple& t);

}  // namespace selfend
