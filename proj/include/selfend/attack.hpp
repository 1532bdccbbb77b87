#pragma once

#include "selfend/types.hpp"

namespace selfend {

/// Parameters of one length-2 selfish-endorsing opportunity at slot l.
///
///  - e_prev: attacker's endorsement rights at slot l-1
///  - e_cur:  attacker's endorsement rights at slot l
///  - p_cur:  attacker's best baking priority at slot l (>= 1; priority 0
///            already owns the block)
///  - n_next: consecutive top baking priorities the attacker holds at slot l+1
struct AttackTuple {
    EndorsementCount e_prev;
    EndorsementCount e_cur;
    Priority p_cur;
    int n_next = 1;

    AttackTuple(EndorsementCount e_prev, EndorsementCount e_cur, Priority p_cur, int n_next);
    /// Validating convenience constructor from raw integers.
    static AttackTuple make(int e_prev, int e_cur, int p_cur, int n_next);

    friend bool operator==(const AttackTuple&, const AttackTuple&) = default;
};

struct TupleAssessment {
    Seconds delay_diff{0};  // selfish minus honest two-block time
    Xtz reward_diff{0};     // selfish minus honest attacker reward
    bool feasible = false;  // delay_diff < 0
    bool profitable = false;  // reward_diff > 0

    bool is_attack() const { return feasible && profitable; }
};

/// Attacker rewards over the two blocks following slot l-1.
struct RewardPair {
    Xtz honest{0};
    Xtz selfish{0};

    Xtz diff() const { return selfish - honest; }
};

/// Closed form of the Emmy+ delay difference:
/// 40 (p - n) + 8 max(24 - e_cur, 0) - 8 max(e_cur - 8, 0). Independent of e_prev.
Seconds delay_diff_len2(const AttackTuple& t);

/// Delay difference composed from block_delay under `variant`:
/// [D(p, 32) + D(0, e_cur)] - [D(0, 32) + D(n, 32 - e_cur)].
Seconds delay_diff_len2_oracle(ProtocolVariant variant, const AttackTuple& t);
inline Seconds delay_diff_len2_oracle(const AttackTuple& t) {
    return delay_diff_len2_oracle(ProtocolVariant::EmmyPlus, t);
}

/// Closed-form honest/selfish rewards for each variant.
///
/// The modified-protocol pair is the closed form
/// R'_h = 1.25 (e_prev + e_cur + 32), R'_s = 2.5 (e_prev/(p+1) + e_cur).
/// It does not agree with reward_pair_len2_oracle for that variant: the
/// slot-l baking reward is 40/(p+1) when composed block by block, whereas the
/// closed form carries 1.25 e_prev/(p+1) in its place.
RewardPair reward_pair_len2(ProtocolVariant variant, const AttackTuple& t);

/// Honest/selfish rewards summed slot by slot from protocol primitives.
RewardPair reward_pair_len2_oracle(ProtocolVariant variant, const AttackTuple& t);

inline Xtz reward_diff_len2(ProtocolVariant variant, const AttackTuple& t) {
    return reward_pair_len2(variant, t).diff();
}
inline Xtz reward_diff_len2_oracle(ProtocolVariant variant, const AttackTuple& t) {
    return reward_pair_len2_oracle(variant, t).diff();
}

/// Feasibility uses the closed-form delay for Emmy+ and the heuristic fix
/// (identical delay rule) and the block_delay composition for the modified
/// protocol. Profitability uses the closed-form reward difference.
TupleAssessment assess_len2(ProtocolVariant variant, const AttackTuple& t);

/// Single-block variant of the attack: the attacker withholds its slot l-1
/// endorsements from the honest network and bakes slot l at priority p_cur.
struct Len1Assessment {
    Seconds honest_delay{0};
    Seconds selfish_delay{0};
    Xtz honest_reward{0};
    Xtz selfish_reward{0};
    bool feasible = false;
    bool profitable = false;

    Seconds delay_diff() const { return selfish_delay - honest_delay; }
    Xtz reward_diff() const { return selfish_reward - honest_reward; }
    bool is_attack() const { return feasible && profitable; }
};

/// Under the heuristic fix the attacker's slot l-1 endorsements sign the
/// honest priority-0 block, so they are priced at priority 0 on either branch.
/// That parameterization is an extension; the closed-form analysis only covers
/// Emmy+ and the modified protocol.
Len1Assessment assess_len1(ProtocolVariant variant, EndorsementCount e_prev, Priority p_cur);

}  // namespace selfend
