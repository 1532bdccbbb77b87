#include "selfend/attack.hpp"

#include "selfend/protocol.hpp"

#include <algorithm>
#include <string>

namespace selfend {

namespace {

constexpr EndorsementCount kAll{kEndorsersPerSlot};
constexpr Priority kTop{0};

}  // namespace

AttackTuple::AttackTuple(EndorsementCount e_prev_, EndorsementCount e_cur_, Priority p_cur_,
                         int n_next_)
    : e_prev(e_prev_), e_cur(e_cur_), p_cur(p_cur_), n_next(n_next_) {
    if (p_cur.value < 1) {
        throw DomainError("attack priority p must be >= 1, got " + std::to_string(p_cur.value));
    }
    if (n_next < 1) {
        throw DomainError("consecutive top priorities n must be >= 1, got " +
                          std::to_string(n_next));
    }
}

AttackTuple AttackTuple::make(int e_prev, int e_cur, int p_cur, int n_next) {
    return AttackTuple(EndorsementCount(e_prev), EndorsementCount(e_cur), Priority(p_cur), n_next);
}

Seconds delay_diff_len2(const AttackTuple& t) {
    const int e = t.e_cur.value;
    return Seconds{40 * (t.p_cur.value - t.n_next) + 8 * std::max(24 - e, 0) -
                   8 * std::max(e - 8, 0)};
}

Seconds delay_diff_len2_oracle(ProtocolVariant variant, const AttackTuple& t) {
    // The honest network is missing the attacker's slot-l endorsements and
    // must wait for the first priority the attacker does not hold.
    const Seconds honest =
        block_delay(variant, kTop, kAll) +
        block_delay(variant, Priority(t.n_next), EndorsementCount(kEndorsersPerSlot - t.e_cur.value));
    const Seconds selfish =
        block_delay(variant, t.p_cur, kAll) + block_delay(variant, kTop, t.e_cur);
    return selfish - honest;
}

RewardPair reward_pair_len2(ProtocolVariant variant, const AttackTuple& t) {
    const std::int64_t ep = t.e_prev.value;
    const std::int64_t ec = t.e_cur.value;
    const Xtz inv_rank(1, t.p_cur.value + 1);

    switch (variant) {
        case ProtocolVariant::EmmyPlus:
            return {2 * (ep + ec) + Xtz(16),
                    2 * (ep * inv_rank + ec) + 16 * (inv_rank + Xtz(4, 5) + Xtz(ec, 160))};
        case ProtocolVariant::HeuristicFix:
            return {2 * (ep + ec) + Xtz(16),
                    2 * (ec * inv_rank + ep) + 16 * (inv_rank + Xtz(4, 5) + Xtz(ec, 160))};
        case ProtocolVariant::ModifiedDelayReward:
            return {Xtz(5, 4) * (ep + ec + 32), Xtz(5, 2) * (ep * inv_rank + ec)};
    }
    return {};
}

RewardPair reward_pair_len2_oracle(ProtocolVariant variant, const AttackTuple& t) {
    const auto re = [variant](Priority p) { return endorsement_reward(variant, p); };
    const auto rb = [variant](Priority p, EndorsementCount e) { return baking_reward(variant, p, e); };
    const std::int64_t ep = t.e_prev.value;
    const std::int64_t ec = t.e_cur.value;

    // Honest play: an honest priority-0 block at slot l includes the attacker's
    // slot l-1 endorsements; the attacker bakes slot l+1 at priority 0 with all
    // 32 slot-l endorsements.
    const Xtz honest = ep * re(kTop) + ec * re(kTop) + rb(kTop, kAll);

    // Selfish play: the attacker's priority-p block at slot l includes all
    // slot l-1 endorsements, and its priority-0 block at slot l+1 includes only
    // its own e_cur endorsements of that block.
    const Priority prev_price = endorsement_pricing_priority(variant, t.p_cur, kTop);
    const Priority cur_price = endorsement_pricing_priority(variant, kTop, t.p_cur);
    const Xtz selfish =
        ep * re(prev_price) + rb(t.p_cur, kAll) + ec * re(cur_price) + rb(kTop, t.e_cur);

    return {honest, selfish};
}

TupleAssessment assess_len2(ProtocolVariant variant, const AttackTuple& t) {
    TupleAssessment a;
    a.delay_diff = variant == ProtocolVariant::ModifiedDelayReward
                       ? delay_diff_len2_oracle(variant, t)
                       : delay_diff_len2(t);
    a.reward_diff = reward_diff_len2(variant, t);
    a.feasible = a.delay_diff < Seconds{0};
    a.profitable = a.reward_diff > 0;
    return a;
}

Len1Assessment assess_len1(ProtocolVariant variant, EndorsementCount e_prev, Priority p_cur) {
    if (p_cur.value < 1) {
        throw DomainError("attack priority p must be >= 1, got " + std::to_string(p_cur.value));
    }
    const std::int64_t ep = e_prev.value;
    Len1Assessment a;
    a.honest_delay =
        block_delay(variant, kTop, EndorsementCount(kEndorsersPerSlot - e_prev.value));
    a.selfish_delay = block_delay(variant, p_cur, e_prev);

    a.honest_reward = ep * endorsement_reward(variant, kTop);
    a.selfish_reward = baking_reward(variant, p_cur, e_prev) +
                       ep * endorsement_reward(variant,
                                               endorsement_pricing_priority(variant, p_cur, kTop));
    a.feasible = a.selfish_delay < a.honest_delay;
    a.profitable = a.selfish_reward > a.honest_reward;
    return a;
}

}  // namespace selfend
