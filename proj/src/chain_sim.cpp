#include "selfend/chain_sim.hpp"

#include "selfend/protocol.hpp"

#include <cmath>
#include <string>

namespace selfend {

namespace {

struct IncludedEndorsements {
    int total = 0;
    int attacker_owned = 0;
    Priority endorsed_priority;  // priority of the block these endorsements sign
};

struct BlockSpec {
    int slot = 0;
    Priority priority;
    bool attacker = false;
    IncludedEndorsements included;
};

Xtz attacker_reward_for(ProtocolVariant variant, const BlockSpec& b) {
    Xtz reward = 0;
    const EndorsementCount total(b.included.total);
    if (b.attacker) reward += baking_reward(variant, b.priority, total);
    const Priority price =
        endorsement_pricing_priority(variant, b.priority, b.included.endorsed_priority);
    reward += static_cast<std::int64_t>(b.included.attacker_owned) * endorsement_reward(variant, price);
    return reward;
}

struct BranchResult {
    Seconds elapsed{0};
    Xtz attacker_reward{0};
};

BranchResult extend(ProtocolVariant variant, Branch branch, std::initializer_list<BlockSpec> blocks,
                    std::vector<BlockEvent>& trace) {
    BranchResult r;
    for (const BlockSpec& b : blocks) {
        const EndorsementCount included(b.included.total);
        r.elapsed += block_delay(variant, b.priority, included);
        const Xtz reward = attacker_reward_for(variant, b);
        r.attacker_reward += reward;
        trace.push_back(BlockEvent{branch, b.slot, b.priority, included, b.attacker, r.elapsed, reward});
    }
    return r;
}

}  // namespace

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Honest: return "honest";
        case Branch::Selfish: return "selfish";
        case Branch::Reference: return "reference";
    }
    return "unknown";
}

SlotRights sample_slot_rights(StakeFraction alpha, SimRng& rng) {
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) {
        throw DomainError("slot sampling needs alpha strictly inside (0, 1), got " + std::to_string(a));
    }
    // Failures before the attacker's first priority.
    std::geometric_distribution<int> first_priority(a);
    // Further attacker-held priorities before the first honest one.
    std::geometric_distribution<int> extra_top(1.0 - a);
    std::binomial_distribution<int> endorsements(kEndorsersPerSlot, a);

    SlotRights rights;
    rights.attacker_top_priority = Priority(first_priority(rng));
    rights.attacker_consecutive_top =
        rights.attacker_top_priority.value == 0 ? 1 + extra_top(rng) : 0;
    rights.attacker_endorsements = EndorsementCount(endorsements(rng));
    return rights;
}

SimOutcome run_monte_carlo(const SimConfig& config) {
    if (config.mode != SimMode::TupleSampling) {
        throw DomainError("run_monte_carlo requires TupleSampling mode; use replay_episode for single episodes");
    }
    if (config.num_slots < 1) throw DomainError("num_slots must be >= 1");

    SimRng rng(config.rng_seed);
    SimOutcome out;
    out.seed = config.rng_seed;
    out.variant = config.variant;
    out.alpha = config.alpha.value();
    out.slots_sampled = config.num_slots;

    for (std::uint64_t i = 0; i < config.num_slots; ++i) {
        const SlotRights prev = sample_slot_rights(config.alpha, rng);
        const SlotRights cur = sample_slot_rights(config.alpha, rng);
        const SlotRights next = sample_slot_rights(config.alpha, rng);
        if (cur.attacker_top_priority.value == 0 || next.attacker_consecutive_top == 0) continue;

        const AttackTuple t(prev.attacker_endorsements, cur.attacker_endorsements,
                            cur.attacker_top_priority, next.attacker_consecutive_top);
        const TupleAssessment a = assess_len2(config.variant, t);
        if (!a.is_attack()) continue;
        ++out.attacks_executed;
        out.empirical_extra_value += to_double(a.reward_diff);
    }

    const auto n = static_cast<double>(out.slots_sampled);
    out.empirical_rate = static_cast<double>(out.attacks_executed) / n;

    const AggregateReport analytic = enumerate_attacks(config.variant, config.alpha, config.bounds);
    out.analytic_rate = analytic.total_prob;
    out.analytic_value = analytic.total_value * n;
    out.rate_std_error = std::sqrt(out.analytic_rate * (1.0 - out.analytic_rate) / n);
    return out;
}

Episode replay_episode(ProtocolVariant variant, const AttackTuple& t) {
    constexpr Priority top{0};
    const int ep = t.e_prev.value;
    const int ec = t.e_cur.value;

    Episode episode;
    auto& trace = episode.events;

    const BranchResult honest =
        extend(variant, Branch::Honest,
               {BlockSpec{0, top, false, {kEndorsersPerSlot, ep, top}},
                BlockSpec{1, Priority(t.n_next), false, {kEndorsersPerSlot - ec, 0, top}}},
               trace);
    const BranchResult selfish =
        extend(variant, Branch::Selfish,
               {BlockSpec{0, t.p_cur, true, {kEndorsersPerSlot, ep, top}},
                BlockSpec{1, top, true, {ec, ec, t.p_cur}}},
               trace);
    const BranchResult reference =
        extend(variant, Branch::Reference,
               {BlockSpec{0, top, false, {kEndorsersPerSlot, ep, top}},
                BlockSpec{1, top, true, {kEndorsersPerSlot, ec, top}}},
               trace);

    ForkOutcome& o = episode.outcome;
    o.honest_elapsed = honest.elapsed;
    o.selfish_elapsed = selfish.elapsed;
    // Both branches hold two blocks; the one completed strictly first wins.
    o.winning_branch = selfish.elapsed < honest.elapsed ? Branch::Selfish : Branch::Honest;
    o.attacker_reward_honest = reference.attacker_reward;
    o.attacker_reward_selfish = selfish.attacker_reward;
    return episode;
}

}  // namespace selfend
