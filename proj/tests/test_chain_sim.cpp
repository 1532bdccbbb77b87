#include "selfend/chain_sim.hpp"

#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace selfend;
using namespace std::chrono_literals;

namespace {

constexpr auto kEmmy = ProtocolVariant::EmmyPlus;
constexpr auto kHeuristic = ProtocolVariant::HeuristicFix;
constexpr auto kModified = ProtocolVariant::ModifiedDelayReward;

SimOutcome simulate(ProtocolVariant v, double alpha, std::uint64_t slots, std::uint64_t seed) {
    SimConfig c;
    c.alpha = StakeFraction(alpha);
    c.variant = v;
    c.num_slots = slots;
    c.rng_seed = seed;
    return run_monte_carlo(c);
}

// |observed mean - expected| within k standard errors.
bool within_sigma(double sum, double expected_mean, double variance, int samples, double k = 3.0) {
    return std::abs(sum / samples - expected_mean) <= k * std::sqrt(variance / samples);
}

}  // namespace

TEST_SUITE("chain_sim") {
    TEST_CASE("slot sampler marginal means") {
        for (double a : {0.1, 0.3, 0.6}) {
            SimRng rng(7);
            constexpr int kDraws = 200'000;
            double p_sum = 0, e_sum = 0, top_count = 0, n_sum = 0;
            for (int i = 0; i < kDraws; ++i) {
                const SlotRights r = sample_slot_rights(StakeFraction(a), rng);
                p_sum += r.attacker_top_priority.value;
                e_sum += r.attacker_endorsements.value;
                REQUIRE((r.attacker_consecutive_top >= 1) == (r.attacker_top_priority.value == 0));
                if (r.attacker_top_priority.value == 0) {
                    ++top_count;
                    n_sum += r.attacker_consecutive_top;
                }
            }
            CAPTURE(a);
            CHECK(within_sigma(p_sum, (1 - a) / a, (1 - a) / (a * a), kDraws));
            CHECK(within_sigma(e_sum, 32 * a, 32 * a * (1 - a), kDraws));
            CHECK(within_sigma(top_count, a, a * (1 - a), kDraws));
            const int tops = static_cast<int>(top_count);
            CHECK(within_sigma(n_sum, 1 / (1 - a), a / ((1 - a) * (1 - a)), tops));
        }
    }

    TEST_CASE("endorsement draws pass a chi-square test") {
        const double a = 0.3;
        SimRng rng(2024);
        constexpr int kDraws = 100'000;
        std::array<int, 33> observed{};
        for (int i = 0; i < kDraws; ++i) ++observed[sample_slot_rights(StakeFraction(a), rng).attacker_endorsements.value];

        // Pool the sparse tails into the nearest bin with expectation >= 5.
        double stat = 0.0, obs_low = 0, exp_low = 0, obs_high = 0, exp_high = 0;
        int bins = 0;
        for (int e = 0; e <= 32; ++e) {
            const double expected = kDraws * oracle::pmf_endorsements(e, a);
            if (e <= 3) {
                obs_low += observed[e];
                exp_low += expected;
            } else if (e >= 18) {
                obs_high += observed[e];
                exp_high += expected;
            } else {
                stat += (observed[e] - expected) * (observed[e] - expected) / expected;
                ++bins;
            }
        }
        stat += (obs_low - exp_low) * (obs_low - exp_low) / exp_low;
        stat += (obs_high - exp_high) * (obs_high - exp_high) / exp_high;
        bins += 2;
        const boost::math::chi_squared_distribution<double> chi(bins - 1);
        CHECK(stat < boost::math::quantile(chi, 0.999));
    }

    TEST_CASE("joint tuple frequency") {
        const double a = 0.3;
        SimRng rng(99);
        constexpr int kTriples = 300'000;
        int hits = 0;
        for (int i = 0; i < kTriples; ++i) {
            (void)sample_slot_rights(StakeFraction(a), rng);
            const SlotRights cur = sample_slot_rights(StakeFraction(a), rng);
            const SlotRights next = sample_slot_rights(StakeFraction(a), rng);
            hits += cur.attacker_top_priority.value == 1 && next.attacker_consecutive_top == 1;
        }
        const double expected = oracle::pmf_first_priority(1, a) * oracle::pmf_consecutive(1, a);
        CHECK(within_sigma(hits, expected, expected * (1 - expected), kTriples));
    }

    TEST_CASE("sampler rejects degenerate stake") {
        SimRng rng(1);
        CHECK_THROWS_AS(sample_slot_rights(StakeFraction(0.0), rng), DomainError);
        CHECK_THROWS_AS(sample_slot_rights(StakeFraction(1.0), rng), DomainError);
    }

    TEST_CASE("worked episode") {
        const Episode e = replay_episode(kEmmy, AttackTuple::make(2, 14, 1, 2));
        CHECK(e.outcome.honest_elapsed == 248s);
        CHECK(e.outcome.selfish_elapsed == 240s);
        CHECK(e.outcome.attacker_reward_honest == Xtz(48));
        CHECK(e.outcome.attacker_reward_selfish == Xtz(261, 5));
        CHECK(e.outcome.winning_branch == Branch::Selfish);
        CHECK(e.events.size() == 6);
        CHECK(e.events[1].timestamp == 248s);
        CHECK(e.events[3].timestamp == 240s);
    }

    TEST_CASE("timestamp tie goes to the honest branch") {
        const Episode e = replay_episode(kEmmy, AttackTuple::make(0, 16, 1, 1));
        CHECK(e.outcome.honest_elapsed == e.outcome.selfish_elapsed);
        CHECK(e.outcome.winning_branch == Branch::Honest);
    }

    TEST_CASE("replay agrees with the analysis") {
        std::mt19937_64 rng(31337);
        std::uniform_int_distribution<int> e(0, 32), p(1, 20), n(1, 20);
        for (int i = 0; i < 10'000; ++i) {
            const AttackTuple t = AttackTuple::make(e(rng), e(rng), p(rng), n(rng));
            for (auto v : {kEmmy, kHeuristic, kModified}) {
                const ForkOutcome o = replay_episode(v, t).outcome;
                const Seconds delay = o.selfish_elapsed - o.honest_elapsed;
                const Xtz reward = o.attacker_reward_selfish - o.attacker_reward_honest;
                REQUIRE(delay == delay_diff_len2_oracle(v, t));
                REQUIRE((o.winning_branch == Branch::Selfish) == (delay < 0s));
                if (v == kModified) {
                    REQUIRE(reward == reward_diff_len2_oracle(v, t));
                } else {
                    REQUIRE(delay == delay_diff_len2(t));
                    REQUIRE(reward == reward_diff_len2(v, t));
                }
            }
        }
    }

    TEST_CASE("monte carlo is deterministic per seed") {
        const SimOutcome a = simulate(kEmmy, 0.3, 50'000, 5);
        const SimOutcome b = simulate(kEmmy, 0.3, 50'000, 5);
        CHECK(a.attacks_executed == b.attacks_executed);
        CHECK(a.empirical_extra_value == b.empirical_extra_value);
        CHECK(a.seed == 5);
    }

    TEST_CASE("monte carlo agrees with enumeration") {
        for (auto v : {kEmmy, kHeuristic}) {
            const SimOutcome o = simulate(v, 0.3, 300'000, 11);
            CHECK(std::abs(o.empirical_rate - o.analytic_rate) <= 3.0 * o.rate_std_error);
            CHECK(o.analytic_value > 0.0);
        }
    }

    TEST_CASE("monte carlo under the modified protocol finds nothing") {
        const SimOutcome o = simulate(kModified, 0.35, 100'000, 3);
        CHECK(o.attacks_executed == 0);
        CHECK(o.analytic_rate == 0.0);
    }

    TEST_CASE("monte carlo argument checks") {
        SimConfig c;
        c.alpha = StakeFraction(0.3);
        c.num_slots = 0;
        CHECK_THROWS_AS(run_monte_carlo(c), DomainError);
        c.num_slots = 10;
        c.mode = SimMode::ChainReplay;
        CHECK_THROWS_AS(run_monte_carlo(c), DomainError);
    }
}
