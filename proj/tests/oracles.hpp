#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/geometric.hpp>

#include <algorithm>
#include <cmath>

namespace selfend::oracle {

inline constexpr double kMinutesPerYear = 525600.0;

/// Delay with an explicit per-priority step (40 for Emmy+, 193 modified).
constexpr long raw_delay(long step, long p, long e) {
    return 60 + step * p + 8 * std::max(24L - e, 0L);
}

/// Pr[first attacker priority == p]: failures before first success.
inline double pmf_first_priority(int p, double alpha) {
    return boost::math::pdf(boost::math::geometric_distribution<double>(alpha), p);
}

/// Pr[N == n] = alpha^n (1 - alpha): Geometric(1 - alpha) on {0, 1, ...}.
inline double pmf_consecutive(int n, double alpha) {
    return boost::math::pdf(boost::math::geometric_distribution<double>(1.0 - alpha), n);
}

inline double pmf_endorsements(int e, double alpha) {
    return boost::math::pdf(boost::math::binomial_distribution<double>(32, alpha), e);
}

/// Product of the four marginals, one factor per slot-right.
inline double tuple_probability(int e_prev, int e_cur, int p, int n, double alpha) {
    return pmf_first_priority(p, alpha) * pmf_consecutive(n, alpha) * pmf_endorsements(e_prev, alpha) *
           pmf_endorsements(e_cur, alpha);
}

inline double closed_delay_diff(int e_cur, int p, int n) {
    return 40.0 * (p - n) + 8.0 * std::max(24 - e_cur, 0) - 8.0 * std::max(e_cur - 8, 0);
}

/// Emmy+ (penalty on e_prev) or heuristic fix (penalty on e_cur), in doubles.
inline double closed_reward_diff(int e_prev, int e_cur, int p, bool heuristic) {
    const double inv = 1.0 / (p + 1);
    const int penalised = heuristic ? e_cur : e_prev;
    return 16.0 * (inv + e_cur / 160.0 - 0.2) + 2.0 * penalised * (inv - 1.0);
}

struct BruteForceTotals {
    double prob = 0.0;
    double value = 0.0;
    long count = 0;
};

/// Straight quadruple loop over the tuple domain with double arithmetic.
inline BruteForceTotals brute_force(double alpha, bool heuristic, int p_max = 20, int n_max = 20) {
    BruteForceTotals t;
    for (int ep = 0; ep <= 32; ++ep)
        for (int ec = 0; ec <= 32; ++ec)
            for (int p = 1; p <= p_max; ++p)
                for (int n = 1; n <= n_max; ++n) {
                    const double r = closed_reward_diff(ep, ec, p, heuristic);
                    if (closed_delay_diff(ec, p, n) < 0 && r > 1e-12) {
                        const double pr = tuple_probability(ep, ec, p, n, alpha);
                        t.prob += pr;
                        t.value += pr * r;
                        ++t.count;
                    }
                }
    return t;
}

}  // namespace selfend::oracle
