#include "selfend/probability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <thread>

namespace selfend {

namespace {

constexpr std::array<std::uint64_t, kEndorsersPerSlot + 1> binomial_row() {
    std::array<std::uint64_t, kEndorsersPerSlot + 1> row{};
    row[0] = 1;
    for (int k = 1; k <= kEndorsersPerSlot; ++k) {
        row[k] = row[k - 1] * static_cast<std::uint64_t>(kEndorsersPerSlot - k + 1) /
                 static_cast<std::uint64_t>(k);
    }
    return row;
}

constexpr auto kChoose32 = binomial_row();
static_assert(kChoose32[16] == 601080390ULL);
static_assert(kChoose32[32] == 1ULL);

struct PartialSum {
    double prob = 0.0;
    double value = 0.0;
    std::size_t count = 0;
    std::vector<AttackRecord> attacks;
};

PartialSum sum_for_e_prev(ProtocolVariant variant, StakeFraction alpha,
                          const EnumerationBounds& bounds, int e_prev, bool keep) {
    PartialSum out;
    for (int e_cur = 0; e_cur <= bounds.e_max; ++e_cur) {
        for (int p = 1; p <= bounds.p_max; ++p) {
            for (int n = 1; n <= bounds.n_max; ++n) {
                const AttackTuple t = AttackTuple::make(e_prev, e_cur, p, n);
                const TupleAssessment a = assess_len2(variant, t);
                if (!a.is_attack()) continue;
                const double prob = tuple_probability(alpha, t);
                out.prob += prob;
                out.value += prob * to_double(a.reward_diff);
                ++out.count;
                if (keep) out.attacks.push_back({t, a, prob});
            }
        }
    }
    return out;
}

}  // namespace

StakeFraction::StakeFraction(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("stake fraction alpha must be in [0, 1], got " + std::to_string(alpha));
    }
}

void EnumerationBounds::validate() const {
    if (e_max < 0 || e_max > kEndorsersPerSlot) {
        throw DomainError("endorsement bound must be in [0, 32], got " + std::to_string(e_max));
    }
    if (p_max < 1) throw DomainError("priority bound must be >= 1, got " + std::to_string(p_max));
    if (n_max < 1) throw DomainError("consecutive-priority bound must be >= 1, got " + std::to_string(n_max));
}

std::size_t EnumerationBounds::tuple_count() const {
    const auto e = static_cast<std::size_t>(e_max + 1);
    return e * e * static_cast<std::size_t>(p_max) * static_cast<std::size_t>(n_max);
}

double first_priority_pmf(int p, double alpha) {
    return std::pow(1.0 - alpha, p) * alpha;
}

double consecutive_top_pmf(int n, double alpha) {
    return std::pow(alpha, n) * (1.0 - alpha);
}

double endorsement_pmf(int e, double alpha) {
    if (e < 0 || e > kEndorsersPerSlot) return 0.0;
    return static_cast<double>(kChoose32[e]) * std::pow(alpha, e) *
           std::pow(1.0 - alpha, kEndorsersPerSlot - e);
}

double tuple_probability(StakeFraction alpha, const AttackTuple& t) {
    const double a = alpha.value();
    const int ep = t.e_prev.value;
    const int ec = t.e_cur.value;
    const int alpha_exp = t.n_next + ep + ec + 1;
    const int rest_exp = 65 + t.p_cur.value - ep - ec;
    return static_cast<double>(kChoose32[ep]) * static_cast<double>(kChoose32[ec]) *
           std::pow(a, alpha_exp) * std::pow(1.0 - a, rest_exp);
}

AggregateReport enumerate_attacks(ProtocolVariant variant, StakeFraction alpha,
                                  const EnumerationBounds& bounds,
                                  const EnumerateOptions& options) {
    bounds.validate();
    const int rows = bounds.e_max + 1;
    std::vector<PartialSum> partial(static_cast<std::size_t>(rows));

    unsigned workers = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    workers = std::max(1u, std::min(workers, static_cast<unsigned>(rows)));

    if (workers == 1) {
        for (int ep = 0; ep < rows; ++ep) {
            partial[ep] = sum_for_e_prev(variant, alpha, bounds, ep, options.keep_attacks);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int ep = static_cast<int>(w); ep < rows; ep += static_cast<int>(workers)) {
                    partial[ep] = sum_for_e_prev(variant, alpha, bounds, ep, options.keep_attacks);
                }
            });
        }
    }

    // Fixed-order reduction keeps the result independent of the thread count.
    AggregateReport report;
    report.alpha = alpha.value();
    report.variant = variant;
    report.bounds = bounds;
    for (auto& part : partial) {
        report.total_prob += part.prob;
        report.total_value += part.value;
        report.attack_tuple_count += part.count;
        if (options.keep_attacks) {
            report.attacks.insert(report.attacks.end(),
                                  std::make_move_iterator(part.attacks.begin()),
                                  std::make_move_iterator(part.attacks.end()));
        }
    }
    report.annual_count = kSlotsPerYear * report.total_prob;
    report.annual_value = kSlotsPerYear * report.total_value;
    return report;
}

std::vector<AggregateReport> alpha_sweep(ProtocolVariant variant, std::span<const double> alphas,
                                         const EnumerationBounds& bounds,
                                         const EnumerateOptions& options) {
    std::vector<AggregateReport> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        out.push_back(enumerate_attacks(variant, StakeFraction(a), bounds, options));
    }
    return out;
}

std::vector<double> default_table_alphas() {
    return {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
}

}  // namespace selfend
