#pragma once

#include "selfend/attack.hpp"
#include "selfend/types.hpp"

#include <span>
#include <vector>

namespace selfend {

/// Minutes in a (365-day) year; one block per minute under healthy operation.
inline constexpr double kSlotsPerYear = 365.0 * 24.0 * 60.0;

/// Fraction of active rolls held by the attacker.
class StakeFraction {
public:
    constexpr StakeFraction() = default;
    explicit StakeFraction(double alpha);

    constexpr double value() const { return alpha_; }

private:
    double alpha_ = 0.0;
};

struct EnumerationBounds {
    int e_max = kEndorsersPerSlot;  // e_prev, e_cur range over [0, e_max]
    int p_max = 20;                 // p_cur over [1, p_max]
    int n_max = 20;                 // n_next over [1, n_max]

    /// Throws DomainError unless e_max in [0, 32] and p_max, n_max >= 1.
    void validate() const;
    std::size_t tuple_count() const;

    friend bool operator==(const EnumerationBounds&, const EnumerationBounds&) = default;
};

struct AttackRecord {
    AttackTuple tuple;
    TupleAssessment assessment;
    double probability = 0.0;
};

struct AggregateReport {
    double alpha = 0.0;
    ProtocolVariant variant = ProtocolVariant::EmmyPlus;
    double total_prob = 0.0;   // Pr[A2] per slot
    double total_value = 0.0;  // expected extra XTZ per slot
    double annual_count = 0.0;
    double annual_value = 0.0;
    std::size_t attack_tuple_count = 0;
    EnumerationBounds bounds;
    std::vector<AttackRecord> attacks;  // filled only on request
};

// Probability mass functions of the slot-rights model.

/// Pr[attacker's best priority at a slot is p] = (1 - alpha)^p alpha.
double first_priority_pmf(int p, double alpha);
/// Pr[attacker holds exactly the first n priorities] = alpha^n (1 - alpha).
double consecutive_top_pmf(int n, double alpha);
/// Pr[attacker holds e of the 32 endorsement rights], Binomial(32, alpha).
double endorsement_pmf(int e, double alpha);

/// C(32, e_prev) C(32, e_cur) alpha^(n + e_prev + e_cur + 1) (1 - alpha)^(65 + p - e_prev - e_cur).
///
/// Evaluated in double precision with exact binomial coefficients; every
/// exponent is non-negative so alpha in {0, 1} yields exact zeros.
double tuple_probability(StakeFraction alpha, const AttackTuple& t);

struct EnumerateOptions {
    bool keep_attacks = false;
    /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned threads = 1;
};

/// Sums probability and probability-weighted reward difference over every
/// tuple of E x E x P x N that is feasible and profitable under `variant`.
AggregateReport enumerate_attacks(ProtocolVariant variant, StakeFraction alpha,
                                  const EnumerationBounds& bounds = {},
                                  const EnumerateOptions& options = {});

std::vector<AggregateReport> alpha_sweep(ProtocolVariant variant, std::span<const double> alphas,
                                         const EnumerationBounds& bounds = {},
                                         const EnumerateOptions& options = {});

/// The alpha grid of the standard comparison table: 0.10 to 0.40 in
/// steps of 0.05.
std::vector<double> default_table_alphas();

}  // namespace selfend
