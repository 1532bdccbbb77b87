#include "selfend/attack.hpp"
#include "selfend/probability.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace selfend;

namespace {

constexpr auto kEmmy = ProtocolVariant::EmmyPlus;
constexpr auto kHeuristic = ProtocolVariant::HeuristicFix;
constexpr auto kModified = ProtocolVariant::ModifiedDelayReward;

AggregateReport run(ProtocolVariant v, double alpha, int p_max = 20, int n_max = 20, unsigned threads = 1) {
    EnumerationBounds b;
    b.p_max = p_max;
    b.n_max = n_max;
    return enumerate_attacks(v, StakeFraction(alpha), b, EnumerateOptions{false, threads});
}

}  // namespace

TEST_SUITE("probability") {
    TEST_CASE("stake fraction domain") {
        CHECK_THROWS_AS(StakeFraction(-0.01), DomainError);
        CHECK_THROWS_AS(StakeFraction(1.01), DomainError);
        CHECK_THROWS_AS(StakeFraction(std::nan("")), DomainError);
        CHECK(StakeFraction(0.0).value() == 0.0);
        CHECK(StakeFraction(1.0).value() == 1.0);
    }

    TEST_CASE("bounds validation") {
        EnumerationBounds b;
        CHECK(b.tuple_count() == 33u * 33u * 20u * 20u);
        b.p_max = 0;
        CHECK_THROWS_AS(b.validate(), DomainError);
        b.p_max = 20;
        b.e_max = 33;
        CHECK_THROWS_AS(b.validate(), DomainError);
    }

    TEST_CASE("marginals match distribution library") {
        for (double a : {0.05, 0.1, 0.3, 0.351, 0.6}) {
            for (int k = 0; k <= 32; ++k) {
                CHECK(endorsement_pmf(k, a) == doctest::Approx(oracle::pmf_endorsements(k, a)).epsilon(1e-12));
            }
            for (int k = 0; k <= 40; ++k) {
                CHECK(first_priority_pmf(k, a) == doctest::Approx(oracle::pmf_first_priority(k, a)).epsilon(1e-12));
                CHECK(consecutive_top_pmf(k, a) == doctest::Approx(oracle::pmf_consecutive(k, a)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("tuple probability equals the product of marginals") {
        const AttackTuple t = AttackTuple::make(2, 14, 1, 2);
        const double expected = oracle::pmf_first_priority(1, 0.3) * oracle::pmf_consecutive(2, 0.3) *
                                oracle::pmf_endorsements(2, 0.3) * oracle::pmf_endorsements(14, 0.3);
        CHECK(tuple_probability(StakeFraction(0.3), t) == doctest::Approx(expected).epsilon(1e-12));

        for (int ep : {0, 5, 32})
            for (int ec : {0, 11, 32})
                for (int p : {1, 4, 20})
                    for (int n : {1, 3, 20})
                        for (double a : {0.1, 0.25, 0.4}) {
                            const double o = oracle::tuple_probability(ep, ec, p, n, a);
                            REQUIRE(tuple_probability(StakeFraction(a), AttackTuple::make(ep, ec, p, n)) ==
                                    doctest::Approx(o).epsilon(1e-11));
                        }
    }

    TEST_CASE("degenerate stake") {
        for (int ep : {0, 16, 32})
            for (int ec : {0, 16, 32})
                for (int p : {1, 20})
                    for (int n : {1, 20}) {
                        const AttackTuple t = AttackTuple::make(ep, ec, p, n);
                        CHECK(tuple_probability(StakeFraction(0.0), t) == 0.0);
                        CHECK(tuple_probability(StakeFraction(1.0), t) == 0.0);
                    }
        for (auto v : {kEmmy, kHeuristic, kModified}) {
            const AggregateReport r = run(v, 0.0);
            CHECK(r.annual_count == 0.0);
            CHECK(r.annual_value == 0.0);
        }
    }

    TEST_CASE("binomial normalization") {
        for (double a = 0.01; a < 1.0; a += 0.01) {
            double s = 0.0;
            for (int e = 0; e <= 32; ++e) s += endorsement_pmf(e, a);
            REQUIRE(std::abs(s - 1.0) < 1e-12);
        }
    }

    TEST_CASE("geometric truncation tails") {
        // Mass beyond the default bounds is (1-a)^21 for P and a^21 for N.
        for (double a : {0.1, 0.2, 0.3, 0.4}) {
            double p_in = 0.0, n_in = 0.0;
            for (int k = 0; k <= 20; ++k) p_in += oracle::pmf_first_priority(k, a);
            for (int k = 0; k <= 20; ++k) n_in += oracle::pmf_consecutive(k, a);
            CHECK(1.0 - p_in == doctest::Approx(std::pow(1.0 - a, 21)).epsilon(1e-9));
            CHECK(1.0 - n_in == doctest::Approx(std::pow(a, 21)).epsilon(1e-6));
            CHECK(1.0 - n_in < 1e-6);
        }
    }

    TEST_CASE("enumeration matches brute force over independent formulas") {
        for (double a : {0.1, 0.2, 0.3, 0.35, 0.4}) {
            for (bool heuristic : {false, true}) {
                const auto o = oracle::brute_force(a, heuristic);
                const AggregateReport r = run(heuristic ? kHeuristic : kEmmy, a);
                CAPTURE(a);
                CAPTURE(heuristic);
                CHECK(r.attack_tuple_count == static_cast<std::size_t>(o.count));
                CHECK(r.total_prob == doctest::Approx(o.prob).epsilon(1e-10));
                CHECK(r.total_value == doctest::Approx(o.value).epsilon(1e-10));
                CHECK(r.annual_count == doctest::Approx(oracle::kMinutesPerYear * o.prob).epsilon(1e-10));
            }
        }
    }

    TEST_CASE("annualization") {
        const AggregateReport r = run(kEmmy, 0.3);
        CHECK(r.annual_count == 525600.0 * r.total_prob);
        CHECK(r.annual_value == 525600.0 * r.total_value);
        CHECK(r.total_prob >= 0.0);
        CHECK(r.total_prob <= 1.0);
    }

    TEST_CASE("widening bounds barely moves the figures") {
        for (double a : default_table_alphas()) {
            for (auto v : {kEmmy, kHeuristic}) {
                const AggregateReport narrow = run(v, a);
                const AggregateReport wide = run(v, a, 40, 40);
                CHECK(std::abs(wide.annual_count - narrow.annual_count) < 0.01);
                CHECK(std::abs(wide.annual_value - narrow.annual_value) < 0.01);
            }
        }
    }

    TEST_CASE("count is not monotone in stake") {
        CHECK(run(kEmmy, 0.35).annual_count > run(kEmmy, 0.40).annual_count);
    }

    TEST_CASE("heuristic fix reduces attacks") {
        for (double a : default_table_alphas()) {
            CHECK(run(kHeuristic, a).annual_count < run(kEmmy, a).annual_count);
            CHECK(run(kHeuristic, a).annual_value < run(kEmmy, a).annual_value);
        }
    }

    TEST_CASE("modified protocol reports no attacks") {
        for (double a : {0.05, 0.2, 0.351, 0.5, 0.9}) CHECK(run(kModified, a).attack_tuple_count == 0);
    }

    TEST_CASE("dropping either filter strictly increases probability") {
        const StakeFraction a(0.3);
        double both = 0.0, feasible_only = 0.0, profitable_only = 0.0;
        for (int ep = 0; ep <= 32; ++ep)
            for (int ec = 0; ec <= 32; ++ec)
                for (int p = 1; p <= 20; ++p)
                    for (int n = 1; n <= 20; ++n) {
                        const AttackTuple t = AttackTuple::make(ep, ec, p, n);
                        const TupleAssessment x = assess_len2(kEmmy, t);
                        const double pr = tuple_probability(a, t);
                        if (x.feasible) feasible_only += pr;
                        if (x.profitable) profitable_only += pr;
                        if (x.is_attack()) both += pr;
                    }
        const double reported = run(kEmmy, 0.3).total_prob;
        CHECK(reported == doctest::Approx(both).epsilon(1e-12));
        CHECK(feasible_only > both);
        CHECK(profitable_only > both);
    }

    TEST_CASE("kept attacks are consistent with totals") {
        EnumerationBounds b;
        const AggregateReport r = enumerate_attacks(kEmmy, StakeFraction(0.25), b, EnumerateOptions{true, 1});
        CHECK(r.attacks.size() == r.attack_tuple_count);
        double prob = 0.0;
        for (const auto& rec : r.attacks) {
            REQUIRE(rec.assessment.is_attack());
            prob += rec.probability;
        }
        CHECK(prob == doctest::Approx(r.total_prob).epsilon(1e-12));
    }

    TEST_CASE("result does not depend on thread count") {
        const AggregateReport one = run(kEmmy, 0.3, 20, 20, 1);
        for (unsigned threads : {2u, 3u, 8u, 64u}) {
            const AggregateReport many = run(kEmmy, 0.3, 20, 20, threads);
            CHECK(many.total_prob == one.total_prob);
            CHECK(many.total_value == one.total_value);
            CHECK(many.attack_tuple_count == one.attack_tuple_count);
        }
    }

    TEST_CASE("alpha sweep") {
        CHECK(alpha_sweep(kEmmy, std::vector<double>{}).empty());
        const std::vector<double> alphas{0.2, 0.3};
        const auto reports = alpha_sweep(kEmmy, alphas);
        REQUIRE(reports.size() == 2);
        CHECK(reports[1].alpha == 0.3);
        CHECK(reports[1].total_prob == run(kEmmy, 0.3).total_prob);
        CHECK_THROWS_AS(alpha_sweep(kEmmy, std::vector<double>{0.2, 1.5}), DomainError);
    }
}
