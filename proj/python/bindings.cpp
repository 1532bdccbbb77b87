#include "selfend/attack.hpp"
#include "selfend/chain_sim.hpp"
#include "selfend/probability.hpp"
#include "selfend/protocol.hpp"
#include "selfend/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace selfend;

namespace {

// Exact amounts cross the boundary as fractions.Fraction.
py::object to_fraction(const Xtz& x) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(x.numerator(), x.denominator());
}

AttackTuple make_tuple(int e_prev, int e_cur, int p, int n) { return AttackTuple::make(e_prev, e_cur, p, n); }

EnumerationBounds make_bounds(int p_max, int n_max) {
    EnumerationBounds b;
    b.p_max = p_max;
    b.n_max = n_max;
    b.validate();
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Selfish-endorsing attack analysis: protocol arithmetic, closed-form "
              "attack assessment, exhaustive enumeration and Monte Carlo validation.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

    py::enum_<ProtocolVariant>(m, "ProtocolVariant")
        .value("EmmyPlus", ProtocolVariant::EmmyPlus)
        .value("HeuristicFix", ProtocolVariant::HeuristicFix)
        .value("ModifiedDelayReward", ProtocolVariant::ModifiedDelayReward);
    m.def("parse_variant", [](const std::string& s) { return parse_variant(s); });

    m.def("block_delay",
          [](ProtocolVariant v, int p, int e) { return block_delay(v, Priority(p), EndorsementCount(e)).count(); },
          py::arg("variant"), py::arg("p"), py::arg("e"), "Minimum block delay in seconds.");
    m.def("baking_reward",
          [](ProtocolVariant v, int p, int e) { return to_fraction(baking_reward(v, Priority(p), EndorsementCount(e))); },
          py::arg("variant"), py::arg("p"), py::arg("e"), "Baking reward in XTZ as an exact Fraction.");
    m.def("endorsement_reward",
          [](ProtocolVariant v, int p) { return to_fraction(endorsement_reward(v, Priority(p))); },
          py::arg("variant"), py::arg("p"), "Per-endorsement reward in XTZ as an exact Fraction.");

    py::class_<AttackTuple>(m, "AttackTuple")
        .def(py::init(&make_tuple), py::arg("e_prev"), py::arg("e_cur"), py::arg("p"), py::arg("n"))
        .def_property_readonly("e_prev", [](const AttackTuple& t) { return t.e_prev.value; })
        .def_property_readonly("e_cur", [](const AttackTuple& t) { return t.e_cur.value; })
        .def_property_readonly("p", [](const AttackTuple& t) { return t.p_cur.value; })
        .def_property_readonly("n", [](const AttackTuple& t) { return t.n_next; })
        .def("__repr__", [](const AttackTuple& t) {
            return "AttackTuple(e_prev=" + std::to_string(t.e_prev.value) + ", e_cur=" +
                   std::to_string(t.e_cur.value) + ", p=" + std::to_string(t.p_cur.value) +
                   ", n=" + std::to_string(t.n_next) + ")";
        });

    py::class_<TupleAssessment>(m, "TupleAssessment")
        .def_property_readonly("delay_diff", [](const TupleAssessment& a) { return a.delay_diff.count(); })
        .def_property_readonly("reward_diff", [](const TupleAssessment& a) { return to_fraction(a.reward_diff); })
        .def_readonly("feasible", &TupleAssessment::feasible)
        .def_readonly("profitable", &TupleAssessment::profitable);

    py::class_<Len1Assessment>(m, "Len1Assessment")
        .def_property_readonly("honest_delay", [](const Len1Assessment& a) { return a.honest_delay.count(); })
        .def_property_readonly("selfish_delay", [](const Len1Assessment& a) { return a.selfish_delay.count(); })
        .def_property_readonly("honest_reward", [](const Len1Assessment& a) { return to_fraction(a.honest_reward); })
        .def_property_readonly("selfish_reward", [](const Len1Assessment& a) { return to_fraction(a.selfish_reward); })
        .def_readonly("feasible", &Len1Assessment::feasible)
        .def_readonly("profitable", &Len1Assessment::profitable);

    m.def("delay_diff_len2", [](const AttackTuple& t) { return delay_diff_len2(t).count(); });
    m.def("delay_diff_len2_oracle",
          [](const AttackTuple& t, ProtocolVariant v) { return delay_diff_len2_oracle(v, t).count(); },
          py::arg("t"), py::arg("variant") = ProtocolVariant::EmmyPlus);
    m.def("reward_diff_len2", [](ProtocolVariant v, const AttackTuple& t) { return to_fraction(reward_diff_len2(v, t)); });
    m.def("reward_diff_len2_oracle",
          [](ProtocolVariant v, const AttackTuple& t) { return to_fraction(reward_diff_len2_oracle(v, t)); });
    m.def("assess_len2", &assess_len2, py::arg("variant"), py::arg("t"));
    m.def("assess_len1",
          [](ProtocolVariant v, int e_prev, int p) { return assess_len1(v, EndorsementCount(e_prev), Priority(p)); },
          py::arg("variant"), py::arg("e_prev"), py::arg("p"));

    m.def("tuple_probability", [](double alpha, const AttackTuple& t) { return tuple_probability(StakeFraction(alpha), t); },
          py::arg("alpha"), py::arg("t"));

    // Reports cross as the same dictionaries the CLI emits in JSON mode.
    m.def(
        "enumerate_attacks",
        [](ProtocolVariant v, double alpha, int p_max, int n_max, bool keep_attacks) {
            const auto report = enumerate_attacks(v, StakeFraction(alpha), make_bounds(p_max, n_max),
                                                  EnumerateOptions{keep_attacks, 1});
            return py::module_::import("json").attr("loads")(to_json(report, keep_attacks).dump());
        },
        py::arg("variant"), py::arg("alpha"), py::arg("p_max") = 20, py::arg("n_max") = 20,
        py::arg("keep_attacks") = false);
    m.def(
        "alpha_sweep",
        [](ProtocolVariant v, const std::vector<double>& alphas, int p_max, int n_max) {
            py::list out;
            for (const auto& r : alpha_sweep(v, alphas, make_bounds(p_max, n_max))) {
                out.append(py::module_::import("json").attr("loads")(to_json(r).dump()));
            }
            return out;
        },
        py::arg("variant"), py::arg("alphas"), py::arg("p_max") = 20, py::arg("n_max") = 20);
    m.def(
        "replay_episode",
        [](ProtocolVariant v, const AttackTuple& t) {
            return py::module_::import("json").attr("loads")(to_json(replay_episode(v, t)).dump());
        },
        py::arg("variant"), py::arg("t"));
    m.def(
        "run_monte_carlo",
        [](ProtocolVariant v, double alpha, std::uint64_t slots, std::uint64_t seed) {
            SimConfig config;
            config.variant = v;
            config.alpha = StakeFraction(alpha);
            config.num_slots = slots;
            config.rng_seed = seed;
            SimOutcome outcome;
            {
                py::gil_scoped_release release;
                outcome = run_monte_carlo(config);
            }
            return py::module_::import("json").attr("loads")(to_json(outcome).dump());
        },
        py::arg("variant"), py::arg("alpha"), py::arg("slots"), py::arg("seed") = 42);

    m.attr("SLOTS_PER_YEAR") = kSlotsPerYear;
    m.attr("__version__") = tool_version();
}
