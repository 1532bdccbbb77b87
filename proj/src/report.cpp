#include "selfend/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#ifndef SELFEND_VERSION
#define SELFEND_VERSION "0.0.0"
#endif

namespace selfend {

using nlohmann::json;

namespace {

std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string pct(const std::optional<double>& v) {
    if (!v) return "n/a";
    // one decimal below 10%
    return (*v < 10.0 ? fixed(*v, 1) : fixed(*v, 0)) + "%";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json bounds_json(const EnumerationBounds& b) {
    return {{"e_max", b.e_max}, {"p_max", b.p_max}, {"n_max", b.n_max}};
}

EnumerationBounds bounds_from(const json& j) {
    EnumerationBounds b;
    b.e_max = j.at("e_max").get<int>();
    b.p_max = j.at("p_max").get<int>();
    b.n_max = j.at("n_max").get<int>();
    return b;
}

json tuple_json(const AttackTuple& t) {
    return {{"e_prev", t.e_prev.value}, {"e_cur", t.e_cur.value}, {"p", t.p_cur.value}, {"n", t.n_next}};
}

std::string exact(const Xtz& x) {
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "table") return OutputFormat::Table;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw DomainError("unknown format '" + std::string(text) + "' (expected table, csv or json)");
}

std::string current_timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string tool_version() { return SELFEND_VERSION; }

double round_to_mutez(double xtz) { return std::round(xtz * 1e6) / 1e6; }

std::optional<double> Table1Row::count_ratio_pct() const {
    if (emmy.annual_count == 0.0) return std::nullopt;
    return 100.0 * heuristic.annual_count / emmy.annual_count;
}

std::optional<double> Table1Row::value_ratio_pct() const {
    if (emmy.annual_value == 0.0) return std::nullopt;
    return 100.0 * heuristic.annual_value / emmy.annual_value;
}

std::vector<Table1Row> build_table1(std::span<const double> alphas, const EnumerationBounds& bounds,
                                    const EnumerateOptions& options) {
    std::vector<Table1Row> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        const StakeFraction alpha(a);
        rows.push_back({a, enumerate_attacks(ProtocolVariant::EmmyPlus, alpha, bounds, options),
                        enumerate_attacks(ProtocolVariant::HeuristicFix, alpha, bounds, options)});
    }
    return rows;
}

// JSON ----------------------------------------------------------------------

json to_json(const RunManifest& m) {
    return {{"tool_version", m.tool_version},
            {"command_line", m.command_line},
            {"seed", m.seed ? json(*m.seed) : json(nullptr)},
            {"bounds", bounds_json(m.bounds)},
            {"timestamp", m.timestamp}};
}

RunManifest run_manifest_from_json(const json& j) {
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command_line = j.at("command_line").get<std::string>();
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.bounds = bounds_from(j.at("bounds"));
    m.timestamp = j.at("timestamp").get<std::string>();
    return m;
}

json to_json(const TupleAssessment& a) {
    return {{"delay_diff_s", a.delay_diff.count()},
            {"reward_diff_xtz", round_to_mutez(to_double(a.reward_diff))},
            {"reward_diff_exact", exact(a.reward_diff)},
            {"feasible", a.feasible},
            {"profitable", a.profitable}};
}

json to_json(const Len1Assessment& a) {
    return {{"honest_delay_s", a.honest_delay.count()},
            {"selfish_delay_s", a.selfish_delay.count()},
            {"delay_diff_s", a.delay_diff().count()},
            {"honest_reward_xtz", round_to_mutez(to_double(a.honest_reward))},
            {"selfish_reward_xtz", round_to_mutez(to_double(a.selfish_reward))},
            {"reward_diff_xtz", round_to_mutez(to_double(a.reward_diff()))},
            {"reward_diff_exact", exact(a.reward_diff())},
            {"feasible", a.feasible},
            {"profitable", a.profitable}};
}

json to_json(const AggregateReport& r, bool include_attacks) {
    json j = {{"alpha", r.alpha},
              {"variant", std::string(to_string(r.variant))},
              {"total_prob", r.total_prob},
              {"total_value_xtz", r.total_value},
              {"annual_count", r.annual_count},
              {"annual_value_xtz", round_to_mutez(r.annual_value)},
              {"attack_tuple_count", r.attack_tuple_count},
              {"bounds", bounds_json(r.bounds)}};
    if (include_attacks) {
        json list = json::array();
        for (const AttackRecord& rec : r.attacks) {
            json item = tuple_json(rec.tuple);
            item["assessment"] = to_json(rec.assessment);
            item["probability"] = rec.probability;
            list.push_back(std::move(item));
        }
        j["attacks"] = std::move(list);
    }
    return j;
}

AggregateReport aggregate_report_from_json(const json& j) {
    AggregateReport r;
    r.alpha = j.at("alpha").get<double>();
    r.variant = parse_variant(j.at("variant").get<std::string>());
    r.total_prob = j.at("total_prob").get<double>();
    r.total_value = j.at("total_value_xtz").get<double>();
    r.annual_count = j.at("annual_count").get<double>();
    r.annual_value = j.at("annual_value_xtz").get<double>();
    r.attack_tuple_count = j.at("attack_tuple_count").get<std::size_t>();
    r.bounds = bounds_from(j.at("bounds"));
    if (j.contains("attacks")) {
        for (const json& item : j.at("attacks")) {
            const AttackTuple t = AttackTuple::make(item.at("e_prev").get<int>(), item.at("e_cur").get<int>(),
                                                    item.at("p").get<int>(), item.at("n").get<int>());
            const json& a = item.at("assessment");
            TupleAssessment assessment;
            assessment.delay_diff = Seconds{a.at("delay_diff_s").get<std::int64_t>()};
            const std::string frac = a.at("reward_diff_exact").get<std::string>();
            const auto slash = frac.find('/');
            assessment.reward_diff = Xtz(std::stoll(frac.substr(0, slash)), std::stoll(frac.substr(slash + 1)));
            assessment.feasible = a.at("feasible").get<bool>();
            assessment.profitable = a.at("profitable").get<bool>();
            r.attacks.push_back({t, assessment, item.at("probability").get<double>()});
        }
    }
    return r;
}

json to_json(const Table1Row& row) {
    const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"alpha", row.alpha},
            {"emmy_plus", to_json(row.emmy)},
            {"heuristic", to_json(row.heuristic)},
            {"count_ratio_pct", opt(row.count_ratio_pct())},
            {"value_ratio_pct", opt(row.value_ratio_pct())}};
}

json to_json(const SimOutcome& o) {
    return {{"alpha", o.alpha},
            {"variant", std::string(to_string(o.variant))},
            {"slots_sampled", o.slots_sampled},
            {"attacks_executed", o.attacks_executed},
            {"empirical_rate", o.empirical_rate},
            {"empirical_extra_value_xtz", round_to_mutez(o.empirical_extra_value)},
            {"analytic_rate", o.analytic_rate},
            {"analytic_value_xtz", round_to_mutez(o.analytic_value)},
            {"rate_std_error", o.rate_std_error},
            {"seed", o.seed}};
}

SimOutcome sim_outcome_from_json(const json& j) {
    SimOutcome o;
    o.alpha = j.at("alpha").get<double>();
    o.variant = parse_variant(j.at("variant").get<std::string>());
    o.slots_sampled = j.at("slots_sampled").get<std::uint64_t>();
    o.attacks_executed = j.at("attacks_executed").get<std::uint64_t>();
    o.empirical_rate = j.at("empirical_rate").get<double>();
    o.empirical_extra_value = j.at("empirical_extra_value_xtz").get<double>();
    o.analytic_rate = j.at("analytic_rate").get<double>();
    o.analytic_value = j.at("analytic_value_xtz").get<double>();
    o.rate_std_error = j.at("rate_std_error").get<double>();
    o.seed = j.at("seed").get<std::uint64_t>();
    return o;
}

json to_json(const Episode& e, bool include_events) {
    const ForkOutcome& o = e.outcome;
    json j = {{"winning_branch", std::string(to_string(o.winning_branch))},
              {"honest_elapsed_s", o.honest_elapsed.count()},
              {"selfish_elapsed_s", o.selfish_elapsed.count()},
              {"attacker_reward_honest_xtz", round_to_mutez(to_double(o.attacker_reward_honest))},
              {"attacker_reward_selfish_xtz", round_to_mutez(to_double(o.attacker_reward_selfish))}};
    if (include_events) {
        json events = json::array();
        for (const BlockEvent& ev : e.events) {
            events.push_back({{"branch", std::string(to_string(ev.branch))},
                              {"slot", ev.slot},
                              {"priority", ev.priority.value},
                              {"endorsements_included", ev.endorsements_included.value},
                              {"baked_by_attacker", ev.baked_by_attacker},
                              {"timestamp_s", ev.timestamp.count()},
                              {"attacker_reward_xtz", round_to_mutez(to_double(ev.attacker_reward))}});
        }
        j["events"] = std::move(events);
    }
    return j;
}

json wrap_document(const RunManifest& m, std::string_view key, json payload) {
    json doc = {{"schema_version", kJsonSchemaVersion}, {"manifest", to_json(m)}};
    doc[std::string(key)] = std::move(payload);
    return doc;
}

// CSV -----------------------------------------------------------------------

std::string manifest_comment(const RunManifest& m) {
    return "# manifest " + to_json(m).dump() + "\n";
}

std::string aggregate_csv(std::span<const AggregateReport> reports) {
    std::string out = "alpha,variant,annual_count,annual_value,tuple_count\n";
    for (const AggregateReport& r : reports) {
        out += fixed(r.alpha, 6) + "," + std::string(to_string(r.variant)) + "," +
               fixed(r.annual_count, 6) + "," + fixed(r.annual_value, 6) + "," +
               std::to_string(r.attack_tuple_count) + "\n";
    }
    return out;
}

std::string attacks_csv(const AggregateReport& report) {
    std::string out = "alpha,variant,e_prev,e_cur,p,n,delay_diff_s,reward_diff_xtz,probability\n";
    char prob[40];
    for (const AttackRecord& rec : report.attacks) {
        std::snprintf(prob, sizeof prob, "%.17g", rec.probability);
        out += fixed(report.alpha, 6) + "," + std::string(to_string(report.variant)) + "," +
               std::to_string(rec.tuple.e_prev.value) + "," + std::to_string(rec.tuple.e_cur.value) + "," +
               std::to_string(rec.tuple.p_cur.value) + "," + std::to_string(rec.tuple.n_next) + "," +
               std::to_string(rec.assessment.delay_diff.count()) + "," +
               format_xtz(rec.assessment.reward_diff, 6) + "," + prob + "\n";
    }
    return out;
}

std::string episode_trace_csv(const Episode& episode) {
    std::string out = "branch,slot,priority,endorsements_included,timestamp_s,attacker_reward_xtz\n";
    for (const BlockEvent& ev : episode.events) {
        out += std::string(to_string(ev.branch)) + "," + std::to_string(ev.slot) + "," +
               std::to_string(ev.priority.value) + "," + std::to_string(ev.endorsements_included.value) +
               "," + std::to_string(ev.timestamp.count()) + "," + format_xtz(ev.attacker_reward, 6) + "\n";
    }
    return out;
}

// Tables --------------------------------------------------------------------

std::string render_table1(std::span<const Table1Row> rows) {
    std::ostringstream os;
    os << pad("alpha", 6) << " |" << pad("emmy+ count", 13) << pad("fix count", 11) << pad("%", 7)
       << " |" << pad("emmy+ value", 13) << pad("fix value", 11) << pad("%", 7) << '\n';
    os << std::string(72, '-') << '\n';
    for (const Table1Row& r : rows) {
        os << pad(fixed(r.alpha, 3), 6) << " |" << pad(fixed(r.emmy.annual_count, 2), 13)
           << pad(fixed(r.heuristic.annual_count, 2), 11) << pad(pct(r.count_ratio_pct()), 7) << " |"
           << pad(fixed(r.emmy.annual_value, 2), 13) << pad(fixed(r.heuristic.annual_value, 2), 11)
           << pad(pct(r.value_ratio_pct()), 7) << '\n';
    }
    return os.str();
}

std::string render_aggregates(std::span<const AggregateReport> reports) {
    std::ostringstream os;
    os << pad("alpha", 6) << pad("variant", 11) << pad("count/yr", 12) << pad("value/yr", 12)
       << pad("tuples", 8) << '\n';
    for (const AggregateReport& r : reports) {
        os << pad(fixed(r.alpha, 3), 6) << pad(std::string(to_string(r.variant)), 11)
           << pad(fixed(r.annual_count, 2), 12) << pad(fixed(r.annual_value, 2), 12)
           << pad(std::to_string(r.attack_tuple_count), 8) << '\n';
    }
    return os.str();
}

std::string render_attacks(const AggregateReport& report) {
    std::ostringstream os;
    os << "variant " << to_string(report.variant) << ", alpha " << fixed(report.alpha, 4) << ": "
       << report.attack_tuple_count << " attacking tuples, " << fixed(report.annual_count, 2)
       << " attacks/yr, " << fixed(report.annual_value, 2) << " XTZ/yr\n";
    os << pad("e_prev", 7) << pad("e_cur", 6) << pad("p", 4) << pad("n", 4) << pad("dD (s)", 8)
       << pad("dR (XTZ)", 11) << pad("probability", 14) << '\n';
    char prob[32];
    for (const AttackRecord& rec : report.attacks) {
        std::snprintf(prob, sizeof prob, "%.4e", rec.probability);
        os << pad(std::to_string(rec.tuple.e_prev.value), 7) << pad(std::to_string(rec.tuple.e_cur.value), 6)
           << pad(std::to_string(rec.tuple.p_cur.value), 4) << pad(std::to_string(rec.tuple.n_next), 4)
           << pad(std::to_string(rec.assessment.delay_diff.count()), 8)
           << pad(format_xtz(rec.assessment.reward_diff, 2), 11) << pad(prob, 14) << '\n';
    }
    return os.str();
}

std::string render_len2(ProtocolVariant variant, const AttackTuple& t, const TupleAssessment& a) {
    std::ostringstream os;
    os << "variant:     " << to_string(variant) << '\n'
       << "tuple:       e_prev=" << t.e_prev.value << " e_cur=" << t.e_cur.value << " p=" << t.p_cur.value
       << " n=" << t.n_next << '\n'
       << "delay diff:  " << a.delay_diff.count() << " s\n"
       << "reward diff: " << format_xtz(a.reward_diff, 6) << " XTZ\n"
       << "feasible:    " << yes_no(a.feasible) << '\n'
       << "profitable:  " << yes_no(a.profitable) << '\n';
    return os.str();
}

std::string render_len1(ProtocolVariant variant, EndorsementCount e_prev, Priority p_cur,
                        const Len1Assessment& a) {
    std::ostringstream os;
    os << "variant:        " << to_string(variant) << '\n'
       << "length-1:       e_prev=" << e_prev.value << " p=" << p_cur.value << '\n'
       << "honest delay:   " << a.honest_delay.count() << " s\n"
       << "selfish delay:  " << a.selfish_delay.count() << " s\n"
       << "honest reward:  " << format_xtz(a.honest_reward, 6) << " XTZ\n"
       << "selfish reward: " << format_xtz(a.selfish_reward, 6) << " XTZ\n"
       << "delay diff:     " << a.delay_diff().count() << " s\n"
       << "reward diff:    " << format_xtz(a.reward_diff(), 6) << " XTZ\n"
       << "feasible:       " << yes_no(a.feasible) << '\n'
       << "profitable:     " << yes_no(a.profitable) << '\n';
    return os.str();
}

std::string render_sim(const SimOutcome& o) {
    char buf[64];
    std::ostringstream os;
    os << "variant:          " << to_string(o.variant) << '\n'
       << "alpha:            " << fixed(o.alpha, 4) << '\n'
       << "seed:             " << o.seed << '\n'
       << "slots sampled:    " << o.slots_sampled << '\n'
       << "attacks executed: " << o.attacks_executed << '\n';
    std::snprintf(buf, sizeof buf, "%.6e", o.empirical_rate);
    os << "empirical rate:   " << buf << " per slot\n";
    std::snprintf(buf, sizeof buf, "%.6e", o.analytic_rate);
    os << "analytic rate:    " << buf << " per slot\n";
    std::snprintf(buf, sizeof buf, "%.6e", o.rate_std_error);
    os << "std error:        " << buf << '\n';
    const double z = o.rate_std_error > 0 ? (o.empirical_rate - o.analytic_rate) / o.rate_std_error : 0.0;
    os << "z-score:          " << fixed(z, 2) << '\n'
       << "empirical value:  " << fixed(o.empirical_extra_value, 6) << " XTZ\n"
       << "analytic value:   " << fixed(o.analytic_value, 6) << " XTZ\n";
    return os.str();
}

std::string render_episode(const Episode& e) {
    std::ostringstream os;
    os << pad("branch", 10) << pad("slot", 6) << pad("prio", 6) << pad("endorse", 9) << pad("time (s)", 10)
       << pad("attacker XTZ", 14) << '\n';
    for (const BlockEvent& ev : e.events) {
        os << pad(std::string(to_string(ev.branch)), 10)
           << pad(ev.slot == 0 ? "l" : "l+" + std::to_string(ev.slot), 6)
           << pad(std::to_string(ev.priority.value), 6)
           << pad(std::to_string(ev.endorsements_included.value), 9)
           << pad(std::to_string(ev.timestamp.count()), 10) << pad(format_xtz(ev.attacker_reward, 6), 14)
           << '\n';
    }
    const ForkOutcome& o = e.outcome;
    os << "honest elapsed:  " << o.honest_elapsed.count() << " s\n"
       << "selfish elapsed: " << o.selfish_elapsed.count() << " s\n"
       << "winner:          " << to_string(o.winning_branch) << '\n'
       << "attacker reward (honest play):  " << format_xtz(o.attacker_reward_honest, 6) << " XTZ\n"
       << "attacker reward (selfish play): " << format_xtz(o.attacker_reward_selfish, 6) << " XTZ\n";
    return os.str();
}

}  // namespace selfend
