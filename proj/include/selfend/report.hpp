#pragma once

#include "selfend/attack.hpp"
#include "selfend/chain_sim.hpp"
#include "selfend/probability.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace selfend {

/// Bumped whenever a JSON field is renamed, removed or changes meaning.
inline constexpr int kJsonSchemaVersion = 1;

enum class OutputFormat { Table, Csv, Json };
OutputFormat parse_format(std::string_view text);

/// Everything needed to reproduce an output artifact.
struct RunManifest {
    std::string tool_version;
    std::string command_line;
    std::optional<std::uint64_t> seed;
    EnumerationBounds bounds;
    std::string timestamp;  // ISO-8601, UTC
};

std::string current_timestamp_utc();
std::string tool_version();

/// Rounds an XTZ amount to mutez precision for CSV/JSON output.
double round_to_mutez(double xtz);

/// One row of the comparison table: Emmy+ against the heuristic fix.
struct Table1Row {
    double alpha = 0.0;
    AggregateReport emmy;
    AggregateReport heuristic;

    /// heuristic / emmy as a percentage; nullopt when the Emmy+ figure is zero.
    std::optional<double> count_ratio_pct() const;
    std::optional<double> value_ratio_pct() const;
};

std::vector<Table1Row> build_table1(std::span<const double> alphas,
                                    const EnumerationBounds& bounds = {},
                                    const EnumerateOptions& options = {});

// JSON ----------------------------------------------------------------------

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const AggregateReport& r, bool include_attacks = false);
nlohmann::json to_json(const Table1Row& row);
nlohmann::json to_json(const TupleAssessment& a);
nlohmann::json to_json(const Len1Assessment& a);
nlohmann::json to_json(const SimOutcome& o);
nlohmann::json to_json(const Episode& e, bool include_events = true);

/// Parsers for the documented schemas. Throw nlohmann::json::exception on
/// missing or mistyped fields.
AggregateReport aggregate_report_from_json(const nlohmann::json& j);
SimOutcome sim_outcome_from_json(const nlohmann::json& j);
RunManifest run_manifest_from_json(const nlohmann::json& j);

/// {"schema_version": ..., "manifest": {...}, <key>: payload}
nlohmann::json wrap_document(const RunManifest& m, std::string_view key, nlohmann::json payload);

// CSV -----------------------------------------------------------------------

/// alpha,variant,annual_count,annual_value,tuple_count
std::string aggregate_csv(std::span<const AggregateReport> reports);
/// alpha,variant,e_prev,e_cur,p,n,delay_diff_s,reward_diff_xtz,probability
std::string attacks_csv(const AggregateReport& report);
/// branch,slot,priority,endorsements_included,timestamp_s,attacker_reward_xtz
std::string episode_trace_csv(const Episode& episode);
/// One comment line ("# manifest {...}") prefixed to every CSV artifact.
std::string manifest_comment(const RunManifest& m);

// Human-readable tables -----------------------------------------------------

std::string render_table1(std::span<const Table1Row> rows);
std::string render_aggregates(std::span<const AggregateReport> reports);
std::string render_attacks(const AggregateReport& report);
std::string render_len2(ProtocolVariant variant, const AttackTuple& t, const TupleAssessment& a);
std::string render_len1(ProtocolVariant variant, EndorsementCount e_prev, Priority p_cur,
                        const Len1Assessment& a);
std::string render_sim(const SimOutcome& o);
std::string render_episode(const Episode& e);

}  // namespace selfend
