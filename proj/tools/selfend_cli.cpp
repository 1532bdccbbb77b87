// selfend: command-line front end for the selfish-endorsing analysis.
//
// Exit codes: 0 success, 2 usage or domain error, 1 internal error.

#include "selfend/attack.hpp"
#include "selfend/chain_sim.hpp"
#include "selfend/probability.hpp"
#include "selfend/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace selfend;

constexpr int kUsageError = 2;
constexpr int kInternalError = 1;

struct CommonOptions {
    std::string format = "table";
    std::string out;
};

struct BoundsOptions {
    int p_max = 20;
    int n_max = 20;

    EnumerationBounds bounds() const {
        EnumerationBounds b;
        b.p_max = p_max;
        b.n_max = n_max;
        b.validate();
        return b;
    }
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out, "Write output to this path instead of stdout");
}

void add_bounds(CLI::App* cmd, BoundsOptions& b) {
    cmd->add_option("--bounds-p", b.p_max, "Largest attacker priority enumerated")->capture_default_str();
    cmd->add_option("--bounds-n", b.n_max, "Largest consecutive top-priority count enumerated")
        ->capture_default_str();
}

void emit(const CommonOptions& common, const std::string& text) {
    if (common.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(common.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + common.out);
    file << text;
}

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item.substr(first), &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse alpha '" + item + "'");
        }
        if (item.find_first_not_of(" \t", first + used) != std::string::npos) {
            throw DomainError("cannot parse alpha '" + item + "'");
        }
        (void)StakeFraction(v);
        out.push_back(v);
    }
    return out;
}

std::vector<ProtocolVariant> parse_variants(const std::string& text) {
    std::vector<ProtocolVariant> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_variant(item));
    }
    return out;
}

struct TupleOptions {
    std::optional<int> e_prev, e_cur, p, n;

    void add(CLI::App* cmd) {
        cmd->add_option("--e-prev", e_prev, "Attacker endorsement rights at slot l-1");
        cmd->add_option("--e-cur", e_cur, "Attacker endorsement rights at slot l");
        cmd->add_option("--p", p, "Attacker's best baking priority at slot l (>= 1)");
        cmd->add_option("--n", n, "Consecutive top priorities held at slot l+1 (>= 1)");
    }

    static int need(const std::optional<int>& v, const char* flag) {
        if (!v) throw DomainError(std::string("missing required option ") + flag);
        return *v;
    }

    AttackTuple tuple() const {
        return AttackTuple(EndorsementCount(need(e_prev, "--e-prev")), EndorsementCount(need(e_cur, "--e-cur")),
                           Priority(need(p, "--p")), need(n, "--n"));
    }
};

class Cli {
public:
    explicit Cli(std::string command_line) : command_line_(std::move(command_line)) {}

    RunManifest manifest(const EnumerationBounds& bounds, std::optional<std::uint64_t> seed = {}) const {
        return {tool_version(), command_line_, seed, bounds, current_timestamp_utc()};
    }

    void analyze(const std::string& variant_name, int length, const TupleOptions& opts,
                 const CommonOptions& common) const {
        const ProtocolVariant variant = parse_variant(variant_name);
        const OutputFormat format = parse_format(common.format);
        const RunManifest m = manifest({});

        if (length == 1) {
            const EndorsementCount e_prev(TupleOptions::need(opts.e_prev, "--e-prev"));
            const Priority p(TupleOptions::need(opts.p, "--p"));
            const Len1Assessment a = assess_len1(variant, e_prev, p);
            switch (format) {
                case OutputFormat::Table:
                    emit(common, render_len1(variant, e_prev, p, a));
                    break;
                case OutputFormat::Csv:
                    emit(common, manifest_comment(m) +
                                     "variant,e_prev,p,honest_delay_s,selfish_delay_s,honest_reward_xtz,"
                                     "selfish_reward_xtz,feasible,profitable\n" +
                                     std::string(to_string(variant)) + "," + std::to_string(e_prev.value) + "," +
                                     std::to_string(p.value) + "," + std::to_string(a.honest_delay.count()) +
                                     "," + std::to_string(a.selfish_delay.count()) + "," +
                                     format_xtz(a.honest_reward) + "," + format_xtz(a.selfish_reward) + "," +
                                     (a.feasible ? "true" : "false") + "," + (a.profitable ? "true" : "false") +
                                     "\n");
                    break;
                case OutputFormat::Json: {
                    nlohmann::json payload = to_json(a);
                    payload["variant"] = std::string(to_string(variant));
                    payload["e_prev"] = e_prev.value;
                    payload["p"] = p.value;
                    emit(common, wrap_document(m, "length1", payload).dump(2) + "\n");
                    break;
                }
            }
            return;
        }
        if (length != 2) throw DomainError("--length must be 1 or 2");

        const AttackTuple t = opts.tuple();
        const TupleAssessment a = assess_len2(variant, t);
        switch (format) {
            case OutputFormat::Table:
                emit(common, render_len2(variant, t, a));
                break;
            case OutputFormat::Csv:
                emit(common, manifest_comment(m) +
                                 "variant,e_prev,e_cur,p,n,delay_diff_s,reward_diff_xtz,feasible,profitable\n" +
                                 std::string(to_string(variant)) + "," + std::to_string(t.e_prev.value) + "," +
                                 std::to_string(t.e_cur.value) + "," + std::to_string(t.p_cur.value) + "," +
                                 std::to_string(t.n_next) + "," + std::to_string(a.delay_diff.count()) + "," +
                                 format_xtz(a.reward_diff) + "," + (a.feasible ? "true" : "false") + "," +
                                 (a.profitable ? "true" : "false") + "\n");
                break;
            case OutputFormat::Json: {
                nlohmann::json payload = to_json(a);
                payload["variant"] = std::string(to_string(variant));
                payload["tuple"] = {{"e_prev", t.e_prev.value}, {"e_cur", t.e_cur.value}, {"p", t.p_cur.value},
                                    {"n", t.n_next}};
                emit(common, wrap_document(m, "length2", payload).dump(2) + "\n");
                break;
            }
        }
    }

    void table1(const std::string& alphas_text, const std::string& variants_text, const BoundsOptions& b,
                unsigned threads, const CommonOptions& common) const {
        const std::vector<double> alphas = parse_alphas(alphas_text);
        const std::vector<ProtocolVariant> variants = parse_variants(variants_text);
        const EnumerationBounds bounds = b.bounds();
        const OutputFormat format = parse_format(common.format);
        const RunManifest m = manifest(bounds);
        const EnumerateOptions options{false, threads};

        const bool paired = variants == std::vector{ProtocolVariant::EmmyPlus, ProtocolVariant::HeuristicFix};
        if (paired && format != OutputFormat::Csv) {
            const std::vector<Table1Row> rows = build_table1(alphas, bounds, options);
            if (format == OutputFormat::Table) {
                emit(common, render_table1(rows) + manifest_comment(m));
            } else {
                nlohmann::json list = nlohmann::json::array();
                for (const Table1Row& row : rows) list.push_back(to_json(row));
                emit(common, wrap_document(m, "rows", std::move(list)).dump(2) + "\n");
            }
            return;
        }

        std::vector<AggregateReport> reports;
        for (ProtocolVariant v : variants) {
            auto sweep = alpha_sweep(v, alphas, bounds, options);
            reports.insert(reports.end(), sweep.begin(), sweep.end());
        }
        switch (format) {
            case OutputFormat::Table:
                emit(common, render_aggregates(reports) + manifest_comment(m));
                break;
            case OutputFormat::Csv:
                emit(common, manifest_comment(m) + aggregate_csv(reports));
                break;
            case OutputFormat::Json: {
                nlohmann::json list = nlohmann::json::array();
                for (const AggregateReport& r : reports) list.push_back(to_json(r));
                emit(common, wrap_document(m, "reports", std::move(list)).dump(2) + "\n");
                break;
            }
        }
    }

    void enumerate(const std::string& variant_name, double alpha, const BoundsOptions& b, unsigned threads,
                   const CommonOptions& common) const {
        const ProtocolVariant variant = parse_variant(variant_name);
        const EnumerationBounds bounds = b.bounds();
        const OutputFormat format = parse_format(common.format);
        const RunManifest m = manifest(bounds);
        const AggregateReport report =
            enumerate_attacks(variant, StakeFraction(alpha), bounds, EnumerateOptions{true, threads});
        switch (format) {
            case OutputFormat::Table:
                emit(common, render_attacks(report) + manifest_comment(m));
                break;
            case OutputFormat::Csv:
                emit(common, manifest_comment(m) + attacks_csv(report));
                break;
            case OutputFormat::Json:
                emit(common, wrap_document(m, "report", to_json(report, true)).dump(2) + "\n");
                break;
        }
    }

    void simulate(const std::string& variant_name, double alpha, std::uint64_t slots, std::uint64_t seed,
                  const BoundsOptions& b, const CommonOptions& common) const {
        SimConfig config;
        config.variant = parse_variant(variant_name);
        config.alpha = StakeFraction(alpha);
        if (alpha <= 0.0 || alpha >= 1.0) {
            throw DomainError("simulate needs --alpha strictly inside (0, 1)");
        }
        if (slots < 1) throw DomainError("--slots must be >= 1");
        config.num_slots = slots;
        config.rng_seed = seed;
        config.bounds = b.bounds();
        const OutputFormat format = parse_format(common.format);
        const RunManifest m = manifest(config.bounds, seed);
        const SimOutcome outcome = run_monte_carlo(config);
        switch (format) {
            case OutputFormat::Table:
                emit(common, render_sim(outcome) + manifest_comment(m));
                break;
            case OutputFormat::Csv: {
                char line[512];
                std::snprintf(line, sizeof line, "%.6f,%s,%llu,%llu,%.17g,%.17g,%.17g,%.6f,%.6f,%llu\n", outcome.alpha,
                              std::string(to_string(outcome.variant)).c_str(),
                              static_cast<unsigned long long>(outcome.slots_sampled),
                              static_cast<unsigned long long>(outcome.attacks_executed), outcome.empirical_rate,
                              outcome.analytic_rate, outcome.rate_std_error, outcome.empirical_extra_value,
                              outcome.analytic_value, static_cast<unsigned long long>(outcome.seed));
                emit(common, manifest_comment(m) +
                                 "alpha,variant,slots_sampled,attacks_executed,empirical_rate,analytic_rate,"
                                 "rate_std_error,empirical_extra_value_xtz,analytic_value_xtz,seed\n" +
                                 line);
                break;
            }
            case OutputFormat::Json:
                emit(common, wrap_document(m, "outcome", to_json(outcome)).dump(2) + "\n");
                break;
        }
    }

    void replay(const std::string& variant_name, const TupleOptions& opts, const std::string& trace_path,
                const CommonOptions& common) const {
        const ProtocolVariant variant = parse_variant(variant_name);
        const AttackTuple t = opts.tuple();
        const OutputFormat format = parse_format(common.format);
        const RunManifest m = manifest({});
        const Episode episode = replay_episode(variant, t);

        if (!trace_path.empty()) {
            std::ofstream trace(trace_path, std::ios::binary);
            if (!trace) throw std::runtime_error("cannot open trace file " + trace_path);
            trace << manifest_comment(m) << episode_trace_csv(episode);
        }
        switch (format) {
            case OutputFormat::Table:
                emit(common, render_episode(episode) + manifest_comment(m));
                break;
            case OutputFormat::Csv: {
                const ForkOutcome& o = episode.outcome;
                emit(common, manifest_comment(m) +
                                 "variant,e_prev,e_cur,p,n,winning_branch,honest_elapsed_s,selfish_elapsed_s,"
                                 "attacker_reward_honest_xtz,attacker_reward_selfish_xtz\n" +
                                 std::string(to_string(variant)) + "," + std::to_string(t.e_prev.value) + "," +
                                 std::to_string(t.e_cur.value) + "," + std::to_string(t.p_cur.value) + "," +
                                 std::to_string(t.n_next) + "," + std::string(to_string(o.winning_branch)) + "," +
                                 std::to_string(o.honest_elapsed.count()) + "," +
                                 std::to_string(o.selfish_elapsed.count()) + "," +
                                 format_xtz(o.attacker_reward_honest) + "," + format_xtz(o.attacker_reward_selfish) +
                                 "\n");
                break;
            }
            case OutputFormat::Json: {
                nlohmann::json payload = to_json(episode);
                payload["variant"] = std::string(to_string(variant));
                emit(common, wrap_document(m, "episode", std::move(payload)).dump(2) + "\n");
                break;
            }
        }
    }

private:
    std::string command_line_;
};

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selfish-endorsing attack analysis for Emmy+ style proof-of-stake"};
    app.set_version_flag("--version", selfend::tool_version());
    app.require_subcommand(1);

    const Cli cli(join_args(argc, argv));
    CommonOptions common;
    BoundsOptions bounds;
    TupleOptions tuple;
    std::string variant = "emmy-plus";
    std::string variants = "emmy-plus,heuristic";
    std::string alphas = "0.1,0.15,0.2,0.25,0.3,0.35,0.4";
    std::string trace;
    int length = 2;
    double alpha = 0.3;
    std::uint64_t slots = 1'000'000;
    std::uint64_t seed = 42;
    unsigned threads = 1;

    const auto variant_option = [&](CLI::App* cmd) {
        cmd->add_option("--variant", variant, "emmy-plus, heuristic or modified")->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "Assess one length-2 tuple or length-1 opportunity");
    variant_option(analyze);
    tuple.add(analyze);
    analyze->add_option("--length", length, "Attack length (1 or 2)")->capture_default_str();
    add_common(analyze, common);

    auto* table = app.add_subcommand("table1", "Annualized attack counts and values over an alpha sweep");
    table->add_option("--alphas", alphas, "Comma-separated stake fractions")->capture_default_str();
    table->add_option("--variants", variants, "Comma-separated variants")->capture_default_str();
    table->add_option("--threads", threads, "Enumeration threads (0 = all cores)")->capture_default_str();
    add_bounds(table, bounds);
    add_common(table, common);

    auto* enumerate = app.add_subcommand("enumerate", "Dump every attacking tuple at one alpha");
    variant_option(enumerate);
    enumerate->add_option("--alpha", alpha, "Attacker stake fraction")->capture_default_str();
    enumerate->add_option("--threads", threads, "Enumeration threads (0 = all cores)")->capture_default_str();
    add_bounds(enumerate, bounds);
    add_common(enumerate, common);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo validation of the analytic attack rate");
    variant_option(simulate);
    simulate->add_option("--alpha", alpha, "Attacker stake fraction")->capture_default_str();
    simulate->add_option("--slots", slots, "Number of sampled slot contexts")->capture_default_str();
    simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
    add_bounds(simulate, bounds);
    add_common(simulate, common);

    auto* replay = app.add_subcommand("replay", "Replay one attack episode block by block");
    variant_option(replay);
    tuple.add(replay);
    replay->add_option("--trace", trace, "Also write the per-block event trace as CSV to this path");
    add_common(replay, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*analyze) {
            cli.analyze(variant, length, tuple, common);
        } else if (*table) {
            cli.table1(alphas, variants, bounds, threads, common);
        } else if (*enumerate) {
            cli.enumerate(variant, alpha, bounds, threads, common);
        } else if (*simulate) {
            cli.simulate(variant, alpha, slots, seed, bounds, common);
        } else if (*replay) {
            cli.replay(variant, tuple, trace, common);
        }
    } catch (const selfend::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return 0;
}
