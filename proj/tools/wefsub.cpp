// wefsub: command-line front end for weighted envy-freeness with subsidies.
//
//   wefsub check INSTANCE ALLOCATION [--emit-graph]
//   wefsub solve INSTANCE [--algorithm NAME] [--output FILE] [--trace]
//   wefsub mechanism vcg|aw INSTANCE [--upfront C] [--output FILE]
//   wefsub mef INSTANCE ALLOCATION --budget D [--output FILE]
//   wefsub fixtures (--all | --name NAME...) [--emit-instance FILE]
//
// Exit codes: 0 success or affirmative verdict, 1 negative verdict,
// 2 input error, 3 internal inconsistency.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "wefsub/allocators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/fairness.hpp"
#include "wefsub/io.hpp"
#include "wefsub/mechanisms.hpp"
#include "wefsub/mef.hpp"
#include "wefsub/oracle.hpp"

using namespace wefsub;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kInternal = 3 };

bool g_json = false;

std::string show(const Instance& in, const Allocation& a) {
    std::string out = "(";
    for (AgentId i = 0; i < a.agent_count(); ++i) out += (i ? ", " : "") + format_bundle(in, a[i]);
    return out + ")";
}

std::string show(const std::vector<Rational>& xs) { return "(" + join(xs) + ")"; }

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

template <class W>
std::string verdict_text(const Verdict<W>& v, const std::string& witness) {
    return v.holds() ? "true" : "false (" + witness + ")";
}

std::string pair_text(const Instance& in, const Verdict<PairViolation>& v, const char* relation) {
    if (v.holds()) return "true";
    return "false (" + agent_label(in, v.violation->i) + " " + relation + " " + agent_label(in, v.violation->j) + ")";
}

std::string waste_text(const Instance& in, const Verdict<WasteViolation>& v) {
    if (v.holds()) return "true";
    const auto& w = *v.violation;
    return "false (" + agent_label(in, w.holder) + " gains nothing from " + in.item_labels[w.item] + ", which " +
           agent_label(in, w.beneficiary) + " values)";
}

std::string optional_text(const Instance& in, const OptionalVerdict<Allocation>& v, const char* relation) {
    if (!v.verdict) return "skipped (" + v.skipped_reason + ")";
    if (v.verdict->holds()) return "true";
    return "false (" + std::string(relation) + " " + show(in, *v.verdict->violation) + ")";
}

Json optional_json(const Instance& in, const OptionalVerdict<Allocation>& v) {
    if (!v.verdict) return Json{{"skipped", v.skipped_reason}};
    Json out{{"holds", v.verdict->holds()}};
    if (!v.verdict->holds()) out["witness"] = emit_allocation(in, *v.verdict->violation)["bundles"];
    return out;
}

Json pair_json(const Instance& in, const Verdict<PairViolation>& v) {
    Json out{{"holds", v.holds()}};
    if (!v.holds()) out["witness"] = {agent_label(in, v.violation->i), agent_label(in, v.violation->j)};
    return out;
}

void print_graph_text(const Instance& in, const WeightedEnvyGraph& graph) {
    std::cout << "envy graph (row envies column):\n";
    for (AgentId i = 0; i < graph.agent_count(); ++i) {
        std::cout << "  " << agent_label(in, i) << ":";
        for (const auto& x : graph.lengths[i]) std::cout << ' ' << to_string(x);
        std::cout << '\n';
    }
}

std::string cycle_text(const Instance& in, const AgentCycle& cycle) {
    std::string out;
    for (AgentId a : cycle) out += agent_label(in, a) + " -> ";
    return out + agent_label(in, cycle.front());
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& instance_path, const std::string& allocation_path, bool emit_graph_flag) {
    const Instance in = load_instance(instance_path);
    const Allocation alloc = load_allocation(in, allocation_path);
    const WeightedEnvyGraph graph = build_envy_graph(in, alloc);
    const bool freeable = is_weighted_envy_freeable(in, alloc, Verify::On);
    const auto cycle = find_positive_cycle(graph);
    const FairnessReport report = evaluate_fairness(in, alloc);
    std::optional<SubsidyVector> subsidy;
    if (freeable) subsidy = min_subsidies(in, alloc);

    if (g_json) {
        Json doc;
        doc["allocation"] = emit_allocation(in, alloc)["bundles"];
        doc["envy_freeable"] = freeable;
        if (cycle) {
            Json agents = Json::array();
            for (AgentId a : *cycle) agents.push_back(agent_label(in, a));
            doc["positive_cycle"] = {{"agents", agents}, {"length", to_string(cycle_length(graph, *cycle))}};
        }
        if (subsidy) {
            doc["subsidies"] = emit_rationals(subsidy->payments);
            doc["max_subsidy"] = to_string(subsidy->max_payment());
            doc["total_subsidy"] = to_string(subsidy->total());
        }
        doc["wef1"] = pair_json(in, report.wef1);
        doc["wwef1"] = pair_json(in, report.wwef1);
        doc["wef1_t"] = pair_json(in, report.wef1_t);
        Json waste{{"holds", report.non_wasteful.holds()}};
        if (!report.non_wasteful.holds()) {
            const auto& w = *report.non_wasteful.violation;
            waste["witness"] = {{"holder", agent_label(in, w.holder)},
                                {"item", in.item_labels[w.item]},
                                {"beneficiary", agent_label(in, w.beneficiary)}};
        }
        doc["non_wasteful"] = std::move(waste);
        doc["pareto_efficient"] = optional_json(in, report.pareto_efficient);
        doc["nonzero_social_welfare"] = optional_json(in, report.nonzero_social_welfare);
        doc["weighted_welfare_maximizing"] = optional_json(in, report.weighted_welfare_maximizing);
        if (emit_graph_flag) doc["graph"] = emit_graph(graph);
        emit(doc);
    } else {
        std::cout << "allocation: " << show(in, alloc) << '\n';
        std::cout << "envy-freeable: " << (freeable ? "true" : "false") << '\n';
        if (cycle) {
            std::cout << "positive cycle: " << cycle_text(in, *cycle) << " (length "
                      << to_string(cycle_length(graph, *cycle)) << ")\n";
        }
        if (subsidy) {
            std::cout << "subsidies: " << show(subsidy->payments) << '\n';
            std::cout << "max subsidy: " << to_string(subsidy->max_payment()) << '\n';
            std::cout << "total subsidy: " << to_string(subsidy->total()) << '\n';
        }
        std::cout << "WEF1: " << pair_text(in, report.wef1, "envies") << '\n';
        std::cout << "WWEF1: " << pair_text(in, report.wwef1, "envies") << '\n';
        std::cout << "WEF1-T: " << pair_text(in, report.wef1_t, "envies") << '\n';
        std::cout << "non-wasteful: " << waste_text(in, report.non_wasteful) << '\n';
        std::cout << "pareto-efficient: " << optional_text(in, report.pareto_efficient, "dominated by") << '\n';
        std::cout << "nonzero-welfare: " << optional_text(in, report.nonzero_social_welfare, "beaten by") << '\n';
        std::cout << "weighted-welfare-max: " << optional_text(in, report.weighted_welfare_maximizing, "beaten by")
                  << '\n';
        if (emit_graph_flag) print_graph_text(in, graph);
    }
    return freeable ? kOk : kNegative;
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm_text, const std::string& output,
              bool trace) {
    const Instance in = load_instance(instance_path);
    const auto algorithm = parse_algorithm(algorithm_text);
    if (!algorithm) throw Error(ErrorKind::Parse, "unknown algorithm '" + algorithm_text + "'");
    const AllocatorResult result = run_allocator(in, *algorithm);

    if (!output.empty()) {
        write_json_file(output, result.subsidy ? emit_outcome(in, {result.allocation, result.subsidy->payments})
                                               : emit_allocation(in, result.allocation));
    }
    if (g_json) {
        Json doc;
        doc["algorithm"] = result.algorithm;
        doc["allocation"] = emit_allocation(in, result.allocation)["bundles"];
        doc["envy_freeable"] = result.subsidy.has_value();
        if (result.subsidy) {
            doc["subsidies"] = emit_rationals(result.subsidy->payments);
            doc["max_subsidy"] = to_string(result.subsidy->max_payment());
        }
        doc["guarantee"] = result.guarantee ? Json(to_string(*result.guarantee)) : Json(nullptr);
        if (trace) {
            Json steps = Json::array();
            for (const auto& s : result.trace) {
                Json candidates = Json::array();
                for (AgentId a : s.candidates) candidates.push_back(agent_label(in, a));
                steps.push_back({{"item", in.item_labels[s.item]},
                                 {"candidates", candidates},
                                 {"chosen", agent_label(in, s.chosen)},
                                 {"reason", s.note}});
            }
            doc["trace"] = std::move(steps);
        }
        emit(doc);
    } else {
        if (trace) {
            for (const auto& s : result.trace) {
                std::string candidates;
                for (AgentId a : s.candidates) candidates += (candidates.empty() ? "" : ",") + agent_label(in, a);
                std::cout << "trace: " << in.item_labels[s.item] << " candidates {" << candidates << "} -> "
                          << agent_label(in, s.chosen) << " (" << s.note << ")\n";
            }
        }
        std::cout << "algorithm: " << result.algorithm << '\n';
        std::cout << "allocation: " << show(in, result.allocation) << '\n';
        if (result.subsidy) {
            std::cout << "subsidies: " << show(result.subsidy->payments) << '\n';
            std::cout << "max subsidy: " << to_string(result.subsidy->max_payment()) << '\n';
        } else {
            std::cout << "envy-freeable: false\n";
        }
        std::cout << "guarantee: " << (result.guarantee ? to_string(*result.guarantee) : std::string("none")) << '\n';
    }
    return result.subsidy ? kOk : kNegative;
}

int cmd_vcg(const Instance& in, const std::optional<Rational>& upfront, const std::string& output) {
    const VcgOutcome out = vcg_with_upfront_subsidy(in, upfront);
    if (!output.empty()) write_json_file(output, emit_outcome(in, out.outcome()));
    if (g_json) {
        Json doc = emit_outcome(in, out.outcome());
        doc["vcg_payments"] = emit_rationals(out.vcg_payments);
        doc["upfront_constant"] = to_string(out.upfront_constant);
        emit(doc);
    } else {
        std::cout << "allocation: " << show(in, out.allocation) << '\n';
        std::cout << "vcg payments q: " << show(out.vcg_payments) << '\n';
        std::cout << "up-front constant C: " << to_string(out.upfront_constant) << '\n';
        std::cout << "net payments: " << show(out.net_payments) << '\n';
    }
    return kOk;
}

int cmd_aw(const Instance& in, const std::string& output) {
    const AdjustedWinnerResult out = biased_weighted_adjusted_winner(in);
    const SubsidyVector subsidy = min_subsidies(in, out.allocation);
    const Outcome outcome{out.allocation, subsidy.payments};
    if (!output.empty()) write_json_file(output, emit_outcome(in, outcome));
    std::vector<std::string> order;
    for (ItemId g : out.order) order.push_back(in.item_labels[g]);
    if (g_json) {
        Json doc = emit_outcome(in, outcome);
        doc["order"] = order;
        doc["boundary"] = out.boundary;
        doc["contested"] = out.contested ? Json(in.item_labels[*out.contested]) : Json(nullptr);
        doc["split"] = to_string(out.split);
        emit(doc);
    } else {
        std::string joined;
        for (const auto& g : order) joined += (joined.empty() ? "" : " ") + g;
        std::cout << "order: " << joined << '\n';
        std::cout << "boundary: " << out.boundary << '\n';
        if (out.contested) {
            std::cout << "contested: " << in.item_labels[*out.contested] << " (agent 1 share " << to_string(out.split)
                      << ")\n";
        }
        std::cout << "allocation: " << show(in, out.allocation) << '\n';
        std::cout << "subsidies: " << show(subsidy.payments) << '\n';
    }
    return kOk;
}

int cmd_mef(const std::string& instance_path, const std::string& allocation_path, const std::string& budget_text,
            const std::string& output) {
    const Instance in = load_instance(instance_path);
    const Allocation alloc = load_allocation(in, allocation_path);
    const Rational budget = parse_rational(budget_text);
    const MefResult result = allocate_budget_mef(in, alloc, budget);
    const Outcome outcome{alloc, result.payments};
    const bool mef = is_mef(in, outcome);
    const bool wef = is_weighted_envy_free(in, outcome);
    if (!output.empty()) write_json_file(output, emit_outcome(in, outcome));
    if (g_json) {
        Json doc = emit_outcome(in, outcome);
        doc["regime"] = budget_regime_name(result.regime);
        doc["water_level"] = to_string(result.water_level);
        doc["mef"] = mef;
        doc["weighted_envy_free"] = wef;
        emit(doc);
    } else {
        std::cout << "regime: " << budget_regime_name(result.regime) << '\n';
        std::cout << "water level: " << to_string(result.water_level) << '\n';
        std::cout << "payments: " << show(result.payments) << '\n';
        std::cout << "MEF: " << (mef ? "true" : "false") << '\n';
        std::cout << "weighted envy-free: " << (wef ? "true" : "false") << '\n';
    }
    if (!mef) throw Error(ErrorKind::InternalInconsistency, "budget split is not MEF");
    return kOk;
}

int cmd_fixtures(bool all, std::vector<std::string> names, const std::string& emit_instance_path) {
    if (all) names = fixture_names();
    if (names.empty()) throw Error(ErrorKind::Parse, "give --all or at least one --name");
    if (!emit_instance_path.empty()) {
        if (names.size() != 1) throw Error(ErrorKind::Parse, "--emit-instance needs exactly one --name");
        write_json_file(emit_instance_path, emit_instance(fixture_instance(names.front())));
    }
    bool all_passed = true;
    Json reports = Json::array();
    for (const auto& name : names) {
        const FixtureReport report = verify_fixture(name);
        all_passed = all_passed && report.passed();
        if (g_json) {
            Json checks = Json::array();
            for (const auto& c : report.checks) {
                checks.push_back({{"description", c.description},
                                  {"expected", c.expected},
                                  {"actual", c.actual},
                                  {"passed", c.passed}});
            }
            reports.push_back({{"name", name}, {"claim", report.claim}, {"passed", report.passed()}, {"checks", checks}});
        } else {
            std::cout << (report.passed() ? "PASS " : "FAIL ") << name << ": " << report.claim << '\n';
            for (const auto& c : report.checks) {
                std::cout << "  " << (c.passed ? "ok   " : "FAIL ") << c.description << ": expected " << c.expected
                          << ", got " << c.actual << '\n';
            }
        }
    }
    if (g_json) emit(Json{{"fixtures", reports}, {"passed", all_passed}});
    return all_passed ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted envy-freeness with subsidies"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string instance_path, allocation_path, output, algorithm = "auto", budget, upfront, emit_path;
    bool emit_graph_flag = false, trace = false, all = false;
    std::vector<std::string> names;
    std::string mechanism;

    auto* check = app.add_subcommand("check", "Fairness report and minimum subsidies for an allocation");
    check->add_option("instance", instance_path)->required();
    check->add_option("allocation", allocation_path)->required();
    check->add_flag("--emit-graph", emit_graph_flag, "Print the weighted envy graph");

    auto* solve = app.add_subcommand("solve", "Run an allocator and compute its subsidies");
    solve->add_option("instance", instance_path)->required();
    solve->add_option("--algorithm", algorithm)
        ->check(CLI::IsMember({"auto", "all-to-max", "greedy", "alg1", "alg2", "alg3", "sw-max"}));
    solve->add_option("--output", output, "Write the outcome file here");
    solve->add_flag("--trace", trace, "Print one line per allocated item");

    auto* mech = app.add_subcommand("mechanism", "VCG with up-front subsidy, or the biased adjusted winner");
    mech->add_option("mechanism", mechanism)->required()->check(CLI::IsMember({"vcg", "aw"}));
    mech->add_option("instance", instance_path)->required();
    mech->add_option("--upfront", upfront, "Up-front constant C for vcg");
    mech->add_option("--output", output, "Write the outcome file here");

    auto* mef = app.add_subcommand("mef", "Spend a fixed budget so the outcome is monetarily envy-free");
    mef->add_option("instance", instance_path)->required();
    mef->add_option("allocation", allocation_path)->required();
    mef->add_option("--budget", budget)->required();
    mef->add_option("--output", output, "Write the outcome file here");

    auto* fixtures = app.add_subcommand("fixtures", "Verify the registered fixtures by enumeration");
    fixtures->add_flag("--all", all, "Verify every fixture");
    fixtures->add_option("--name", names, "Fixture to verify (repeatable)");
    fixtures->add_option("--emit-instance", emit_path, "Write the fixture's instance file here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    g_json = format == "json";

    try {
        if (*check) return cmd_check(instance_path, allocation_path, emit_graph_flag);
        if (*solve) return cmd_solve(instance_path, algorithm, output, trace);
        if (*mech) {
            const Instance in = load_instance(instance_path);
            if (mechanism == "vcg") {
                std::optional<Rational> c;
                if (!upfront.empty()) c = parse_rational(upfront);
                return cmd_vcg(in, c, output);
            }
            if (!upfront.empty()) throw Error(ErrorKind::Parse, "--upfront applies to vcg only");
            return cmd_aw(in, output);
        }
        if (*mef) return cmd_mef(instance_path, allocation_path, budget, output);
        if (*fixtures) return cmd_fixtures(all, names, emit_path);
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) std::cerr << error_kind_name(v.kind) << ": " << v.detail << '\n';
        return kInputError;
    } catch (const NotEnvyFreeableError& e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return e.is_input_error() ? kInputError : kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInputError;
}
