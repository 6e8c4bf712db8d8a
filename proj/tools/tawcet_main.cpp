// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// tawcet_main.cpp — command-line front end: analyze, validate, graph,
//                   oracle
// ============================================================================
//
// Exit codes: 0 success, 1 parse/file error, 2 model validation error,
// 3 internal invariant violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tawcet/engine.hpp"
#include "tawcet/format.hpp"
#include "tawcet/oracle.hpp"
#include "tawcet/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitModel = 2;
constexpr int kExitInternal = 3;

struct CommandError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandError{kExitParse, "cannot open file: " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

tawcet::Network load(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return tawcet::parse_model(text);
    } catch (const tawcet::ParseError& e) {
        throw CommandError{kExitParse, path + ": " + e.what()};
    }
}

// Parse, validate, compose and inject the observer clock.
tawcet::TimedAutomaton prepare(const std::string& path,
                               const std::optional<std::string>& component) {
    tawcet::Network net = load(path);
    tawcet::ValidationReport report = tawcet::validate(net);
    if (!report.ok()) {
        throw CommandError{kExitModel, path + ": invalid model\n" + report.to_string()};
    }
    try {
        tawcet::TimedAutomaton a = tawcet::compose(net, component);
        return tawcet::add_observer_clock(std::move(a));
    } catch (const std::invalid_argument& e) {
        throw CommandError{kExitModel, path + ": " + e.what()};
    }
}

int cmd_analyze(const std::string& path, const std::string& query,
                const std::optional<std::string>& component, const std::string& format,
                std::uint64_t max_states) {
    tawcet::TimedAutomaton a = prepare(path, component);
    tawcet::AnalysisOptions opts;
    opts.max_states = max_states;

    tawcet::AnalysisReport report;
    report.model = a.name;
    report.query = query;
    const auto start = std::chrono::steady_clock::now();
    if (query == "wcet" || query == "both") {
        report.wcet_run = tawcet::analyze_wcet(a, opts);
        report.witness_text = report.wcet_run->witness.describe(a);
    }
    if (query == "bcet" || query == "both") {
        report.bcet_run = tawcet::analyze_bcet(a, opts);
    }
    const auto end = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
    if (report.witness_text.empty()) report.witness_text = "none";

    std::cout << (format == "json" ? tawcet::render_json(report)
                                   : tawcet::render_text(report));
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    tawcet::Network net = load(path);
    tawcet::ValidationReport report = tawcet::validate(net);
    std::cout << (report.ok() ? "ok\n" : report.to_string());
    return report.ok() ? kExitOk : kExitModel;
}

int cmd_graph(const std::string& path, const std::optional<std::string>& component,
              const std::string& dot_out) {
    tawcet::TimedAutomaton a = prepare(path, component);
    tawcet::AnalysisOptions opts;
    opts.record_graph = true;
    tawcet::SearchResult result = tawcet::analyze_wcet(a, opts);
    const std::string dot = tawcet::to_dot(*result.graph, a);
    if (dot_out == "-") {
        std::cout << dot;
    } else {
        std::ofstream out(dot_out, std::ios::binary);
        if (!out) throw CommandError{kExitParse, "cannot write file: " + dot_out};
        out << dot;
    }
    return kExitOk;
}

// Unknown verdicts (capped, skipped) are consistent with anything; two
// settled verdicts must agree in kind and, when finite, in bound.
bool consistent(const tawcet::ExecTime& a, const tawcet::ExecTime& b) {
    using Kind = tawcet::ExecTime::Kind;
    if (a.kind == Kind::Unknown || b.kind == Kind::Unknown) return true;
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Finite) return a.bound == b.bound;
    return true;
}

int cmd_oracle(const std::string& path, const std::optional<std::string>& component,
               std::uint64_t max_steps, std::int64_t horizon) {
    tawcet::TimedAutomaton a = prepare(path, component);

    tawcet::SearchResult wcet_run = tawcet::analyze_wcet(a);
    tawcet::SearchResult bcet_run = tawcet::analyze_bcet(a);
    tawcet::OracleVerdict zone = tawcet::oracle_zone_explore(a, max_steps);

    std::optional<tawcet::OracleVerdict> discrete;
    std::string discrete_note;
    try {
        const std::int64_t h = horizon > 0 ? horizon : tawcet::default_horizon(a);
        discrete = tawcet::oracle_discrete(a, h);
    } catch (const std::invalid_argument& e) {
        discrete_note = e.what();
    }

    std::cout << "engine:        wcet=" << wcet_run.wcet->to_string()
              << " bcet=" << bcet_run.bcet->to_string() << '\n';
    std::cout << "zone oracle:   wcet=" << zone.wcet.to_string()
              << " bcet=" << zone.bcet.to_string() << (zone.capped ? " (capped)" : "")
              << '\n';
    if (discrete) {
        std::cout << "discrete:      wcet=" << discrete->wcet.to_string()
                  << " bcet=" << discrete->bcet.to_string()
                  << (discrete->capped ? " (capped)" : "") << '\n';
    } else {
        std::cout << "discrete:      skipped (" << discrete_note << ")\n";
    }

    bool agree = consistent(*wcet_run.wcet, zone.wcet) &&
                 consistent(*bcet_run.bcet, zone.bcet);
    if (discrete) {
        agree = agree && consistent(*wcet_run.wcet, discrete->wcet) &&
                consistent(*bcet_run.bcet, discrete->bcet) &&
                consistent(zone.wcet, discrete->wcet) &&
                consistent(zone.bcet, discrete->bcet);
    }
    std::cout << "agreement: " << (agree ? "yes" : "NO") << '\n';
    return agree ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zone-based WCET/BCET analysis of diagonal-free timed automata"};
    app.require_subcommand(1);

    std::string file;
    std::string query = "wcet";
    std::string format = "text";
    std::string dot_out = "-";
    std::optional<std::string> component;
    std::uint64_t max_states = 1'000'000;
    std::uint64_t max_steps = 10'000;
    std::int64_t horizon = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "compute WCET/BCET of a model");
    analyze->add_option("file", file, "model file (.ta)")->required();
    analyze->add_option("--query", query, "wcet|bcet|both")
        ->check(CLI::IsMember({"wcet", "bcet", "both"}));
    analyze->add_option("--component", component,
                        "network component whose final locations end a run");
    analyze->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--max-states", max_states, "symbolic state cap");

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a model file");
    validate_cmd->add_option("file", file, "model file (.ta)")->required();

    CLI::App* graph = app.add_subcommand("graph", "export the explored zone graph as DOT");
    graph->add_option("file", file, "model file (.ta)")->required();
    graph->add_option("--dot", dot_out, "output path, or - for stdout");
    graph->add_option("--component", component,
                      "network component whose final locations end a run");

    CLI::App* oracle = app.add_subcommand("oracle", "cross-check engine against oracles");
    oracle->add_option("file", file, "model file (.ta)")->required();
    oracle->add_option("--max-steps", max_steps, "zone oracle state cap");
    oracle->add_option("--horizon", horizon, "discrete oracle horizon (0 = default)");
    oracle->add_option("--component", component,
                       "network component whose final locations end a run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) {
            return cmd_analyze(file, query, component, format, max_states);
        }
        if (app.got_subcommand(validate_cmd)) {
            return cmd_validate(file);
        }
        if (app.got_subcommand(graph)) {
            return cmd_graph(file, component, dot_out);
        }
        if (app.got_subcommand(oracle)) {
            return cmd_oracle(file, component, max_steps, horizon);
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const tawcet::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitModel;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
