// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/report.hpp"

#include <sstream>

#include <json.hpp>

namespace tawcet {

namespace {

std::string format_bound(const ExecTime& t, bool lower_side) {
    switch (t.kind) {
        case ExecTime::Kind::Finite: {
            const char* rel = lower_side ? (t.bound.strict() ? "(>)" : "(>=)")
                                         : (t.bound.strict() ? "(<)" : "(<=)");
            return std::to_string(t.bound.weight()) + ' ' + rel;
        }
        case ExecTime::Kind::Infinite:
            return "infinite";
        case ExecTime::Kind::Unknown:
            return t.note.empty() ? "unknown" : "unknown (" + t.note + ")";
    }
    return "?";
}

nlohmann::ordered_json exec_json(const std::optional<ExecTime>& t) {
    nlohmann::ordered_json out;
    if (!t) {
        out["kind"] = "not-run";
        return out;
    }
    switch (t->kind) {
        case ExecTime::Kind::Finite:
            out["kind"] = "finite";
            out["value"] = t->bound.weight();
            out["strict"] = t->bound.strict();
            break;
        case ExecTime::Kind::Infinite:
            out["kind"] = "infinite";
            break;
        case ExecTime::Kind::Unknown:
            out["kind"] = "unknown";
            out["note"] = t->note;
            break;
    }
    return out;
}

nlohmann::ordered_json stats_json(const SearchStats& stats) {
    nlohmann::ordered_json out;
    out["explored_states"] = stats.explored_states;
    out["generated_states"] = stats.generated_states;
    nlohmann::ordered_json ops;
    ops["delays"] = stats.ops.delays;
    ops["intersections"] = stats.ops.intersections;
    ops["canonicalizations"] = stats.ops.canonicalizations;
    ops["consistency_checks"] = stats.ops.consistency_checks;
    ops["resets"] = stats.ops.resets;
    ops["extrapolations"] = stats.ops.extrapolations;
    ops["fixed_point_tests"] = stats.ops.fixed_point_tests;
    ops["bound_reads"] = stats.ops.bound_reads;
    out["ops"] = ops;
    return out;
}

}  // namespace

std::string render_text(const AnalysisReport& report) {
    std::ostringstream out;
    out << "model: " << report.model << '\n';
    if (report.wcet_run && report.wcet_run->wcet) {
        out << "WCET: " << format_bound(*report.wcet_run->wcet, false) << '\n';
    }
    if (report.bcet_run && report.bcet_run->bcet) {
        out << "BCET: " << format_bound(*report.bcet_run->bcet, true) << '\n';
    }
    if (!report.witness_text.empty() && report.witness_text != "none") {
        out << "witness: " << report.witness_text << '\n';
    }
    const SearchStats* stats = nullptr;
    if (report.wcet_run) stats = &report.wcet_run->stats;
    else if (report.bcet_run) stats = &report.bcet_run->stats;
    if (stats) {
        out << "explored states: " << stats->explored_states << '\n';
    }
    return out.str();
}

std::string render_json(const AnalysisReport& report) {
    nlohmann::ordered_json out;
    out["model"] = report.model;
    out["query"] = report.query;
    out["wcet"] = exec_json(report.wcet_run ? report.wcet_run->wcet : std::nullopt);
    out["bcet"] = exec_json(report.bcet_run ? report.bcet_run->bcet : std::nullopt);
    out["witness"] = report.witness_text;
    if (report.wcet_run) {
        out["stats"] = stats_json(report.wcet_run->stats);
    } else if (report.bcet_run) {
        out["stats"] = stats_json(report.bcet_run->stats);
    } else {
        out["stats"] = nlohmann::ordered_json::object();
    }
    out["wall_ms"] = report.wall_ms;
    return out.dump(2) + "\n";
}

}  // namespace tawcet
