// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// report.hpp — analysis reports: one structured value with text and JSON
//              renderings that carry identical content
// ============================================================================

#ifndef TAWCET_REPORT_HPP
#define TAWCET_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "tawcet/engine.hpp"

namespace tawcet {

struct AnalysisReport {
    std::string model;
    std::string query;  // "wcet", "bcet" or "both"
    std::optional<SearchResult> wcet_run;
    std::optional<SearchResult> bcet_run;
    std::string witness_text;
    double wall_ms = 0.0;
};

/// Human-readable rendering, e.g. "WCET: 12 (<=)".
std::string render_text(const AnalysisReport& report);

/// Machine-readable rendering with a fixed key set and key order:
/// model, query, wcet {kind, value, strict}, bcet {...}, witness, stats,
/// wall_ms. Values match the text rendering exactly.
std::string render_json(const AnalysisReport& report);

}  // namespace tawcet

#endif  // TAWCET_REPORT_HPP
