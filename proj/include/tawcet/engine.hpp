// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// engine.hpp — depth-first symbolic search with WAIT/PASSED, DFS coloring,
//              fixed-point detection of time-divergent and zeno cycles, and
//              WCET/BCET extraction from the observer clock
// ============================================================================

#ifndef TAWCET_ENGINE_HPP
#define TAWCET_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tawcet/successor.hpp"
#include "tawcet/ta.hpp"

namespace tawcet {

/// Node of the explored zone graph: a location, its partially extrapolated
/// zone (observer included), and the DFS color — 0 unvisited, 1 being
/// explored (on the current path), 2 finished.
struct SymbolicState {
    int location = 0;
    Dbm zone = Dbm::zero(1);
    int sts = 0;
};

/// Analysis outcome for one of WCET/BCET. Finite bounds carry strictness:
/// a strict WCET bound is a supremum that no run attains; a strict BCET
/// bound is an unattained infimum. Unknown carries a diagnostic note.
struct ExecTime {
    enum class Kind { Finite, Infinite, Unknown };

    Kind kind = Kind::Unknown;
    Bound bound = Bound::infinity();
    std::string note;

    static ExecTime finite(Bound b) { return {Kind::Finite, b, ""}; }
    static ExecTime infinite() { return {Kind::Infinite, Bound::infinity(), ""}; }
    static ExecTime unknown(std::string why) {
        return {Kind::Unknown, Bound::infinity(), std::move(why)};
    }

    bool is(Kind k) const { return kind == k; }
    std::string to_string() const;
};

/// Why an analysis concluded the execution time is infinite.
struct Witness {
    enum class Kind { None, UnboundedLocation, DivergentCycle };

    Kind kind = Kind::None;
    /// Edge indices (into the automaton's edge list) from the initial
    /// location to the anchor of the verdict.
    std::vector<int> path_edges;
    /// For DivergentCycle: the closed edge sequence whose successor map
    /// reaches a fixed point of the automaton-clock part while the observer
    /// keeps growing.
    std::vector<int> cycle_edges;
    /// Location at which the verdict fired.
    int location = -1;

    std::string describe(const TimedAutomaton& a) const;
};

struct SearchStats {
    std::uint64_t explored_states = 0;
    std::uint64_t generated_states = 0;
    OpCounters ops;
};

/// Explored zone graph, recorded on request for DOT export.
struct ZoneGraph {
    struct Node {
        int location = 0;
        std::string zone_text;
        int sts = 0;
    };
    struct Arc {
        int from = 0;
        int to = 0;
        std::string label;
        bool on_witness_cycle = false;
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;
};

struct SearchResult {
    std::optional<ExecTime> wcet;
    std::optional<ExecTime> bcet;
    Witness witness;
    SearchStats stats;
    std::optional<ZoneGraph> graph;
};

struct AnalysisOptions {
    /// Hard cap on stored symbolic states; exceeding it throws (it never
    /// fires on terminating analyses).
    std::uint64_t max_states = 1'000'000;
    bool record_graph = false;
};

/// Runs the symbolic search and extracts the worst-case execution time:
/// the maximum over final states of the observer's upper bound, infinity
/// when a reachable location leaves the observer unbounded or a
/// time-divergent cycle reaches its fixed point. Final states are
/// locations marked final plus states with no enabled successor.
/// Requires a valid automaton with the observer clock injected.
SearchResult analyze_wcet(const TimedAutomaton& a, const AnalysisOptions& opts = {});

/// Same search, extracting the best-case execution time: the minimum over
/// final states of the observer's lower bound. Divergent and zeno repeats
/// are pruned rather than reported. Unknown when no final state is
/// reachable.
SearchResult analyze_bcet(const TimedAutomaton& a, const AnalysisOptions& opts = {});

enum class CycleVerdict { None, TimeDivergent, Zeno };

/// Fixed-point test of a freshly generated state against already passed
/// states: TimeDivergent when some being-explored state at the same
/// location has a cell-exact equal automaton-clock part and a strictly
/// smaller observer upper bound; Zeno when the full zone repeats a
/// being-explored state; None otherwise.
CycleVerdict detect_cycle_verdict(const SymbolicState& fresh,
                                  std::span<const SymbolicState> passed,
                                  int delta_index);

}  // namespace tawcet

#endif  // TAWCET_ENGINE_HPP
