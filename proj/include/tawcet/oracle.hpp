// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// oracle.hpp — independent reference analyses: exact (non-extrapolated)
//              zone exploration with an iteration cap, and exhaustive
//              integer-delay simulation for closed automata
// ============================================================================
//
// Neither oracle touches the partial-extrapolation machinery; they exist to
// derive and cross-check expected results for the engine.

#ifndef TAWCET_ORACLE_HPP
#define TAWCET_ORACLE_HPP

#include <cstdint>

#include "tawcet/engine.hpp"
#include "tawcet/ta.hpp"

namespace tawcet {

struct OracleVerdict {
    ExecTime bcet = ExecTime::unknown("not run");
    ExecTime wcet = ExecTime::unknown("not run");
    /// True when the exploration hit its cap before closing; capped runs
    /// never claim a finite result beyond what they saw.
    bool capped = false;
    /// Largest observer upper bound seen across explored states.
    Bound max_delta_seen = Bound::zero();
    std::uint64_t explored_states = 0;
};

/// Breadth-first exact zone exploration (full canonicalization, no
/// extrapolation), closed under zone inclusion per location. Exact
/// BCET/WCET when the graph closes before `max_steps` explored states;
/// otherwise capped with the largest observer bound observed. An observer
/// that comes out unbounded at a reachable state settles WCET = infinite
/// even on capped runs.
OracleVerdict oracle_zone_explore(const TimedAutomaton& a,
                                  std::uint64_t max_steps = 10'000);

/// Exhaustive search over integer delays, valid for closed-constraint
/// automata (throws std::invalid_argument on strict guards or invariants).
/// Exact within `horizon` accumulated time units; capped beyond.
OracleVerdict oracle_discrete(const TimedAutomaton& a, std::int64_t horizon);

/// Default simulation horizon: M * (|L| + 1) * 4.
std::int64_t default_horizon(const TimedAutomaton& a);

}  // namespace tawcet

#endif  // TAWCET_ORACLE_HPP
