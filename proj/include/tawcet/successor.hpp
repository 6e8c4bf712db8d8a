// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// successor.hpp — zone successor computation: the eight-step pipeline in an
//                 exact (reference) variant and the partial-extrapolation
//                 (engine) variant, plus whole-cycle successors
// ============================================================================
//
// Both variants follow the same step order so intermediate matrices can be
// compared: delay, ∧ source invariant, ∧ guard, canonicalize + consistency,
// reset, ∧ target invariant, canonicalize (+ consistency), and — in the
// partial variant only — extrapolate, repair the changed cells, re-check
// consistency. The exact variant uses full shortest-path canonicalization
// and never extrapolates; the partial variant uses the split
// canonicalization throughout and the observer clock's row and column are
// never widened.

#ifndef TAWCET_SUCCESSOR_HPP
#define TAWCET_SUCCESSOR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tawcet/extrapolation.hpp"
#include "tawcet/ta.hpp"

namespace tawcet {

/// Encodes a conjunction of clock-versus-constant atoms as an intersection
/// mask: every cell (inf, <) except the rows/columns named by the atoms.
/// `=` expands into the pair of one-sided bounds. Atoms repeated on the
/// same cell combine by the intersection minimum.
Dbm guard_to_dbm(const Guard& g, int dim);

/// Tally of elementary matrix operations, one counter per operation class.
struct OpCounters {
    std::uint64_t delays = 0;
    std::uint64_t intersections = 0;
    std::uint64_t canonicalizations = 0;
    std::uint64_t consistency_checks = 0;
    std::uint64_t resets = 0;
    std::uint64_t extrapolations = 0;
    std::uint64_t inclusion_checks = 0;
    std::uint64_t fixed_point_tests = 0;
    std::uint64_t bound_reads = 0;

    OpCounters& operator+=(const OpCounters& other);
};

/// Intermediate matrices of one successor computation, in step order.
/// Consistency failures truncate the list after the failing step.
struct SuccTrace {
    std::vector<Dbm> steps;
};

/// Pre-encoded edge data so guard conversion happens once per edge.
struct EdgeContext {
    Edge edge;
    Dbm guard_dbm;
    Dbm inv_src_dbm;
    Dbm inv_tgt_dbm;

    static EdgeContext make(const TimedAutomaton& a, const Edge& e, int dim);
};

/// Exact successor: full canonicalization, no extrapolation. Empty
/// (std::nullopt) when a consistency check fails. Input must be canonical
/// and consistent.
std::optional<Dbm> succ_exact(const Dbm& zone, const EdgeContext& e,
                              OpCounters* counters = nullptr,
                              SuccTrace* trace = nullptr);

/// Partial-extrapolation successor: every canonicalization is the split
/// pass, and widening at the target touches only cells outside the
/// observer clock's row and column.
std::optional<Dbm> succ_partial(const Dbm& zone, const EdgeContext& e,
                                const BoundsContext& ctx,
                                OpCounters* counters = nullptr,
                                SuccTrace* trace = nullptr);

/// Convenience overloads that build the edge encoding on the fly.
std::optional<Dbm> succ_exact(const Dbm& zone, const TimedAutomaton& a, const Edge& e,
                              OpCounters* counters = nullptr, SuccTrace* trace = nullptr);
std::optional<Dbm> succ_partial(const Dbm& zone, const TimedAutomaton& a, const Edge& e,
                                const BoundsContext& ctx, OpCounters* counters = nullptr,
                                SuccTrace* trace = nullptr);

/// Left fold of succ_partial along a cycle's edge sequence. Rejects
/// sequences that do not close (target of each edge must be the source of
/// the next, wrapping around). Empty when any step empties.
std::optional<Dbm> succ_cycle(const Dbm& zone, const TimedAutomaton& a,
                              std::span<const Edge> cycle, const BoundsContext& ctx,
                              OpCounters* counters = nullptr);

}  // namespace tawcet

#endif  // TAWCET_SUCCESSOR_HPP
