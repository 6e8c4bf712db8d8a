// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// ta.hpp — timed automata and networks: model types, validation,
//          extrapolation-constant extraction, observer-clock injection,
//          synchronous product
// ============================================================================

#ifndef TAWCET_TA_HPP
#define TAWCET_TA_HPP

#include <optional>
#include <string>
#include <vector>

#include "tawcet/extrapolation.hpp"

namespace tawcet {

/// Name reserved for the observer clock appended by add_observer_clock.
inline constexpr const char* kObserverClockName = "delta";

enum class ConstraintOp { Less, LessEq, Eq, GreaterEq, Greater };

std::string to_string(ConstraintOp op);

/// A single clock-versus-constant comparison. `clock` is the matrix index
/// (1-based; 0 is the reference clock and never appears here). Constants
/// are natural numbers. Clock-difference (diagonal) constraints are not
/// representable by construction.
struct AtomicConstraint {
    int clock = 0;
    ConstraintOp op = ConstraintOp::LessEq;
    std::int64_t constant = 0;

    friend bool operator==(const AtomicConstraint&, const AtomicConstraint&) = default;
};

/// Conjunction of atomic constraints. Empty means `true`.
struct Guard {
    std::vector<AtomicConstraint> atoms;

    bool empty() const { return atoms.empty(); }
    friend bool operator==(const Guard&, const Guard&) = default;
};

struct Location {
    std::string name;
    Guard invariant;
    bool initial = false;
    bool final = false;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Binary handshake label: channel name plus direction (emit `c!` pairs
/// with receive `c?`).
struct Sync {
    std::string channel;
    bool emit = false;

    friend bool operator==(const Sync&, const Sync&) = default;
};

struct Edge {
    int src = 0;
    int tgt = 0;
    std::string label;
    Guard guard;
    std::vector<int> resets;
    std::optional<Sync> sync;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A diagonal-free timed automaton. Clock with matrix index i is named
/// clock_names[i-1]; matrix index 0 is the implicit reference clock.
/// `delta_index` is the observer clock's matrix index, or -1 before
/// injection.
struct TimedAutomaton {
    std::string name;
    std::vector<std::string> clock_names;
    std::vector<Location> locations;
    std::vector<Edge> edges;
    int delta_index = -1;

    /// Matrix dimension: clocks plus the reference clock.
    int dim() const { return static_cast<int>(clock_names.size()) + 1; }

    /// Matrix index of a named clock, or -1.
    int clock_index(const std::string& name) const;

    int location_index(const std::string& name) const;
};

struct Network {
    std::string name;
    std::vector<TimedAutomaton> components;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Structural validation: natural constants, consistent clock and location
/// indices, no resets of the observer clock, at least one initial location.
/// Lower-bound location invariants are reported as warnings.
ValidationReport validate(const TimedAutomaton& a);

/// Validates every component plus network-level channel pairing: each
/// channel used must have both an emitting and a receiving edge.
ValidationReport validate(const Network& n);

/// Largest constant in guards and invariants, ignoring any constraint on
/// the observer clock; 0 when there are none.
std::int64_t max_constant(const TimedAutomaton& a);

struct LuBounds {
    /// Indexed by matrix index; kNoConstant where a clock is never compared
    /// from the given side. Entry 0 (reference clock) is 0.
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
};

/// Per-clock maximal lower/upper comparison constants; `=` feeds both.
LuBounds lu_bounds(const TimedAutomaton& a);

/// Assembles the extrapolation constants for an automaton: global and
/// per-clock maxima from guards and invariants, the observer index as
/// recorded on the automaton. Unconstrained clocks get per-clock maximum 0.
BoundsContext bounds_context(const TimedAutomaton& a);

/// Appends the observer clock. The result's guards, invariants and resets
/// never mention it. Rejects automata that already declare a clock with
/// the reserved name.
TimedAutomaton add_observer_clock(TimedAutomaton a);

/// Synchronous product of the network. Locations are tuples; unsynchronized
/// edges interleave; an emitting edge pairs with each matching receiving
/// edge of another component into a joint edge with conjoined guard and
/// united reset set. Invariants conjoin. Only the part reachable from the
/// all-initial tuple is built. A product location is final iff all
/// components are final, or — when `final_component` names a component —
/// iff that component is final. Throws std::invalid_argument on invalid
/// networks or unmatched channel directions.
TimedAutomaton compose(const Network& n,
                       const std::optional<std::string>& final_component = {});

}  // namespace tawcet

#endif  // TAWCET_TA_HPP
