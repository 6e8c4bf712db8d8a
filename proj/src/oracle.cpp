// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace tawcet {

namespace {

// Prefer the larger value; on ties the non-strict bound.
void fold_max_upper(std::optional<Bound>& best, Bound candidate) {
    if (!best || *best < candidate) best = candidate;
}

struct LowerValue {
    std::int64_t value = 0;
    bool strict = false;
};

void fold_min_lower(std::optional<LowerValue>& best, LowerValue candidate) {
    if (!best || candidate.value < best->value ||
        (candidate.value == best->value && !candidate.strict)) {
        best = candidate;
    }
}

ExecTime lower_to_exec(const LowerValue& v) {
    return ExecTime::finite(v.strict ? Bound::lt(v.value) : Bound::le(v.value));
}

}  // namespace

OracleVerdict oracle_zone_explore(const TimedAutomaton& a, std::uint64_t max_steps) {
    if (a.delta_index < 1) {
        throw std::invalid_argument("oracle_zone_explore: observer clock not injected");
    }
    const int dim = a.dim();
    const int delta = a.delta_index;

    std::vector<EdgeContext> edge_ctx;
    edge_ctx.reserve(a.edges.size());
    for (const Edge& e : a.edges) edge_ctx.push_back(EdgeContext::make(a, e, dim));
    std::vector<std::vector<int>> out_edges(a.locations.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        out_edges[static_cast<std::size_t>(a.edges[i].src)].push_back(static_cast<int>(i));
    }
    std::vector<Dbm> inv_dbm;
    inv_dbm.reserve(a.locations.size());
    for (const Location& loc : a.locations) {
        inv_dbm.push_back(guard_to_dbm(loc.invariant, dim));
    }

    struct State {
        int location;
        Dbm zone;
        bool initial;
    };
    std::vector<State> states;
    std::deque<int> queue;
    std::vector<std::vector<int>> zones_at(a.locations.size());

    auto try_push = [&](int location, Dbm zone, bool initial) {
        for (int idx : zones_at[static_cast<std::size_t>(location)]) {
            if (includes(states[static_cast<std::size_t>(idx)].zone, zone)) return;
        }
        const int index = static_cast<int>(states.size());
        states.push_back(State{location, std::move(zone), initial});
        zones_at[static_cast<std::size_t>(location)].push_back(index);
        queue.push_back(index);
    };

    for (std::size_t l = 0; l < a.locations.size(); ++l) {
        if (!a.locations[l].initial) continue;
        Dbm z0 = canonicalize(intersect(Dbm::zero(dim), inv_dbm[l]));
        if (!is_consistent(z0)) continue;
        try_push(static_cast<int>(l), std::move(z0), true);
    }

    OracleVerdict verdict;
    std::optional<Bound> wcet_best;
    std::optional<LowerValue> bcet_best;
    bool infinite_wcet = false;

    while (!queue.empty()) {
        if (verdict.explored_states >= max_steps) {
            verdict.capped = true;
            break;
        }
        const int si = queue.front();
        queue.pop_front();
        ++verdict.explored_states;
        const int location = states[static_cast<std::size_t>(si)].location;
        const Dbm zone = states[static_cast<std::size_t>(si)].zone;

        std::vector<std::pair<int, Dbm>> successors;
        for (int ei : out_edges[static_cast<std::size_t>(location)]) {
            std::optional<Dbm> z =
                succ_exact(zone, edge_ctx[static_cast<std::size_t>(ei)], nullptr, nullptr);
            if (z) successors.emplace_back(ei, std::move(*z));
        }

        const bool marked_final = a.locations[static_cast<std::size_t>(location)].final;
        if (marked_final || successors.empty()) {
            fold_max_upper(wcet_best, upper_bound(zone, delta));
            const Bound cell = lower_bound(zone, delta);
            fold_min_lower(bcet_best, LowerValue{-cell.weight(), cell.strict()});
        }
        if (successors.empty() && !marked_final &&
            states[static_cast<std::size_t>(si)].initial) {
            Dbm delayed = canonicalize(
                intersect(up(zone), inv_dbm[static_cast<std::size_t>(location)]));
            if (is_consistent(delayed) && upper_bound(delayed, delta).is_infinite()) {
                infinite_wcet = true;
            }
        }
        for (auto& [ei, z] : successors) {
            if (upper_bound(z, delta).is_infinite()) infinite_wcet = true;
            try_push(a.edges[static_cast<std::size_t>(ei)].tgt, std::move(z), false);
        }
    }

    // Largest observer upper bound over explored states.
    Bound max_delta = Bound::zero();
    for (std::uint64_t i = 0; i < verdict.explored_states && i < states.size(); ++i) {
        const State& s = states[static_cast<std::size_t>(i)];
        if (max_delta < upper_bound(s.zone, delta)) max_delta = upper_bound(s.zone, delta);
    }
    verdict.max_delta_seen = max_delta;

    if (infinite_wcet) {
        verdict.wcet = ExecTime::infinite();
    } else if (verdict.capped) {
        verdict.wcet = ExecTime::unknown("exploration capped");
    } else if (wcet_best) {
        verdict.wcet = ExecTime::finite(*wcet_best);
    } else {
        verdict.wcet = ExecTime::unknown("no final state reachable");
    }
    if (verdict.capped) {
        verdict.bcet = ExecTime::unknown("exploration capped");
    } else if (bcet_best) {
        verdict.bcet = lower_to_exec(*bcet_best);
    } else {
        verdict.bcet = ExecTime::unknown("no final state reachable");
    }
    return verdict;
}

std::int64_t default_horizon(const TimedAutomaton& a) {
    return max_constant(a) * (static_cast<std::int64_t>(a.locations.size()) + 1) * 4;
}

namespace {

struct DiscreteState {
    int location;
    std::vector<std::int64_t> clocks;  // matrix indices 1..dim-1; observer exact
    bool initial = false;
};

bool atom_holds(const AtomicConstraint& atom, const std::vector<std::int64_t>& clocks) {
    const std::int64_t v = clocks[static_cast<std::size_t>(atom.clock) - 1];
    switch (atom.op) {
        case ConstraintOp::Less: return v < atom.constant;
        case ConstraintOp::LessEq: return v <= atom.constant;
        case ConstraintOp::Eq: return v == atom.constant;
        case ConstraintOp::GreaterEq: return v >= atom.constant;
        case ConstraintOp::Greater: return v > atom.constant;
    }
    return false;
}

bool guard_holds(const Guard& g, const std::vector<std::int64_t>& clocks) {
    return std::all_of(g.atoms.begin(), g.atoms.end(),
                       [&](const AtomicConstraint& atom) { return atom_holds(atom, clocks); });
}

}  // namespace

OracleVerdict oracle_discrete(const TimedAutomaton& a, std::int64_t horizon) {
    if (a.delta_index < 1) {
        throw std::invalid_argument("oracle_discrete: observer clock not injected");
    }
    for (const Location& loc : a.locations) {
        for (const AtomicConstraint& atom : loc.invariant.atoms) {
            if (atom.op == ConstraintOp::Less || atom.op == ConstraintOp::Greater) {
                throw std::invalid_argument(
                    "oracle_discrete: strict constraints are not supported");
            }
        }
    }
    for (const Edge& e : a.edges) {
        for (const AtomicConstraint& atom : e.guard.atoms) {
            if (atom.op == ConstraintOp::Less || atom.op == ConstraintOp::Greater) {
                throw std::invalid_argument(
                    "oracle_discrete: strict constraints are not supported");
            }
        }
    }

    const int n_clocks = a.dim() - 1;
    const int delta = a.delta_index;          // matrix index
    const std::size_t delta_pos = static_cast<std::size_t>(delta) - 1;
    const std::int64_t m = max_constant(a);
    const std::int64_t truncation = m + 1;

    auto truncate = [&](std::vector<std::int64_t> v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i == delta_pos) continue;
            v[i] = std::min(v[i], truncation);
        }
        return v;
    };
    auto delayed = [&](const std::vector<std::int64_t>& v, std::int64_t d) {
        std::vector<std::int64_t> out = v;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i == delta_pos) {
                out[i] += d;
            } else {
                out[i] = std::min(out[i] + d, truncation);
            }
        }
        return out;
    };
    // Largest delay admitted by the upper-bounding invariant atoms; -1 when
    // the invariant fails already, kUnbounded when nothing bounds it.
    constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();
    auto max_delay = [&](const Guard& inv, const std::vector<std::int64_t>& v) {
        std::int64_t best = kUnbounded;
        for (const AtomicConstraint& atom : inv.atoms) {
            const std::int64_t value = v[static_cast<std::size_t>(atom.clock) - 1];
            switch (atom.op) {
                case ConstraintOp::LessEq:
                    best = std::min(best, atom.constant - value);
                    break;
                case ConstraintOp::Eq:
                    best = std::min(best, value == atom.constant ? std::int64_t{0}
                                                                 : std::int64_t{-1});
                    break;
                case ConstraintOp::GreaterEq:
                    if (value < atom.constant) best = std::min(best, std::int64_t{-1});
                    break;
                default:
                    break;
            }
        }
        return best;
    };

    OracleVerdict verdict;
    std::optional<Bound> wcet_best;
    std::optional<LowerValue> bcet_best;
    bool infinite_wcet = false;

    std::map<std::pair<int, std::vector<std::int64_t>>, bool> visited;
    std::deque<DiscreteState> queue;

    for (std::size_t l = 0; l < a.locations.size(); ++l) {
        if (!a.locations[l].initial) continue;
        std::vector<std::int64_t> zeros(static_cast<std::size_t>(n_clocks), 0);
        if (!guard_holds(a.locations[l].invariant, zeros)) continue;
        visited[{static_cast<int>(l), zeros}] = true;
        queue.push_back(DiscreteState{static_cast<int>(l), std::move(zeros), true});
    }

    std::vector<std::vector<int>> out_edges(a.locations.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        out_edges[static_cast<std::size_t>(a.edges[i].src)].push_back(static_cast<int>(i));
    }

    while (!queue.empty()) {
        DiscreteState s = std::move(queue.front());
        queue.pop_front();
        ++verdict.explored_states;
        const std::int64_t entry_delta = s.clocks[delta_pos];
        if (verdict.max_delta_seen < Bound::le(entry_delta)) {
            verdict.max_delta_seen = Bound::le(entry_delta);
        }

        const Guard& inv = a.locations[static_cast<std::size_t>(s.location)].invariant;
        const std::int64_t invariant_cap = max_delay(inv, s.clocks);
        std::int64_t enumerate_to = invariant_cap;
        if (invariant_cap == kUnbounded) enumerate_to = truncation;
        if (entry_delta + enumerate_to > horizon) {
            verdict.capped = true;
            enumerate_to = std::max<std::int64_t>(horizon - entry_delta, -1);
        }

        bool any_successor = false;
        for (std::int64_t d = 0; d <= enumerate_to; ++d) {
            const std::vector<std::int64_t> now = delayed(s.clocks, d);
            for (int ei : out_edges[static_cast<std::size_t>(s.location)]) {
                const Edge& e = a.edges[static_cast<std::size_t>(ei)];
                if (!guard_holds(e.guard, now)) continue;
                std::vector<std::int64_t> next = now;
                for (int r : e.resets) next[static_cast<std::size_t>(r) - 1] = 0;
                if (!guard_holds(a.locations[static_cast<std::size_t>(e.tgt)].invariant,
                                 next)) {
                    continue;
                }
                any_successor = true;
                // Delay unbounded and the edge still open past every
                // constant: the observer enters the target unbounded.
                if (invariant_cap == kUnbounded && d == truncation) {
                    infinite_wcet = true;
                }
                next = truncate(std::move(next));
                auto key = std::make_pair(e.tgt, next);
                if (!visited.emplace(std::move(key), true).second) continue;
                queue.push_back(DiscreteState{e.tgt, std::move(next)});
            }
        }

        const bool marked_final = a.locations[static_cast<std::size_t>(s.location)].final;
        if (marked_final || !any_successor) {
            fold_max_upper(wcet_best, Bound::le(entry_delta));
            fold_min_lower(bcet_best, LowerValue{entry_delta, false});
        }
        if (!any_successor && !marked_final && s.initial && invariant_cap == kUnbounded) {
            // Deadlocked unbounded initial state.
            infinite_wcet = true;
        }
    }

    if (infinite_wcet) {
        verdict.wcet = ExecTime::infinite();
    } else if (verdict.capped) {
        verdict.wcet = ExecTime::unknown("horizon capped");
    } else if (wcet_best) {
        verdict.wcet = ExecTime::finite(*wcet_best);
    } else {
        verdict.wcet = ExecTime::unknown("no final state reachable");
    }
    if (verdict.capped) {
        verdict.bcet = ExecTime::unknown("horizon capped");
    } else if (bcet_best) {
        verdict.bcet = lower_to_exec(*bcet_best);
    } else {
        verdict.bcet = ExecTime::unknown("no final state reachable");
    }
    return verdict;
}

}  // namespace tawcet
