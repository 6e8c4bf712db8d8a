// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "support/random_models.hpp"

#include <algorithm>

namespace tawcet::testing {

namespace {

ConstraintOp random_op(std::mt19937& rng, bool closed_only, bool upper_side) {
    std::uniform_int_distribution<int> pick(0, 99);
    const int roll = pick(rng);
    if (closed_only) {
        if (roll < 45) return upper_side ? ConstraintOp::LessEq : ConstraintOp::GreaterEq;
        if (roll < 55) return ConstraintOp::Eq;
        return upper_side ? ConstraintOp::GreaterEq : ConstraintOp::LessEq;
    }
    switch (roll % 5) {
        case 0: return ConstraintOp::Less;
        case 1: return ConstraintOp::LessEq;
        case 2: return ConstraintOp::Eq;
        case 3: return ConstraintOp::GreaterEq;
        default: return ConstraintOp::Greater;
    }
}

}  // namespace

TimedAutomaton random_automaton(std::mt19937& rng, const RandomModelConfig& config) {
    std::uniform_int_distribution<int> loc_dist(2, config.max_locations);
    std::uniform_int_distribution<int> clock_dist(1, config.max_clocks);
    std::uniform_int_distribution<std::int64_t> const_dist(0, config.max_constant);
    std::uniform_int_distribution<int> percent(0, 99);

    TimedAutomaton a;
    a.name = "random";
    const int n_locations = loc_dist(rng);
    // A finite cycle needs both a budget clock and a lap clock.
    const int n_clocks = std::max(clock_dist(rng), config.with_cycle ? 2 : 1);
    for (int c = 0; c < n_clocks; ++c) a.clock_names.push_back("x" + std::to_string(c));
    std::uniform_int_distribution<int> clock_pick(1, n_clocks);

    for (int l = 0; l < n_locations; ++l) {
        Location loc;
        loc.name = "l" + std::to_string(l);
        loc.initial = (l == 0);
        loc.final = (l == n_locations - 1) || percent(rng) < 25;
        if (config.bounded_everywhere || percent(rng) < 70) {
            AtomicConstraint atom;
            atom.clock = clock_pick(rng);
            atom.op = ConstraintOp::LessEq;
            atom.constant = const_dist(rng);
            loc.invariant.atoms.push_back(atom);
        }
        a.locations.push_back(std::move(loc));
    }

    auto random_guard = [&](Edge& e) {
        const int n_atoms = percent(rng) < 60 ? 1 : (percent(rng) < 30 ? 2 : 0);
        for (int i = 0; i < n_atoms; ++i) {
            AtomicConstraint atom;
            atom.clock = clock_pick(rng);
            atom.op = random_op(rng, config.closed_only, percent(rng) < 50);
            atom.constant = const_dist(rng);
            e.guard.atoms.push_back(atom);
        }
        for (int c = 1; c <= n_clocks; ++c) {
            if (percent(rng) < 25) e.resets.push_back(c);
        }
    };

    // Forward chain plus random extra forward edges keeps the graph acyclic
    // and every location reachable.
    for (int l = 0; l + 1 < n_locations; ++l) {
        Edge e;
        e.src = l;
        e.tgt = l + 1;
        random_guard(e);
        a.edges.push_back(std::move(e));
    }
    for (int src = 0; src < n_locations; ++src) {
        for (int tgt = src + 1; tgt < n_locations; ++tgt) {
            if (tgt == src + 1 || percent(rng) >= 25) continue;
            Edge e;
            e.src = src;
            e.tgt = tgt;
            random_guard(e);
            a.edges.push_back(std::move(e));
        }
    }

    if (config.with_cycle) {
        // One backward edge. Its lap count is bounded by a clock that is
        // never reset along the cycle, and each lap burns at least one time
        // unit of a clock reset on the back edge.
        std::uniform_int_distribution<int> head_dist(0, n_locations - 2);
        const int head = head_dist(rng);
        std::uniform_int_distribution<int> tail_dist(head, n_locations - 1);
        const int tail = tail_dist(rng);
        const int budget_clock = clock_pick(rng);
        const int lap_clock = budget_clock == n_clocks ? 1 : budget_clock + 1;

        for (Edge& e : a.edges) {
            if (e.src >= head && e.src <= tail && e.tgt >= head && e.tgt <= tail) {
                e.resets.erase(std::remove(e.resets.begin(), e.resets.end(), budget_clock),
                               e.resets.end());
            }
        }
        Edge back;
        back.src = tail;
        back.tgt = head;
        back.guard.atoms.push_back(
            AtomicConstraint{budget_clock, ConstraintOp::LessEq, const_dist(rng)});
        if (n_clocks > 1) {
            back.guard.atoms.push_back(
                AtomicConstraint{lap_clock, ConstraintOp::GreaterEq, 1});
            back.resets.push_back(lap_clock);
        } else {
            // Single clock: the budget clock itself must pass one unit.
            back.guard.atoms.push_back(
                AtomicConstraint{budget_clock, ConstraintOp::GreaterEq, 1});
        }
        a.edges.push_back(std::move(back));
    }
    return a;
}

}  // namespace tawcet::testing
