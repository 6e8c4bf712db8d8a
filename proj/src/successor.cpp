// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/successor.hpp"

#include <stdexcept>

namespace tawcet {

Dbm guard_to_dbm(const Guard& g, int dim) {
    Dbm out = Dbm::top(dim);
    auto tighten = [&out](int i, int j, Bound b) {
        out.set(i, j, intersect_min(out.at(i, j), b));
    };
    for (const AtomicConstraint& atom : g.atoms) {
        if (atom.clock < 1 || atom.clock >= dim) {
            throw std::invalid_argument("guard_to_dbm: clock index out of range");
        }
        switch (atom.op) {
            case ConstraintOp::Less:
                tighten(atom.clock, 0, Bound::lt(atom.constant));
                break;
            case ConstraintOp::LessEq:
                tighten(atom.clock, 0, Bound::le(atom.constant));
                break;
            case ConstraintOp::GreaterEq:
                tighten(0, atom.clock, Bound::le(-atom.constant));
                break;
            case ConstraintOp::Greater:
                tighten(0, atom.clock, Bound::lt(-atom.constant));
                break;
            case ConstraintOp::Eq:
                tighten(atom.clock, 0, Bound::le(atom.constant));
                tighten(0, atom.clock, Bound::le(-atom.constant));
                break;
        }
    }
    return out;
}

OpCounters& OpCounters::operator+=(const OpCounters& other) {
    delays += other.delays;
    intersections += other.intersections;
    canonicalizations += other.canonicalizations;
    consistency_checks += other.consistency_checks;
    resets += other.resets;
    extrapolations += other.extrapolations;
    inclusion_checks += other.inclusion_checks;
    fixed_point_tests += other.fixed_point_tests;
    bound_reads += other.bound_reads;
    return *this;
}

EdgeContext EdgeContext::make(const TimedAutomaton& a, const Edge& e, int dim) {
    const auto src = static_cast<std::size_t>(e.src);
    const auto tgt = static_cast<std::size_t>(e.tgt);
    if (src >= a.locations.size() || tgt >= a.locations.size()) {
        throw std::invalid_argument("EdgeContext: edge endpoint out of range");
    }
    return EdgeContext{e, guard_to_dbm(e.guard, dim),
                       guard_to_dbm(a.locations[src].invariant, dim),
                       guard_to_dbm(a.locations[tgt].invariant, dim)};
}

namespace {

struct Steps {
    OpCounters* counters;
    SuccTrace* trace;

    void record(const Dbm& d) {
        if (trace) trace->steps.push_back(d);
    }
    void count(std::uint64_t OpCounters::* field) {
        if (counters) ++(counters->*field);
    }
};

template <typename Canon>
std::optional<Dbm> run_pipeline(const Dbm& zone, const EdgeContext& e, Canon&& canon,
                                Steps s) {
    // 1: delay
    Dbm t = up(zone);
    s.count(&OpCounters::delays);
    s.record(t);
    // 2: source invariant
    t = intersect(t, e.inv_src_dbm);
    s.count(&OpCounters::intersections);
    s.record(t);
    // 3: guard
    t = intersect(t, e.guard_dbm);
    s.count(&OpCounters::intersections);
    s.record(t);
    // 4: canonicalize, consistency
    t = canon(std::move(t));
    s.count(&OpCounters::canonicalizations);
    s.count(&OpCounters::consistency_checks);
    s.record(t);
    if (!is_consistent(t)) return std::nullopt;
    // 5: reset
    t = reset(std::move(t), e.edge.resets);
    s.count(&OpCounters::resets);
    s.record(t);
    // 6: target invariant
    t = intersect(t, e.inv_tgt_dbm);
    s.count(&OpCounters::intersections);
    s.record(t);
    // 7: canonicalize, consistency
    t = canon(std::move(t));
    s.count(&OpCounters::canonicalizations);
    s.count(&OpCounters::consistency_checks);
    s.record(t);
    if (!is_consistent(t)) return std::nullopt;
    return t;
}

}  // namespace

std::optional<Dbm> succ_exact(const Dbm& zone, const EdgeContext& e, OpCounters* counters,
                              SuccTrace* trace) {
    Steps s{counters, trace};
    return run_pipeline(
        zone, e, [](Dbm d) { return canonicalize(std::move(d)); }, s);
}

std::optional<Dbm> succ_partial(const Dbm& zone, const EdgeContext& e,
                                const BoundsContext& ctx, OpCounters* counters,
                                SuccTrace* trace) {
    Steps s{counters, trace};
    std::optional<Dbm> t = run_pipeline(
        zone, e, [&ctx](Dbm d) { return mcanon(std::move(d), ctx); }, s);
    if (!t) return std::nullopt;
    // 8: extrapolate, repair only the widened cells, re-check consistency
    PartialExtrapolation pe = mextra_m(std::move(*t), ctx);
    s.count(&OpCounters::extrapolations);
    Dbm out = mcanon_after_extrapolation(std::move(pe.dbm), ctx, pe.changed);
    s.count(&OpCounters::canonicalizations);
    s.count(&OpCounters::consistency_checks);
    s.record(out);
    if (!is_consistent(out)) return std::nullopt;
    return out;
}

std::optional<Dbm> succ_exact(const Dbm& zone, const TimedAutomaton& a, const Edge& e,
                              OpCounters* counters, SuccTrace* trace) {
    return succ_exact(zone, EdgeContext::make(a, e, zone.dim()), counters, trace);
}

std::optional<Dbm> succ_partial(const Dbm& zone, const TimedAutomaton& a, const Edge& e,
                                const BoundsContext& ctx, OpCounters* counters,
                                SuccTrace* trace) {
    return succ_partial(zone, EdgeContext::make(a, e, zone.dim()), ctx, counters, trace);
}

std::optional<Dbm> succ_cycle(const Dbm& zone, const TimedAutomaton& a,
                              std::span<const Edge> cycle, const BoundsContext& ctx,
                              OpCounters* counters) {
    if (cycle.empty()) throw std::invalid_argument("succ_cycle: empty edge sequence");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Edge& cur = cycle[i];
        const Edge& next = cycle[(i + 1) % cycle.size()];
        if (cur.tgt != next.src) {
            throw std::invalid_argument("succ_cycle: edge sequence does not form a cycle");
        }
    }
    Dbm t = zone;
    for (const Edge& e : cycle) {
        std::optional<Dbm> next = succ_partial(t, a, e, ctx, counters, nullptr);
        if (!next) return std::nullopt;
        t = std::move(*next);
    }
    return t;
}

}  // namespace tawcet
