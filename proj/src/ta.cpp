// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/ta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tawcet {

std::string to_string(ConstraintOp op) {
    switch (op) {
        case ConstraintOp::Less: return "<";
        case ConstraintOp::LessEq: return "<=";
        case ConstraintOp::Eq: return "==";
        case ConstraintOp::GreaterEq: return ">=";
        case ConstraintOp::Greater: return ">";
    }
    return "?";
}

int TimedAutomaton::clock_index(const std::string& clock) const {
    for (std::size_t i = 0; i < clock_names.size(); ++i) {
        if (clock_names[i] == clock) return static_cast<int>(i) + 1;
    }
    return -1;
}

int TimedAutomaton::location_index(const std::string& location) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i].name == location) return static_cast<int>(i);
    }
    return -1;
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << "violation: " << v << '\n';
    for (const auto& w : warnings) out << "warning: " << w << '\n';
    return out.str();
}

namespace {

bool is_lower_bounding(ConstraintOp op) {
    return op == ConstraintOp::Greater || op == ConstraintOp::GreaterEq ||
           op == ConstraintOp::Eq;
}

void check_guard(const TimedAutomaton& a, const Guard& g, const std::string& where,
                 ValidationReport& report) {
    for (const AtomicConstraint& atom : g.atoms) {
        if (atom.clock < 1 || atom.clock >= a.dim()) {
            report.violations.push_back(where + ": clock index " +
                                        std::to_string(atom.clock) + " out of range");
            continue;
        }
        if (atom.constant < 0) {
            report.violations.push_back(where + ": constant " +
                                        std::to_string(atom.constant) +
                                        " is negative; constants must be natural");
        }
        if (atom.clock == a.delta_index) {
            report.violations.push_back(where + ": observer clock must not be constrained");
        }
    }
}

}  // namespace

ValidationReport validate(const TimedAutomaton& a) {
    ValidationReport report;

    std::set<std::string> seen_clocks;
    for (const auto& c : a.clock_names) {
        if (c.empty()) report.violations.push_back(a.name + ": empty clock name");
        if (!seen_clocks.insert(c).second) {
            report.violations.push_back(a.name + ": duplicate clock '" + c + "'");
        }
    }
    if (a.delta_index >= 0 &&
        (a.delta_index < 1 || a.delta_index >= a.dim() ||
         a.clock_names[static_cast<std::size_t>(a.delta_index) - 1] != kObserverClockName)) {
        report.violations.push_back(a.name + ": observer clock index does not match '" +
                                    std::string(kObserverClockName) + "'");
    }
    // A clock carrying the reserved name is treated as the observer even
    // before injection, so a model cannot smuggle in a reset of it.
    int observer = a.delta_index;
    if (observer < 0) observer = a.clock_index(kObserverClockName);

    std::set<std::string> seen_locations;
    bool any_initial = false;
    for (const auto& loc : a.locations) {
        if (loc.name.empty()) report.violations.push_back(a.name + ": empty location name");
        if (!seen_locations.insert(loc.name).second) {
            report.violations.push_back(a.name + ": duplicate location '" + loc.name + "'");
        }
        any_initial = any_initial || loc.initial;
        const std::string where = a.name + ": invariant of '" + loc.name + "'";
        check_guard(a, loc.invariant, where, report);
        for (const AtomicConstraint& atom : loc.invariant.atoms) {
            if (is_lower_bounding(atom.op)) {
                report.warnings.push_back(where + ": lower-bound invariant '" +
                                          to_string(atom.op) + " " +
                                          std::to_string(atom.constant) + "'");
            }
        }
    }
    if (!any_initial) report.violations.push_back(a.name + ": no initial location");

    const int n_locations = static_cast<int>(a.locations.size());
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        const Edge& edge = a.edges[e];
        const std::string where = a.name + ": edge #" + std::to_string(e);
        if (edge.src < 0 || edge.src >= n_locations || edge.tgt < 0 ||
            edge.tgt >= n_locations) {
            report.violations.push_back(where + ": endpoint out of range");
        }
        check_guard(a, edge.guard, where + " guard", report);
        for (int r : edge.resets) {
            if (r < 1 || r >= a.dim()) {
                report.violations.push_back(where + ": reset clock index " +
                                            std::to_string(r) + " out of range");
            } else if (r == observer) {
                report.violations.push_back(where + ": observer clock must not be reset");
            }
        }
    }
    return report;
}

ValidationReport validate(const Network& n) {
    ValidationReport report;
    std::set<std::string> names;
    std::map<std::string, std::pair<bool, bool>> channels;  // channel -> (emit, receive)
    for (const auto& comp : n.components) {
        if (!names.insert(comp.name).second) {
            report.violations.push_back(n.name + ": duplicate component '" + comp.name + "'");
        }
        ValidationReport sub = validate(comp);
        report.violations.insert(report.violations.end(), sub.violations.begin(),
                                 sub.violations.end());
        report.warnings.insert(report.warnings.end(), sub.warnings.begin(),
                               sub.warnings.end());
        for (const Edge& e : comp.edges) {
            if (!e.sync) continue;
            auto& dirs = channels[e.sync->channel];
            (e.sync->emit ? dirs.first : dirs.second) = true;
        }
    }
    if (n.components.empty()) {
        report.violations.push_back(n.name + ": network has no components");
    }
    // A dangling direction is legal handshake-wise (the edge can never
    // fire and the product simply omits it), but almost always a mistake.
    for (const auto& [channel, dirs] : channels) {
        if (dirs.first && !dirs.second) {
            report.warnings.push_back(n.name + ": channel '" + channel +
                                      "' has emitters but no receiver");
        }
        if (dirs.second && !dirs.first) {
            report.warnings.push_back(n.name + ": channel '" + channel +
                                      "' has receivers but no emitter");
        }
    }
    return report;
}

namespace {

template <typename Fn>
void for_each_guard(const TimedAutomaton& a, Fn&& fn) {
    for (const auto& loc : a.locations) fn(loc.invariant);
    for (const auto& edge : a.edges) fn(edge.guard);
}

}  // namespace

std::int64_t max_constant(const TimedAutomaton& a) {
    std::int64_t best = 0;
    for_each_guard(a, [&](const Guard& g) {
        for (const AtomicConstraint& atom : g.atoms) {
            if (atom.clock == a.delta_index) continue;
            best = std::max(best, atom.constant);
        }
    });
    return best;
}

LuBounds lu_bounds(const TimedAutomaton& a) {
    LuBounds out;
    out.lower.assign(static_cast<std::size_t>(a.dim()), BoundsContext::kNoConstant);
    out.upper.assign(static_cast<std::size_t>(a.dim()), BoundsContext::kNoConstant);
    out.lower[0] = 0;
    out.upper[0] = 0;
    for_each_guard(a, [&](const Guard& g) {
        for (const AtomicConstraint& atom : g.atoms) {
            if (atom.clock < 1 || atom.clock >= a.dim()) continue;
            if (atom.clock == a.delta_index) continue;
            auto& lo = out.lower[static_cast<std::size_t>(atom.clock)];
            auto& hi = out.upper[static_cast<std::size_t>(atom.clock)];
            switch (atom.op) {
                case ConstraintOp::Less:
                case ConstraintOp::LessEq:
                    hi = std::max(hi, atom.constant);
                    break;
                case ConstraintOp::Greater:
                case ConstraintOp::GreaterEq:
                    lo = std::max(lo, atom.constant);
                    break;
                case ConstraintOp::Eq:
                    hi = std::max(hi, atom.constant);
                    lo = std::max(lo, atom.constant);
                    break;
            }
        }
    });
    return out;
}

BoundsContext bounds_context(const TimedAutomaton& a) {
    BoundsContext ctx;
    LuBounds lu = lu_bounds(a);
    ctx.lower = std::move(lu.lower);
    ctx.upper = std::move(lu.upper);
    ctx.clock_max.assign(static_cast<std::size_t>(a.dim()), 0);
    for (std::size_t i = 1; i < ctx.clock_max.size(); ++i) {
        std::int64_t m = 0;
        if (ctx.lower[i] != BoundsContext::kNoConstant) m = std::max(m, ctx.lower[i]);
        if (ctx.upper[i] != BoundsContext::kNoConstant) m = std::max(m, ctx.upper[i]);
        ctx.clock_max[i] = m;
    }
    ctx.global_max = max_constant(a);
    ctx.delta_index = a.delta_index;
    return ctx;
}

TimedAutomaton add_observer_clock(TimedAutomaton a) {
    if (a.clock_index(kObserverClockName) != -1) {
        throw std::invalid_argument(a.name + ": clock name '" +
                                    std::string(kObserverClockName) + "' is reserved");
    }
    a.clock_names.emplace_back(kObserverClockName);
    a.delta_index = static_cast<int>(a.clock_names.size());
    return a;
}

// ---------------------------------------------------------------------------
// Synchronous product
// ---------------------------------------------------------------------------

namespace {

struct ClockMap {
    // clock_offset[k] + local index = product matrix index
    std::vector<int> clock_offset;
};

Guard remap_guard(const Guard& g, int offset) {
    Guard out;
    out.atoms.reserve(g.atoms.size());
    for (AtomicConstraint atom : g.atoms) {
        atom.clock += offset;
        out.atoms.push_back(atom);
    }
    return out;
}

std::string tuple_name(const Network& n, const std::vector<int>& tuple) {
    std::string out;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (k > 0) out += '|';
        out += n.components[k].name + '.' +
               n.components[k].locations[static_cast<std::size_t>(tuple[k])].name;
    }
    return out;
}

}  // namespace

TimedAutomaton compose(const Network& n,
                       const std::optional<std::string>& final_component) {
    ValidationReport report = validate(n);
    if (!report.ok()) {
        throw std::invalid_argument("compose: invalid network\n" + report.to_string());
    }
    for (const auto& comp : n.components) {
        if (comp.delta_index >= 0) {
            throw std::invalid_argument(
                "compose: inject the observer clock after composition, not before");
        }
    }
    int final_k = -1;
    if (final_component) {
        for (std::size_t k = 0; k < n.components.size(); ++k) {
            if (n.components[k].name == *final_component) final_k = static_cast<int>(k);
        }
        if (final_k < 0) {
            throw std::invalid_argument("compose: unknown component '" + *final_component +
                                        "'");
        }
    }
    if (n.components.size() == 1) {
        TimedAutomaton only = n.components.front();
        only.name = n.name.empty() ? only.name : n.name;
        return only;
    }

    TimedAutomaton product;
    product.name = n.name;

    ClockMap clocks;
    clocks.clock_offset.reserve(n.components.size());
    for (const auto& comp : n.components) {
        clocks.clock_offset.push_back(static_cast<int>(product.clock_names.size()));
        for (const auto& c : comp.clock_names) {
            product.clock_names.push_back(comp.name + '.' + c);
        }
    }

    // Breadth-first construction of the reachable tuple graph.
    std::map<std::vector<int>, int> tuple_index;
    std::vector<std::vector<int>> tuples;
    std::vector<std::vector<int>> frontier;

    auto intern = [&](const std::vector<int>& tuple) {
        auto [it, inserted] = tuple_index.emplace(tuple, static_cast<int>(tuples.size()));
        if (inserted) {
            tuples.push_back(tuple);
            frontier.push_back(tuple);
            Location loc;
            loc.name = tuple_name(n, tuple);
            bool all_final = true;
            for (std::size_t k = 0; k < tuple.size(); ++k) {
                const Location& part =
                    n.components[k].locations[static_cast<std::size_t>(tuple[k])];
                Guard inv = remap_guard(part.invariant, clocks.clock_offset[k]);
                loc.invariant.atoms.insert(loc.invariant.atoms.end(), inv.atoms.begin(),
                                           inv.atoms.end());
                all_final = all_final && part.final;
            }
            if (final_k >= 0) {
                loc.final = n.components[static_cast<std::size_t>(final_k)]
                                .locations[static_cast<std::size_t>(tuple[final_k])]
                                .final;
            } else {
                loc.final = all_final;
            }
            product.locations.push_back(std::move(loc));
        }
        return it->second;
    };

    // Initial tuples: cartesian product of the components' initial locations.
    {
        std::vector<std::vector<int>> initials(n.components.size());
        for (std::size_t k = 0; k < n.components.size(); ++k) {
            for (std::size_t l = 0; l < n.components[k].locations.size(); ++l) {
                if (n.components[k].locations[l].initial) {
                    initials[k].push_back(static_cast<int>(l));
                }
            }
        }
        std::vector<int> tuple(n.components.size(), 0);
        std::vector<std::size_t> pick(n.components.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < n.components.size(); ++k) {
                tuple[k] = initials[k][pick[k]];
            }
            product.locations[static_cast<std::size_t>(intern(tuple))].initial = true;
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == initials[k].size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == pick.size()) break;
        }
    }

    while (!frontier.empty()) {
        std::vector<int> tuple = std::move(frontier.back());
        frontier.pop_back();
        const int src_index = tuple_index.at(tuple);

        for (std::size_t k = 0; k < n.components.size(); ++k) {
            const TimedAutomaton& comp = n.components[k];
            const int offset = clocks.clock_offset[k];
            for (const Edge& e : comp.edges) {
                if (e.src != tuple[k]) continue;
                if (!e.sync) {
                    Edge joint;
                    joint.src = src_index;
                    joint.label = comp.name + (e.label.empty() ? "" : '.' + e.label);
                    joint.guard = remap_guard(e.guard, offset);
                    for (int r : e.resets) joint.resets.push_back(r + offset);
                    std::vector<int> next = tuple;
                    next[k] = e.tgt;
                    joint.tgt = intern(next);
                    product.edges.push_back(std::move(joint));
                    continue;
                }
                if (!e.sync->emit) continue;  // handled from the emitting side
                for (std::size_t m = 0; m < n.components.size(); ++m) {
                    if (m == k) continue;
                    const TimedAutomaton& peer = n.components[m];
                    const int peer_offset = clocks.clock_offset[m];
                    for (const Edge& f : peer.edges) {
                        if (f.src != tuple[m] || !f.sync || f.sync->emit ||
                            f.sync->channel != e.sync->channel) {
                            continue;
                        }
                        Edge joint;
                        joint.src = src_index;
                        joint.label = e.sync->channel;
                        joint.guard = remap_guard(e.guard, offset);
                        Guard pg = remap_guard(f.guard, peer_offset);
                        joint.guard.atoms.insert(joint.guard.atoms.end(), pg.atoms.begin(),
                                                 pg.atoms.end());
                        for (int r : e.resets) joint.resets.push_back(r + offset);
                        for (int r : f.resets) joint.resets.push_back(r + peer_offset);
                        std::vector<int> next = tuple;
                        next[k] = e.tgt;
                        next[m] = f.tgt;
                        joint.tgt = intern(next);
                        product.edges.push_back(std::move(joint));
                    }
                }
            }
        }
    }
    return product;
}

}  // namespace tawcet
