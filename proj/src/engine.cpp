// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tawcet {

std::string ExecTime::to_string() const {
    switch (kind) {
        case Kind::Finite:
            return std::to_string(bound.weight()) + (bound.strict() ? " (strict)" : "");
        case Kind::Infinite:
            return "infinite";
        case Kind::Unknown:
            return note.empty() ? "unknown" : "unknown (" + note + ")";
    }
    return "?";
}

std::string Witness::describe(const TimedAutomaton& a) const {
    std::ostringstream out;
    auto edge_text = [&a](int index) {
        const Edge& e = a.edges[static_cast<std::size_t>(index)];
        return a.locations[static_cast<std::size_t>(e.src)].name + " -> " +
               a.locations[static_cast<std::size_t>(e.tgt)].name;
    };
    switch (kind) {
        case Kind::None:
            out << "none";
            break;
        case Kind::UnboundedLocation:
            out << "unbounded delay at location '"
                << a.locations[static_cast<std::size_t>(location)].name << "'";
            break;
        case Kind::DivergentCycle:
            out << "time-divergent cycle at location '"
                << a.locations[static_cast<std::size_t>(location)].name << "': ";
            for (std::size_t i = 0; i < cycle_edges.size(); ++i) {
                if (i > 0) out << ", ";
                out << edge_text(cycle_edges[i]);
            }
            break;
    }
    return out.str();
}

namespace {

enum class Match { None, DotOnly, Exact, Divergent };

Match classify(const Dbm& fresh, const Dbm& candidate, int delta_index) {
    if (!equal_ignoring_clock(fresh, candidate, delta_index)) return Match::None;
    if (fresh == candidate) return Match::Exact;
    if (upper_bound(fresh, delta_index) > upper_bound(candidate, delta_index)) {
        return Match::Divergent;
    }
    return Match::DotOnly;
}

}  // namespace

CycleVerdict detect_cycle_verdict(const SymbolicState& fresh,
                                  std::span<const SymbolicState> passed,
                                  int delta_index) {
    bool zeno = false;
    for (const SymbolicState& cand : passed) {
        if (cand.sts != 1 || cand.location != fresh.location) continue;
        switch (classify(fresh.zone, cand.zone, delta_index)) {
            case Match::Divergent:
                return CycleVerdict::TimeDivergent;
            case Match::Exact:
                zeno = true;
                break;
            case Match::DotOnly:
            case Match::None:
                break;
        }
    }
    return zeno ? CycleVerdict::Zeno : CycleVerdict::None;
}

namespace {

enum class Mode { Wcet, Bcet };

struct StateRec {
    SymbolicState state;
    int parent = -1;
    int in_edge = -1;
    int in_arc = -1;  // arc index in the recorded graph, when recording
};

struct Frame {
    int state = 0;
    bool expanded = false;
};

// Prefer the larger value; on ties the non-strict (attained) bound.
void fold_max_upper(std::optional<Bound>& best, Bound candidate) {
    if (!best || *best < candidate) best = candidate;
}

struct LowerValue {
    std::int64_t value = 0;
    bool strict = false;
};

// Prefer the smaller value; on ties the non-strict (attained) bound.
void fold_min_lower(std::optional<LowerValue>& best, LowerValue candidate) {
    if (!best || candidate.value < best->value ||
        (candidate.value == best->value && !candidate.strict)) {
        best = candidate;
    }
}

class Search {
public:
    Search(const TimedAutomaton& a, Mode mode, const AnalysisOptions& opts)
        : a_(a), mode_(mode), opts_(opts) {}

    SearchResult run() {
        if (a_.delta_index < 1) {
            throw std::invalid_argument("engine: observer clock not injected");
        }
        ValidationReport report = validate(a_);
        if (!report.ok()) {
            throw std::invalid_argument("engine: invalid automaton\n" + report.to_string());
        }
        ctx_ = bounds_context(a_);
        delta_ = a_.delta_index;

        const int dim = a_.dim();
        edge_ctx_.reserve(a_.edges.size());
        for (const Edge& e : a_.edges) edge_ctx_.push_back(EdgeContext::make(a_, e, dim));
        out_edges_.assign(a_.locations.size(), {});
        for (std::size_t i = 0; i < a_.edges.size(); ++i) {
            out_edges_[static_cast<std::size_t>(a_.edges[i].src)].push_back(
                static_cast<int>(i));
        }
        inv_dbm_.reserve(a_.locations.size());
        for (const Location& loc : a_.locations) {
            inv_dbm_.push_back(guard_to_dbm(loc.invariant, dim));
        }
        active_by_loc_.assign(a_.locations.size(), {});

        names_.emplace_back("x0");
        for (const auto& c : a_.clock_names) names_.push_back(c);

        push_initial_states(dim);
        explore();
        return assemble();
    }

private:
    void push_initial_states(int dim) {
        std::vector<int> created;
        for (std::size_t l = 0; l < a_.locations.size(); ++l) {
            if (!a_.locations[l].initial) continue;
            Dbm z0 = intersect(Dbm::zero(dim), inv_dbm_[l]);
            ++stats_.ops.intersections;
            z0 = mcanon(std::move(z0), ctx_);
            ++stats_.ops.canonicalizations;
            ++stats_.ops.consistency_checks;
            if (!is_consistent(z0)) continue;
            created.push_back(new_state(static_cast<int>(l), std::move(z0), -1, -1));
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) {
            stack_.push_back(Frame{*it, false});
        }
    }

    int new_state(int location, Dbm zone, int parent, int in_edge) {
        ++stats_.generated_states;
        if (states_.size() >= opts_.max_states) {
            throw std::runtime_error("engine: symbolic state cap exceeded");
        }
        const int index = static_cast<int>(states_.size());
        StateRec rec;
        rec.state = SymbolicState{location, std::move(zone), 0};
        rec.parent = parent;
        rec.in_edge = in_edge;
        if (opts_.record_graph) {
            graph_.nodes.push_back(ZoneGraph::Node{location, "", 0});
            if (parent >= 0) {
                rec.in_arc = add_arc(parent, index, in_edge);
            }
        }
        states_.push_back(std::move(rec));
        return index;
    }

    int add_arc(int from, int to, int edge_index) {
        std::string label = edge_index >= 0
                                ? a_.edges[static_cast<std::size_t>(edge_index)].label
                                : "";
        graph_.arcs.push_back(ZoneGraph::Arc{from, to, std::move(label), false});
        return static_cast<int>(graph_.arcs.size()) - 1;
    }

    int find_passed(int location, const Dbm& zone) const {
        const std::size_t key =
            zone.fingerprint() ^ (static_cast<std::size_t>(location) * 0x9e3779b97f4a7c15ull);
        auto it = passed_.find(key);
        if (it == passed_.end()) return -1;
        for (int idx : it->second) {
            const StateRec& rec = states_[static_cast<std::size_t>(idx)];
            if (rec.state.location == location && rec.state.zone == zone) return idx;
        }
        return -1;
    }

    void insert_passed(int index) {
        const StateRec& rec = states_[static_cast<std::size_t>(index)];
        const std::size_t key =
            rec.state.zone.fingerprint() ^
            (static_cast<std::size_t>(rec.state.location) * 0x9e3779b97f4a7c15ull);
        passed_[key].push_back(index);
    }

    std::vector<int> path_edges(int index) const {
        std::vector<int> edges;
        for (int cur = index; cur >= 0; cur = states_[static_cast<std::size_t>(cur)].parent) {
            const int e = states_[static_cast<std::size_t>(cur)].in_edge;
            if (e >= 0) edges.push_back(e);
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
    }

    void mark_witness_cycle(int anchor, int last, int closing_arc) {
        if (!opts_.record_graph) return;
        if (closing_arc >= 0) graph_.arcs[static_cast<std::size_t>(closing_arc)].on_witness_cycle = true;
        for (int cur = last; cur >= 0 && cur != anchor;
             cur = states_[static_cast<std::size_t>(cur)].parent) {
            const int arc = states_[static_cast<std::size_t>(cur)].in_arc;
            if (arc >= 0) graph_.arcs[static_cast<std::size_t>(arc)].on_witness_cycle = true;
        }
    }

    void divergent_verdict(int anchor, int current, int closing_edge, int target_location) {
        infinite_ = true;
        witness_.kind = Witness::Kind::DivergentCycle;
        witness_.location = target_location;
        witness_.path_edges = path_edges(anchor);
        std::vector<int> cycle;
        for (int cur = current; cur >= 0 && cur != anchor;
             cur = states_[static_cast<std::size_t>(cur)].parent) {
            cycle.push_back(states_[static_cast<std::size_t>(cur)].in_edge);
        }
        std::reverse(cycle.begin(), cycle.end());
        cycle.push_back(closing_edge);
        witness_.cycle_edges = std::move(cycle);
    }

    void unbounded_verdict(int from_state, int edge_index, int target_location) {
        infinite_ = true;
        witness_.kind = Witness::Kind::UnboundedLocation;
        witness_.location = target_location;
        witness_.path_edges = path_edges(from_state);
        if (edge_index >= 0) witness_.path_edges.push_back(edge_index);
    }

    void explore() {
        while (!stack_.empty() && !infinite_) {
            const Frame frame = stack_.back();
            const int si = frame.state;
            if (frame.expanded) {
                states_[static_cast<std::size_t>(si)].state.sts = 2;
                sync_graph_node(si);
                auto& active = active_by_loc_[static_cast<std::size_t>(
                    states_[static_cast<std::size_t>(si)].state.location)];
                active.pop_back();
                stack_.pop_back();
                continue;
            }
            const int location = states_[static_cast<std::size_t>(si)].state.location;
            if (find_passed(location, states_[static_cast<std::size_t>(si)].state.zone) >= 0) {
                // Cell-exact duplicate of a fully processed state on another
                // path; identical zones generate identical subtrees.
                stack_.pop_back();
                continue;
            }
            stack_.back().expanded = true;
            states_[static_cast<std::size_t>(si)].state.sts = 1;
            sync_graph_node(si);
            insert_passed(si);
            active_by_loc_[static_cast<std::size_t>(location)].push_back(si);
            ++stats_.explored_states;
            expand(si);
        }
    }

    void sync_graph_node(int index) {
        if (!opts_.record_graph) return;
        const StateRec& rec = states_[static_cast<std::size_t>(index)];
        ZoneGraph::Node& node = graph_.nodes[static_cast<std::size_t>(index)];
        node.sts = rec.state.sts;
        if (node.zone_text.empty()) {
            node.zone_text = render_constraints(rec.state.zone, names_);
        }
    }

    void expand(int si) {
        const Dbm zone = states_[static_cast<std::size_t>(si)].state.zone;
        const int location = states_[static_cast<std::size_t>(si)].state.location;

        std::vector<std::pair<int, Dbm>> successors;
        for (int ei : out_edges_[static_cast<std::size_t>(location)]) {
            std::optional<Dbm> z =
                succ_partial(zone, edge_ctx_[static_cast<std::size_t>(ei)], ctx_,
                             &stats_.ops, nullptr);
            if (z) successors.emplace_back(ei, std::move(*z));
        }

        const bool marked_final = a_.locations[static_cast<std::size_t>(location)].final;
        if (marked_final || successors.empty()) {
            ++stats_.ops.bound_reads;
            if (mode_ == Mode::Wcet) {
                fold_max_upper(wcet_best_, upper_bound(zone, delta_));
            } else {
                const Bound cell = lower_bound(zone, delta_);
                fold_min_lower(bcet_best_, LowerValue{-cell.weight(), cell.strict()});
            }
        }
        if (mode_ == Mode::Wcet && successors.empty() && !marked_final &&
            states_[static_cast<std::size_t>(si)].parent < 0) {
            // A deadlocked initial state never surfaces through the
            // successor checks, so probe its delayed zone directly.
            Dbm delayed = intersect(up(zone), inv_dbm_[static_cast<std::size_t>(location)]);
            ++stats_.ops.delays;
            ++stats_.ops.intersections;
            delayed = mcanon(std::move(delayed), ctx_);
            ++stats_.ops.canonicalizations;
            ++stats_.ops.consistency_checks;
            if (is_consistent(delayed) && upper_bound(delayed, delta_).is_infinite()) {
                unbounded_verdict(si, -1, location);
                return;
            }
        }

        std::vector<int> created;
        for (auto& [ei, z] : successors) {
            const int target = a_.edges[static_cast<std::size_t>(ei)].tgt;
            if (mode_ == Mode::Wcet) {
                ++stats_.ops.bound_reads;
                if (upper_bound(z, delta_).is_infinite()) {
                    unbounded_verdict(si, ei, target);
                    return;
                }
            }

            int divergent_anchor = -1;
            bool zeno = false;
            bool dot_repeat = false;
            int first_match = -1;
            for (int idx : active_by_loc_[static_cast<std::size_t>(target)]) {
                ++stats_.ops.fixed_point_tests;
                const Match m =
                    classify(z, states_[static_cast<std::size_t>(idx)].state.zone, delta_);
                if (m == Match::None) continue;
                dot_repeat = true;
                if (first_match < 0) first_match = idx;
                if (m == Match::Divergent && divergent_anchor < 0) divergent_anchor = idx;
                if (m == Match::Exact) zeno = true;
            }
            if (divergent_anchor >= 0 && mode_ == Mode::Wcet) {
                record_pruned_arc(si, divergent_anchor, ei, true);
                divergent_verdict(divergent_anchor, si, ei, target);
                return;
            }
            if (zeno || (divergent_anchor >= 0) ||
                (mode_ == Mode::Bcet && dot_repeat)) {
                // Zeno repeats are skipped outright; in BCET mode any
                // automaton-clock fixed point is pruned, since the observer's
                // lower bound only grows around a cycle.
                record_pruned_arc(si, first_match, ei, false);
                continue;
            }
            const int duplicate = find_passed(target, z);
            if (duplicate >= 0) {
                record_pruned_arc(si, duplicate, ei, false);
                continue;
            }
            created.push_back(new_state(target, std::move(z), si, ei));
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) {
            stack_.push_back(Frame{*it, false});
        }
    }

    void record_pruned_arc(int from, int to, int edge_index, bool witness_arc) {
        if (!opts_.record_graph || to < 0) return;
        const int arc = add_arc(from, to, edge_index);
        if (witness_arc) {
            mark_witness_cycle(to, from, arc);
        }
    }

    SearchResult assemble() {
        SearchResult result;
        result.stats = stats_;
        result.witness = witness_;
        if (mode_ == Mode::Wcet) {
            if (infinite_) {
                result.wcet = ExecTime::infinite();
            } else if (wcet_best_) {
                result.wcet = ExecTime::finite(*wcet_best_);
            } else {
                result.wcet = ExecTime::unknown("no final state reachable");
            }
        } else {
            if (bcet_best_) {
                result.bcet = ExecTime::finite(bcet_best_->strict
                                                   ? Bound::lt(bcet_best_->value)
                                                   : Bound::le(bcet_best_->value));
            } else {
                result.bcet = ExecTime::unknown("no final state reachable");
            }
        }
        if (opts_.record_graph) {
            for (std::size_t i = 0; i < states_.size(); ++i) {
                sync_graph_node(static_cast<int>(i));
            }
            result.graph = std::move(graph_);
        }
        return result;
    }

    const TimedAutomaton& a_;
    Mode mode_;
    AnalysisOptions opts_;

    BoundsContext ctx_;
    int delta_ = -1;
    std::vector<EdgeContext> edge_ctx_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<Dbm> inv_dbm_;
    std::vector<std::string> names_;

    std::vector<StateRec> states_;
    std::vector<Frame> stack_;
    std::unordered_map<std::size_t, std::vector<int>> passed_;
    std::vector<std::vector<int>> active_by_loc_;

    SearchStats stats_;
    std::optional<Bound> wcet_best_;
    std::optional<LowerValue> bcet_best_;
    bool infinite_ = false;
    Witness witness_;
    ZoneGraph graph_;
};

}  // namespace

SearchResult analyze_wcet(const TimedAutomaton& a, const AnalysisOptions& opts) {
    return Search(a, Mode::Wcet, opts).run();
}

SearchResult analyze_bcet(const TimedAutomaton& a, const AnalysisOptions& opts) {
    return Search(a, Mode::Bcet, opts).run();
}

}  // namespace tawcet
