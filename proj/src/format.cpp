// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0

#include "tawcet/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace tawcet {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

enum class Tok {
    Ident,
    Number,
    Arrow,     // ->
    AndAnd,    // &&
    ParPar,    // ||
    Less,      // <
    LessEq,    // <=
    EqEq,      // ==
    GreaterEq, // >=
    Greater,   // >
    Assign,    // =
    Comma,
    Bang,
    Question,
    Minus,
};

struct Token {
    Tok kind;
    std::string text;
    int col;  // 1-based
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const int col = static_cast<int>(i) + 1;
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < line.size() && line[i + 1] == b;
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
                ++j;
            }
            out.push_back({Tok::Ident, line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            out.push_back({Tok::Number, line.substr(i, j - i), col});
            i = j;
        } else if (two('-', '>')) {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
        } else if (two('&', '&')) {
            out.push_back({Tok::AndAnd, "&&", col});
            i += 2;
        } else if (two('|', '|')) {
            out.push_back({Tok::ParPar, "||", col});
            i += 2;
        } else if (two('<', '=')) {
            out.push_back({Tok::LessEq, "<=", col});
            i += 2;
        } else if (two('>', '=')) {
            out.push_back({Tok::GreaterEq, ">=", col});
            i += 2;
        } else if (two('=', '=')) {
            out.push_back({Tok::EqEq, "==", col});
            i += 2;
        } else if (c == '<') {
            out.push_back({Tok::Less, "<", col});
            ++i;
        } else if (c == '>') {
            out.push_back({Tok::Greater, ">", col});
            ++i;
        } else if (c == '=') {
            out.push_back({Tok::Assign, "=", col});
            ++i;
        } else if (c == ',') {
            out.push_back({Tok::Comma, ",", col});
            ++i;
        } else if (c == '!') {
            out.push_back({Tok::Bang, "!", col});
            ++i;
        } else if (c == '?') {
            out.push_back({Tok::Question, "?", col});
            ++i;
        } else if (c == '-') {
            out.push_back({Tok::Minus, "-", col});
            ++i;
        } else {
            throw ParseError(line_no, col,
                             std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ModelDocument run() {
        std::istringstream in(text_);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            tokens_ = tokenize_line(line, line_no);
            pos_ = 0;
            line_no_ = line_no;
            if (tokens_.empty()) continue;
            dispatch();
        }
        finish_automaton();
        resolve_networks();
        return std::move(doc_);
    }

private:
    [[noreturn]] void fail(const Token& at, const std::string& message) const {
        throw ParseError(line_no_, at.col, message);
    }
    [[noreturn]] void fail_eol(const std::string& expected) const {
        const int col = tokens_.empty() ? 1 : tokens_.back().col +
                                               static_cast<int>(tokens_.back().text.size());
        throw ParseError(line_no_, col, "expected " + expected + ", got end of line");
    }

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    Token expect(Tok kind, const std::string& what) {
        if (at_end()) fail_eol(what);
        if (peek().kind != kind) fail(peek(), "expected " + what + ", got '" + peek().text + "'");
        return take();
    }
    Token expect_keyword(const std::string& kw) {
        Token t = expect(Tok::Ident, "'" + kw + "'");
        if (t.text != kw) fail(t, "expected '" + kw + "', got '" + t.text + "'");
        return t;
    }
    void expect_line_end() {
        if (!at_end()) fail(peek(), "unexpected trailing '" + peek().text + "'");
    }

    void dispatch() {
        if (peek().kind != Tok::Ident) {
            fail(peek(), "expected a keyword (automaton, clocks, location, edge, network)");
        }
        const std::string& kw = peek().text;
        if (kw == "automaton") {
            parse_automaton_header();
        } else if (kw == "network") {
            parse_network();
        } else if (kw == "clocks") {
            parse_clocks();
        } else if (kw == "location") {
            parse_location();
        } else if (kw == "edge") {
            parse_edge();
        } else {
            fail(peek(), "unknown keyword '" + kw + "'");
        }
    }

    void require_automaton(const Token& at) {
        if (!current_) fail(at, "declaration outside of an automaton block");
    }

    void finish_automaton() {
        if (!current_) return;
        doc_.automata.push_back(std::move(*current_));
        current_.reset();
    }

    void parse_automaton_header() {
        take();
        Token name = expect(Tok::Ident, "automaton name");
        finish_automaton();
        for (const auto& a : doc_.automata) {
            if (a.name == name.text) fail(name, "duplicate automaton '" + name.text + "'");
        }
        current_.emplace();
        current_->name = name.text;
        expect_line_end();
    }

    void parse_clocks() {
        Token kw = take();
        require_automaton(kw);
        if (at_end()) fail_eol("clock name");
        while (!at_end()) {
            Token c = expect(Tok::Ident, "clock name");
            if (current_->clock_index(c.text) != -1) {
                fail(c, "duplicate clock '" + c.text + "'");
            }
            current_->clock_names.push_back(c.text);
        }
    }

    int lookup_clock(const Token& t) const {
        const int index = current_->clock_index(t.text);
        if (index < 0) fail(t, "undeclared clock '" + t.text + "'");
        return index;
    }

    int lookup_location(const Token& t) const {
        const int index = current_->location_index(t.text);
        if (index < 0) fail(t, "unknown location '" + t.text + "'");
        return index;
    }

    AtomicConstraint parse_atom() {
        Token clock = expect(Tok::Ident, "clock name");
        const int index = lookup_clock(clock);
        if (!at_end() && peek().kind == Tok::Minus) {
            fail(peek(), "diagonal constraints are not supported");
        }
        if (at_end()) fail_eol("comparison operator");
        ConstraintOp op;
        switch (peek().kind) {
            case Tok::Less: op = ConstraintOp::Less; break;
            case Tok::LessEq: op = ConstraintOp::LessEq; break;
            case Tok::EqEq: op = ConstraintOp::Eq; break;
            case Tok::GreaterEq: op = ConstraintOp::GreaterEq; break;
            case Tok::Greater: op = ConstraintOp::Greater; break;
            default:
                fail(peek(), "expected comparison operator, got '" + peek().text + "'");
        }
        take();
        Token num = expect(Tok::Number, "natural constant");
        std::int64_t value = 0;
        for (char c : num.text) {
            if (value > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) {
                fail(num, "constant too large");
            }
            value = value * 10 + (c - '0');
        }
        return AtomicConstraint{index, op, value};
    }

    Guard parse_conjunction() {
        Guard g;
        g.atoms.push_back(parse_atom());
        while (!at_end() && peek().kind == Tok::AndAnd) {
            take();
            g.atoms.push_back(parse_atom());
        }
        return g;
    }

    void parse_location() {
        Token kw = take();
        require_automaton(kw);
        Token name = expect(Tok::Ident, "location name");
        if (current_->location_index(name.text) != -1) {
            fail(name, "duplicate location '" + name.text + "'");
        }
        Location loc;
        loc.name = name.text;
        while (!at_end()) {
            Token flag = expect(Tok::Ident, "'initial', 'final' or 'invariant'");
            if (flag.text == "initial") {
                loc.initial = true;
            } else if (flag.text == "final") {
                loc.final = true;
            } else if (flag.text == "invariant") {
                loc.invariant = parse_conjunction();
            } else {
                fail(flag, "expected 'initial', 'final' or 'invariant', got '" + flag.text +
                               "'");
            }
        }
        current_->locations.push_back(std::move(loc));
    }

    void parse_edge() {
        Token kw = take();
        require_automaton(kw);
        Token src = expect(Tok::Ident, "source location");
        Edge e;
        e.src = lookup_location(src);
        expect(Tok::Arrow, "'->'");
        Token tgt = expect(Tok::Ident, "target location");
        e.tgt = lookup_location(tgt);
        while (!at_end()) {
            Token opt = expect(Tok::Ident, "'guard', 'reset', 'sync' or 'label'");
            if (opt.text == "guard") {
                e.guard = parse_conjunction();
            } else if (opt.text == "reset") {
                Token c = expect(Tok::Ident, "clock name");
                e.resets.push_back(lookup_clock(c));
                while (!at_end() && peek().kind == Tok::Comma) {
                    take();
                    Token more = expect(Tok::Ident, "clock name");
                    e.resets.push_back(lookup_clock(more));
                }
            } else if (opt.text == "sync") {
                Token channel = expect(Tok::Ident, "channel name");
                if (at_end()) fail_eol("'!' or '?'");
                if (peek().kind == Tok::Bang) {
                    take();
                    e.sync = Sync{channel.text, true};
                } else if (peek().kind == Tok::Question) {
                    take();
                    e.sync = Sync{channel.text, false};
                } else {
                    fail(peek(), "expected '!' or '?', got '" + peek().text + "'");
                }
            } else if (opt.text == "label") {
                Token l = expect(Tok::Ident, "action label");
                e.label = l.text;
            } else {
                fail(opt, "expected 'guard', 'reset', 'sync' or 'label', got '" + opt.text +
                              "'");
            }
        }
        current_->edges.push_back(std::move(e));
    }

    void parse_network() {
        take();
        finish_automaton();
        Token name = expect(Tok::Ident, "network name");
        expect(Tok::Assign, "'='");
        NetworkDecl decl;
        decl.name = name.text;
        Token first = expect(Tok::Ident, "component name");
        decl.component_names.push_back(first.text);
        component_positions_.push_back({line_no_, first.col});
        while (!at_end()) {
            expect(Tok::ParPar, "'||'");
            Token comp = expect(Tok::Ident, "component name");
            decl.component_names.push_back(comp.text);
            component_positions_.push_back({line_no_, comp.col});
        }
        doc_.networks.push_back(std::move(decl));
    }

    void resolve_networks() const {
        std::size_t pos = 0;
        for (const NetworkDecl& decl : doc_.networks) {
            for (const std::string& comp : decl.component_names) {
                const auto [line, col] = component_positions_[pos++];
                const bool known =
                    std::any_of(doc_.automata.begin(), doc_.automata.end(),
                                [&](const TimedAutomaton& a) { return a.name == comp; });
                if (!known) {
                    throw ParseError(line, col, "unknown automaton '" + comp + "'");
                }
            }
        }
    }

    const std::string& text_;
    ModelDocument doc_;
    std::optional<TimedAutomaton> current_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    std::vector<std::pair<int, int>> component_positions_;
};

}  // namespace

ModelDocument parse_document(const std::string& text) { return Parser(text).run(); }

Network parse_model(const std::string& text) {
    ModelDocument doc = parse_document(text);
    Network net;
    if (doc.networks.size() > 1) {
        throw ParseError(1, 1, "document declares more than one network");
    }
    if (doc.networks.size() == 1) {
        const NetworkDecl& decl = doc.networks.front();
        net.name = decl.name;
        for (const std::string& comp : decl.component_names) {
            for (const TimedAutomaton& a : doc.automata) {
                if (a.name == comp) net.components.push_back(a);
            }
        }
        return net;
    }
    if (doc.automata.empty()) {
        throw ParseError(1, 1, "document declares no automaton");
    }
    if (doc.automata.size() > 1) {
        throw ParseError(1, 1,
                         "document declares several automata but no network combining them");
    }
    net.name = doc.automata.front().name;
    net.components.push_back(doc.automata.front());
    return net;
}

// ---------------------------------------------------------------------------
// Serializer
// ---------------------------------------------------------------------------

namespace {

std::string conjunction_text(const TimedAutomaton& a, const Guard& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        if (i > 0) out << " && ";
        const AtomicConstraint& atom = g.atoms[i];
        out << a.clock_names[static_cast<std::size_t>(atom.clock) - 1] << ' '
            << to_string(atom.op) << ' ' << atom.constant;
    }
    return out.str();
}

void serialize_automaton(std::ostringstream& out, const TimedAutomaton& a) {
    out << "automaton " << a.name << '\n';
    if (!a.clock_names.empty()) {
        out << "  clocks";
        for (const auto& c : a.clock_names) out << ' ' << c;
        out << '\n';
    }
    std::vector<const Location*> sorted;
    sorted.reserve(a.locations.size());
    for (const Location& loc : a.locations) sorted.push_back(&loc);
    std::sort(sorted.begin(), sorted.end(),
              [](const Location* x, const Location* y) { return x->name < y->name; });
    for (const Location* loc : sorted) {
        out << "  location " << loc->name;
        if (loc->initial) out << " initial";
        if (loc->final) out << " final";
        if (!loc->invariant.empty()) out << " invariant " << conjunction_text(a, loc->invariant);
        out << '\n';
    }
    for (const Edge& e : a.edges) {
        out << "  edge " << a.locations[static_cast<std::size_t>(e.src)].name << " -> "
            << a.locations[static_cast<std::size_t>(e.tgt)].name;
        if (!e.guard.empty()) out << " guard " << conjunction_text(a, e.guard);
        if (!e.resets.empty()) {
            out << " reset ";
            for (std::size_t i = 0; i < e.resets.size(); ++i) {
                if (i > 0) out << ',';
                out << a.clock_names[static_cast<std::size_t>(e.resets[i]) - 1];
            }
        }
        if (e.sync) out << " sync " << e.sync->channel << (e.sync->emit ? '!' : '?');
        if (!e.label.empty()) out << " label " << e.label;
        out << '\n';
    }
}

}  // namespace

std::string serialize(const Network& n) {
    std::ostringstream out;
    for (std::size_t i = 0; i < n.components.size(); ++i) {
        if (i > 0) out << '\n';
        serialize_automaton(out, n.components[i]);
    }
    const bool trivial =
        n.components.size() == 1 && n.name == n.components.front().name;
    if (!trivial) {
        out << '\n' << "network " << n.name << " =";
        for (std::size_t i = 0; i < n.components.size(); ++i) {
            if (i > 0) out << " ||";
            out << ' ' << n.components[i].name;
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

namespace {

struct NormalEdge {
    std::string src;
    std::string tgt;
    std::string label;
    Guard guard;
    std::vector<int> resets;
    std::optional<Sync> sync;

    friend bool operator==(const NormalEdge&, const NormalEdge&) = default;
};

bool automata_equal(const TimedAutomaton& a, const TimedAutomaton& b) {
    if (a.name != b.name || a.clock_names != b.clock_names ||
        a.locations.size() != b.locations.size() || a.edges.size() != b.edges.size()) {
        return false;
    }
    auto sorted_locations = [](const TimedAutomaton& t) {
        std::vector<Location> ls = t.locations;
        std::sort(ls.begin(), ls.end(),
                  [](const Location& x, const Location& y) { return x.name < y.name; });
        return ls;
    };
    if (sorted_locations(a) != sorted_locations(b)) return false;
    auto named_edges = [](const TimedAutomaton& t) {
        std::vector<NormalEdge> es;
        es.reserve(t.edges.size());
        for (const Edge& e : t.edges) {
            es.push_back(NormalEdge{t.locations[static_cast<std::size_t>(e.src)].name,
                                    t.locations[static_cast<std::size_t>(e.tgt)].name,
                                    e.label, e.guard, e.resets, e.sync});
        }
        return es;
    };
    return named_edges(a) == named_edges(b);
}

}  // namespace

bool structurally_equal(const Network& a, const Network& b) {
    if (a.name != b.name || a.components.size() != b.components.size()) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        if (!automata_equal(a.components[i], b.components[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const Network& n) {
    std::ostringstream out;
    out << "digraph model {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=ellipse fontsize=10];\n";
    for (std::size_t k = 0; k < n.components.size(); ++k) {
        const TimedAutomaton& a = n.components[k];
        const std::string prefix = "c" + std::to_string(k) + "_";
        if (n.components.size() > 1) {
            out << "  subgraph cluster_" << k << " {\n";
            out << "    label=\"" << dot_escape(a.name) << "\";\n";
        }
        for (std::size_t l = 0; l < a.locations.size(); ++l) {
            const Location& loc = a.locations[l];
            out << "    " << prefix << l << " [label=\"" << dot_escape(loc.name);
            if (!loc.invariant.empty()) {
                out << "\\n" << dot_escape(conjunction_text(a, loc.invariant));
            }
            out << '"';
            if (loc.final) out << " shape=doublecircle";
            out << "];\n";
            if (loc.initial) {
                out << "    " << prefix << "init" << l << " [shape=point label=\"\"];\n";
                out << "    " << prefix << "init" << l << " -> " << prefix << l << ";\n";
            }
        }
        for (const Edge& e : a.edges) {
            out << "    " << prefix << e.src << " -> " << prefix << e.tgt << " [label=\"";
            std::vector<std::string> parts;
            if (e.sync) parts.push_back(e.sync->channel + (e.sync->emit ? "!" : "?"));
            if (!e.label.empty()) parts.push_back(e.label);
            if (!e.guard.empty()) parts.push_back(conjunction_text(a, e.guard));
            if (!e.resets.empty()) {
                std::string r = "reset ";
                for (std::size_t i = 0; i < e.resets.size(); ++i) {
                    if (i > 0) r += ',';
                    r += a.clock_names[static_cast<std::size_t>(e.resets[i]) - 1];
                }
                parts.push_back(r);
            }
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i > 0) out << "\\n";
                out << dot_escape(parts[i]);
            }
            out << "\"];\n";
        }
        if (n.components.size() > 1) out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const ZoneGraph& graph, const TimedAutomaton& a) {
    std::ostringstream out;
    out << "digraph zones {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=box fontsize=9];\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const ZoneGraph::Node& node = graph.nodes[i];
        out << "  s" << i << " [label=\""
            << dot_escape(a.locations[static_cast<std::size_t>(node.location)].name)
            << " | " << dot_escape(node.zone_text) << " | sts=" << node.sts << "\"];\n";
    }
    for (const ZoneGraph::Arc& arc : graph.arcs) {
        out << "  s" << arc.from << " -> s" << arc.to;
        out << " [label=\"" << dot_escape(arc.label) << '"';
        if (arc.on_witness_cycle) out << " color=red penwidth=2";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace tawcet
