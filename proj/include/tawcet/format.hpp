// Copyright (c) tawcet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// ============================================================================
// format.hpp — the .ta textual model format: parser with positioned
//              diagnostics, canonical serializer, DOT export
// ============================================================================
//
// Line-oriented grammar, '#' starts a comment:
//
//   automaton <name>
//     clocks <id> <id> ...
//     location <id> [initial] [final] [invariant <conj>]
//     edge <src> -> <tgt> [guard <conj>] [reset <id>,<id>] [sync <chan>! | <chan>?]
//          [label <act>]
//   network <name> = <a1> || <a2> || ...
//
//   <conj> := <atom> { '&&' <atom> }
//   <atom> := <clock> ('<' | '<=' | '==' | '>=' | '>') <nat>
//
// Clock-difference atoms are rejected with a dedicated diagnostic.

#ifndef TAWCET_FORMAT_HPP
#define TAWCET_FORMAT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "tawcet/engine.hpp"
#include "tawcet/ta.hpp"

namespace tawcet {

/// Parse failure with a 1-based source position. `col` points into the
/// offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + message),
          line_(line),
          col_(col),
          message_(message) {}

    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int col_;
    std::string message_;
};

/// A parsed network declaration: the named parallel composition.
struct NetworkDecl {
    std::string name;
    std::vector<std::string> component_names;
};

/// Everything a .ta file declares.
struct ModelDocument {
    std::vector<TimedAutomaton> automata;
    std::vector<NetworkDecl> networks;
};

/// Parses a document. Throws ParseError on syntax errors and on semantic
/// errors with a position (undeclared clock, diagonal constraint,
/// duplicate location, unknown location).
ModelDocument parse_document(const std::string& text);

/// Parses and resolves a document to a single network: the declared
/// network when there is exactly one, otherwise the sole automaton as a
/// one-component network. Throws ParseError when the document declares
/// several networks or several loose automata.
Network parse_model(const std::string& text);

/// Canonical text form: automata in declaration order, locations sorted by
/// name, edges in declaration order, one construct per line.
std::string serialize(const Network& n);

/// Structural equality up to location order; source positions and
/// declaration order of locations do not participate.
bool structurally_equal(const Network& a, const Network& b);

/// DOT digraph of the network's automata (clustered when several).
std::string to_dot(const Network& n);

/// DOT digraph of an explored zone graph; nodes carry
/// "location | constraints | sts" labels and witness-cycle arcs are
/// highlighted.
std::string to_dot(const ZoneGraph& graph, const TimedAutomaton& a);

}  // namespace tawcet

#endif  // TAWCET_FORMAT_HPP
