#pragma once

#include "sgf/core.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sgf {

/// Parse failure with the offending 1-based line number.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_)
    {
    }
};

// GraphFile: header `sg <n> <m>`, then m lines `e <u> <v> <+|->`;
// `#` starts a comment; vertex ids are 0-based integers below n.
SignedGraph parse_graph(std::istream& in);
void emit_graph(std::ostream& out, const SignedGraph& g);

// FlowFile: header `flow <k>`, then `f <edge-index> <value>` per edge; the
// orientation is implied canonical. `#` comments allowed.
IntFlow parse_flow(std::istream& in, const SignedGraph& g);
void emit_flow(std::ostream& out, const IntFlow& f, const SignedGraph& g);

// DOT rendering; negative edges dashed.
void emit_dot(std::ostream& out, const SignedGraph& g);

// Built-in graph families for `gen`.
SignedGraph make_family(const std::string& name, int n);

} // namespace sgf
