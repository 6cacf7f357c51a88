#pragma once

#include "sgf/coloring.hpp"
#include "sgf/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sgf {

/// A constructed flow plus the case trace of the branch that produced it.
struct FlowResult {
    IntFlow flow;
    int k = 0;
    std::vector<std::string> trace;
    bool exceptional = false; // the 10-flow case
};

// Nowhere-zero flow of a connected, loopless, flow-admissible cubic signed
// graph with the given (or computed) proper 3-edge-coloring: an 8-NZF except
// in the exceptional parity case, which yields a 10-NZF.
FlowResult cubic_flow(const SignedGraph& g,
                      const std::optional<EdgeColoring>& coloring = std::nullopt);

/// Gadget bookkeeping of one blown-up vertex.
struct BlowUpGadget {
    int original_vertex;
    std::vector<int> ring_vertices;    // attachment circuit, in order
    std::vector<int> chain_vertices;   // subdivision chain (may be empty)
    EdgeSet positive_edges;            // contract these to undo the gadget
    std::map<int, int> loop_to_partner; // original loop id -> parallel positive edge
};

struct BlowUpResult {
    SignedGraph graph; // cubic, loopless
    std::vector<BlowUpGadget> gadgets;
    EdgeSet contract_back;           // all-positive edge set restoring g
    std::map<int, int> vertex_home;  // original vertex -> a gadget/original vertex
};

// Replaces every vertex of degree >= 4 (with t negative loops) by an
// all-positive circuit of length d - 2t whose one edge is subdivided into a
// chain carrying t unbalanced digons. Pre: minimum degree 3, no positive
// loops, and every vertex satisfies d - 2t >= 2.
BlowUpResult blow_up(const SignedGraph& g);

// Suppress degree-2 vertices, blow up, 3-edge-color, run the cubic pipeline,
// and contract the gadgets back. Pre: bridgeless and flow-admissible;
// planarity itself is never checked, only 3-edge-colorability of the blow-up.
FlowResult planar_flow(const SignedGraph& g);

// Nowhere-zero 8-flow of a flow-admissible hamiltonian signed graph; the
// Hamilton circuit is supplied as a vertex sequence.
FlowResult hamiltonian_flow(const SignedGraph& g, const std::vector<int>& hamilton_cycle);

// Resolves a vertex sequence into a circuit of g, picking the smallest unused
// edge id between consecutive vertices.
Circuit circuit_from_vertices(const SignedGraph& g, const std::vector<int>& vertices);

} // namespace sgf
