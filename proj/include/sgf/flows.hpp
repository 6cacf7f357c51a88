#pragma once

#include "sgf/analysis.hpp"
#include "sgf/core.hpp"

#include <optional>
#include <vector>

namespace sgf {

/// Outcome of the 2-flow construction: either a flow with the requested
/// support or an odd component witnessing nonexistence.
struct TwoFlowOutcome {
    std::optional<IntFlow> flow;
    std::optional<EdgeSet> odd_component;
};

// 2-flow with supp(f) = support, which exists iff every component of the
// (eulerian) support has an even number of negative edges.
TwoFlowOutcome two_flow_eulerian(const SignedGraph& g, const EdgeSet& support);

// 2-flow on a balanced circuit, 3-flow on a barbell: circuit edges +-1,
// path edges +-2.
IntFlow signed_circuit_flow(const SignedGraph& g, const SignedCircuit& sc);

/// One closure step: a balanced circuit and the (at most two) edges it
/// contributed to the growing subgraph.
struct Phi2Step {
    Circuit circuit;
    EdgeSet new_edges;
};

struct Phi2Certificate {
    std::vector<Phi2Step> steps;
    EdgeSet closure;
};

// Greedy fixed point of the operation "add a balanced circuit contributing
// at most two new edges"; shortest circuit first, lexicographic tie-break.
Phi2Certificate phi2_closure(const SignedGraph& g, const EdgeSet& h);

// Z_3-flow nonzero on E(G) - E(H); pre: phi2_closure(g, h) covers g.
ModFlow z3_flow_phi2(const SignedGraph& g, const EdgeSet& h);

// Integer 4-flow congruent to f1 mod 3 with supp(f1) valued in {+-1, +-2};
// pre: g bridgeless. Exhaustion signals an implementation bug.
IntFlow lift_z3_to_4flow(const SignedGraph& g, const ModFlow& f1);

// 3-flow with E_{f=+-1} = support exactly and the +-2 edges acyclic after
// contracting the support; pre: g connected, support eulerian with an even
// number of odd components.
IntFlow lift_z2_to_3flow(const SignedGraph& g, const EdgeSet& support);

// 5-flow for supports whose odd-component count is odd and at least three;
// satisfies: (1) supp(f)/support is acyclic, (2) support edges valued in
// 1..3 in absolute value, negative support loops in {1,2}.
IntFlow five_flow_odd_components(const SignedGraph& g, const EdgeSet& support);

/// Cosegment data for one component of g - E(C) (Branch B of the circuit
/// cover construction).
struct CosegmentEntry {
    EdgeSet component;
    std::vector<int> attachments;    // vertices on C, in circuit order
    std::vector<int> segment_edges;  // the unique negative segment, along C
    int segment_from = -1, segment_to = -1;
    std::vector<int> cosegment_edges; // complement arc
    int x = -1, y = -1;               // cosegment runs x -> y in circuit order
};

struct CosegmentCover {
    Circuit circuit;
    std::vector<EdgeSet> components;
    std::vector<CosegmentEntry> entries; // one per component with a nonempty cosegment
    std::vector<int> cover;              // indices into entries, cyclic order
    std::vector<std::vector<int>> path_edges;    // P_i per cover member
    std::vector<std::vector<int>> path_vertices; // x_i .. y_i
};

// Minimal cover of C by cosegments; pre: every component determines exactly
// one negative segment. Throws when no cover exists (the intersection of the
// negative segments is nonempty, contradicting flow admissibility).
CosegmentCover minimal_cosegment_cover(const SignedGraph& g, const Circuit& c,
                                       const std::vector<EdgeSet>& components);

// 4-flow whose support contains E(C); in the support subgraph every vertex
// off C has degree at most 3 and at most one such vertex has degree 3.
// Pre: g flow-admissible and connected, C unbalanced, g - E(C) balanced.
IntFlow cover_circuit_4flow(const SignedGraph& g, const Circuit& c);

// Extends a k-NZF of g/C to one of g across a chordless all-positive circuit
// with 2 <= |delta(V(C))| <= 3 boundary edges, k >= 4.
IntFlow extend_flow_contraction(const SignedGraph& g, const Circuit& c,
                                const IntFlow& flow_on_contraction, int k);

// Values (under the per-edge default orientation) completing a circuit whose
// vertices receive the given external boundary injections; every circuit edge
// ends up nonzero with |value| <= k-1.
std::map<int, int> extend_circuit_values(const SignedGraph& g, const Circuit& c,
                                         const std::map<int, int>& injections, int k);

// Internally vertex-disjoint paths from source to t1 and t2 within the given
// edge set (shared vertex: source only). Each path is (vertices, edges).
struct DisjointPaths {
    std::vector<int> vertices1, edges1;
    std::vector<int> vertices2, edges2;
};
std::optional<DisjointPaths> two_disjoint_paths(const SignedGraph& g, const EdgeSet& within,
                                                int source, int t1, int t2);

} // namespace sgf
