#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace sgf {

using EdgeSet = std::set<int>;
using VertexSet = std::set<int>;

/// One edge of a signed multigraph. Loops (u == v) and parallel edges are
/// allowed; ids are unique and survive subgraph extraction and contraction.
struct Edge {
    int id = -1;
    int u = 0;
    int v = 0;
    int sign = 1; // +1 or -1

    bool is_loop() const { return u == v; }
    int endpoint(int end) const { return end == 0 ? u : v; } // end 0 is the u side
    int other(int w) const { return w == u ? v : u; }
    bool incident(int w) const { return u == w || v == w; }
};

/// Half edge: an (edge, end) pair. A loop owns both half edges at one vertex.
struct HalfEdge {
    int edge_id = -1;
    int end = 0; // 0 = u side, 1 = v side
};

class SignedGraph {
public:
    SignedGraph() = default;
    SignedGraph(std::vector<int> vertices, std::vector<Edge> edges);

    // Builds from (u, v, sign) triples; edge ids are 0..m-1 in input order,
    // the vertex set is inferred from endpoints.
    static SignedGraph from_triples(const std::vector<std::tuple<int, int, int>>& triples);

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(int v) const;
    bool has_edge(int id) const;
    const Edge& edge(int id) const;

    // All half edges at v; a loop appears twice (end 0 and end 1).
    const std::vector<HalfEdge>& half_edges_at(int v) const;
    int degree(int v) const; // loops count twice

    EdgeSet edge_id_set() const;
    EdgeSet negative_edges() const;
    int max_edge_id() const;

private:
    std::vector<int> vertices_;       // sorted, unique
    std::vector<Edge> edges_;         // unique ids
    std::map<int, int> edge_index_;   // id -> position in edges_
    std::map<int, std::vector<HalfEdge>> incidence_;

    void build_index();
};

/// Orientation tau: +1/-1 per half edge with tau(h_e^u) * tau(h_e^v) = -sign(e).
struct Orientation {
    std::map<int, std::array<int, 2>> tau;

    int at(int edge_id, int end) const { return tau.at(edge_id)[end]; }
    bool operator==(const Orientation& o) const { return tau == o.tau; }
};

/// Integer flow under a reference orientation. |f(e)| <= bound_k - 1.
struct IntFlow {
    Orientation tau;
    std::map<int, int> values; // edge id -> value; absent means 0
    int bound_k = 2;

    int value(int edge_id) const;
    EdgeSet support() const;
    EdgeSet edges_with_abs(int i) const; // E_{f = +-i}
};

/// Modular flow: values are residues 0..modulus-1 under a reference orientation.
struct ModFlow {
    int modulus = 3;
    Orientation tau;
    std::map<int, int> values;

    int value(int edge_id) const;
    EdgeSet support() const;
};

/// A signed circuit: balanced circuit, short barbell or long barbell.
struct Circuit {
    std::vector<int> edge_ids;   // edge_ids[i] joins vertex_seq[i] and vertex_seq[i+1 mod n]
    std::vector<int> vertex_seq; // distinct vertices in traversal order

    std::size_t length() const { return edge_ids.size(); }
    EdgeSet edge_set() const { return EdgeSet(edge_ids.begin(), edge_ids.end()); }
};

enum class SignedCircuitKind { BalancedCircuit, ShortBarbell, LongBarbell };

struct SignedCircuit {
    SignedCircuitKind kind = SignedCircuitKind::BalancedCircuit;
    std::vector<Circuit> circuits;  // 1 for balanced, 2 for barbells
    std::vector<int> path_edges;    // nontrivial only for long barbells
    std::vector<int> path_vertices; // endpoints first/last; meets circuits only there

    EdgeSet edge_set() const;
};

/// verify_flow outcome; empty report means the flow is valid.
struct VerifyReport {
    std::vector<std::string> orientation_errors;
    std::vector<std::pair<int, int>> boundary_violations; // (vertex, value)
    std::vector<int> bound_violations;                    // edge ids with |f| > k-1
    std::vector<int> zero_edges;                          // only when nowhere-zero required

    bool ok() const
    {
        return orientation_errors.empty() && boundary_violations.empty()
            && bound_violations.empty() && zero_edges.empty();
    }
    std::string to_string() const;
};

struct SwitchResult {
    SignedGraph graph;
    Orientation tau;
    std::optional<IntFlow> flow;
};

/// Result of contracting an edge set: quotient graph plus correspondence.
struct Contraction {
    SignedGraph graph;
    std::map<int, int> vertex_map;  // original vertex -> representative in quotient
    std::vector<int> deleted_edges; // contracted positive edges
    std::vector<int> kept_loops;    // contracted negative edges, kept as loops
};

// --- operations ---------------------------------------------------------

SignedGraph build_graph(const std::vector<std::tuple<int, int, int>>& triples);

// Deterministic orientation: positive edge points from its smaller endpoint,
// negative edges (and negative loops) carry +1 on both half edges; a positive
// loop is +1 on end 0 and -1 on end 1.
Orientation default_orientation(const SignedGraph& g);

// Per-edge rule behind default_orientation; depends only on (u, v, sign).
std::array<int, 2> canonical_tau(const Edge& e);

bool orientation_consistent(const SignedGraph& g, const Orientation& tau);

int boundary(const SignedGraph& g, const Orientation& tau,
             const std::map<int, int>& values, int v);
int boundary(const SignedGraph& g, const IntFlow& f, int v);

VerifyReport verify_flow(const SignedGraph& g, const IntFlow& f, bool require_nowhere_zero);
bool is_zk_flow(const SignedGraph& g, const ModFlow& f, bool require_nowhere_zero);

SwitchResult switch_graph(const SignedGraph& g, const Orientation& tau,
                          const IntFlow* flow, const VertexSet& U);

IntFlow combine_flows(const std::vector<std::pair<int, IntFlow>>& terms);

Contraction contract(const SignedGraph& g, const EdgeSet& s);

// Subgraph with the given edges; vertices are the touched endpoints unless
// keep_all_vertices is set. Edge ids are preserved.
SignedGraph edge_subgraph(const SignedGraph& g, const EdgeSet& ids,
                          bool keep_all_vertices = false);

// +1 if `from` and `to` orient the edge the same way, otherwise -1; flow
// values transported across orientations are multiplied by this factor.
int reorient_value_sign(const Edge& e, const Orientation& from, const Orientation& to);

// Re-expresses a flow under the default orientation of g.
IntFlow to_default_orientation(const SignedGraph& g, const IntFlow& f);

bool circuit_is_balanced(const SignedGraph& g, const Circuit& c);
int circuit_negative_count(const SignedGraph& g, const std::vector<int>& edge_ids);

// Validates the shape invariants of a signed circuit against g.
void validate_signed_circuit(const SignedGraph& g, const SignedCircuit& sc);

// --- shared helpers -----------------------------------------------------

// Connected components of the subgraph spanned by `ids`; each component is
// returned as an edge set. Vertices without edges in `ids` contribute nothing.
std::vector<EdgeSet> edge_components(const SignedGraph& g, const EdgeSet& ids);

// Vertices incident with at least one edge of `ids`.
VertexSet touched_vertices(const SignedGraph& g, const EdgeSet& ids);

// Whether every vertex has even degree within `ids`.
bool subset_is_eulerian(const SignedGraph& g, const EdgeSet& ids);

/// One traversal step of a closed walk: edge crossed from tail to head.
struct WalkStep {
    int edge_id;
    int tail;      // vertex the step leaves
    int head;      // vertex the step enters
    int tail_end;  // end selector at tail
    int head_end;  // end selector at head
};

// Hierholzer walk over one eulerian edge set (must be connected and even);
// starts at `start` when it touches the set, else at the smallest vertex.
std::vector<WalkStep> eulerian_circuit(const SignedGraph& g, const EdgeSet& component,
                                       int start = -1);

// All simple circuits of g with at most max_edges edges (loops and digons
// included); intended for small instances only.
std::vector<Circuit> enumerate_circuits(const SignedGraph& g, std::size_t max_edges);

} // namespace sgf
