#pragma once

#include "sgf/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sgf {

/// Either a switching set certifying all-positive equivalence, or an
/// unbalanced circuit found in the way.
struct BalanceWitness {
    bool balanced = false;
    VertexSet switching_set;                // valid when balanced
    std::optional<Circuit> unbalanced_circuit; // valid when not
};

/// Eulerian components of a support subgraph, tagged by negative-edge parity.
struct SupportComponent {
    EdgeSet edges;
    int negative_count = 0;
    bool odd() const { return negative_count % 2 != 0; }
};

struct SupportComponents {
    std::vector<SupportComponent> components;
    int odd_count() const
    {
        int c = 0;
        for (const auto& m : components)
            if (m.odd())
                ++c;
        return c;
    }
};

enum class InadmissibleReason {
    None,
    OneNegativeEdgeEquivalent,
    BridgeWithBalancedComponent,
};

struct AdmissibilityReport {
    bool admissible = true;
    InadmissibleReason reason = InadmissibleReason::None;
    std::optional<int> witness_edge; // offending edge / bridge
    std::string detail;
};

BalanceWitness is_balanced(const SignedGraph& g);
BalanceWitness is_balanced(const SignedGraph& g, const EdgeSet& within);

std::optional<Circuit> find_unbalanced_circuit(const SignedGraph& g, const EdgeSet& within);

// Pre: every vertex has even degree within `support` (throws otherwise).
SupportComponents support_components(const SignedGraph& g, const EdgeSet& support);

// Bouchet's characterization, evaluated per connected component.
AdmissibilityReport is_flow_admissible(const SignedGraph& g);

// True iff every fundamental circuit of the spanning tree T is balanced.
bool check_balanced_extension(const SignedGraph& g, const EdgeSet& tree);

// Bridges of g (multigraph-aware: parallel edges are never bridges).
std::vector<int> find_bridges(const SignedGraph& g);

bool is_connected(const SignedGraph& g);

// Vertex sets of the connected components of g (isolated vertices included).
std::vector<VertexSet> vertex_components(const SignedGraph& g);

} // namespace sgf
