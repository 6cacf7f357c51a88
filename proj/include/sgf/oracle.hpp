#pragma once

#include "sgf/core.hpp"
#include "sgf/search.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace sgf {

/// Ground-truth answer for one graph: minimum flow number up to a bound.
struct OracleReport {
    std::optional<int> min_k;
    std::optional<IntFlow> witness;
    std::map<int, bool> feasible; // k -> has a k-NZF
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

// Exhaustive search for a nowhere-zero k-flow under the default orientation;
// the first edge is fixed positive (global negation symmetry).
std::optional<IntFlow> exists_k_flow(const SignedGraph& g, int k,
                                     SearchStats* stats = nullptr);

// Ascending search for the minimum k with a k-NZF, up to kmax.
OracleReport min_flow_number(const SignedGraph& g, int kmax = 11);

// Canonical negative-edge sets: one representative per switching class,
// lexicographically least under the fixed edge order.
std::vector<EdgeSet> enumerate_signatures(const SignedGraph& base);

// The base graph re-signed so exactly the given edges are negative.
SignedGraph with_signature(const SignedGraph& base, const EdgeSet& negatives);

} // namespace sgf
