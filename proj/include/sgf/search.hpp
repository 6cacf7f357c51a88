#pragma once

#include "sgf/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace sgf {

/// Statistics of one backtracking run.
struct SearchStats {
    std::uint64_t nodes = 0;
};

// Backtracking over per-edge candidate values under the given orientation,
// with per-vertex partial-boundary pruning and most-saturated-vertex-first
// edge selection. Edges absent from `candidates` are fixed at 0. Returns the
// first assignment with zero boundary everywhere, in the deterministic order
// induced by the candidate lists. `negate_symmetry` restricts the first
// assigned edge to nonnegative values; only sound when every candidate list
// is closed under negation.
std::optional<std::map<int, int>> constrained_flow_search(
    const SignedGraph& g, const Orientation& tau,
    const std::map<int, std::vector<int>>& candidates,
    SearchStats* stats = nullptr, bool negate_symmetry = false);

} // namespace sgf
