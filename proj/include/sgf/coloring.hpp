#pragma once

#include "sgf/core.hpp"

#include <optional>
#include <vector>

namespace sgf {

/// Proper 3-edge-coloring of a cubic graph: three perfect matchings.
struct EdgeColoring {
    EdgeSet r, b, y;

    const EdgeSet& klass(int i) const { return i == 0 ? r : (i == 1 ? b : y); }
    int class_of(int edge_id) const;
    bool contains(int edge_id) const;
};

// Backtracking search, most-constrained-edge first, deterministic for fixed
// edge ids. Pre: g cubic and loopless. Empty optional means class two.
std::optional<EdgeColoring> three_edge_color(const SignedGraph& g);

// Relabels classes so |R cap E_N| == |B cap E_N| (mod 2), preferring the
// lexicographically smallest relabeling.
EdgeColoring order_classes(const EdgeColoring& col, const SignedGraph& g);

// The circuits of the 2-factor spanned by two color classes.
std::vector<Circuit> two_factor(const SignedGraph& g, const EdgeSet& class1,
                                const EdgeSet& class2);

bool coloring_is_proper(const SignedGraph& g, const EdgeColoring& col);

} // namespace sgf
