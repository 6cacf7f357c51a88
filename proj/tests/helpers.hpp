#pragma once

#include "sgf/analysis.hpp"
#include "sgf/core.hpp"
#include "sgf/io.hpp"
#include "sgf/oracle.hpp"

#include <random>
#include <vector>

namespace sgf::testing {

inline SignedGraph digon_neg() { return make_family("digon", 0); }
inline SignedGraph short_barbell() { return make_family("short-barbell", 0); }
inline SignedGraph long_barbell(int path_len = 1) { return make_family("long-barbell", path_len); }

inline SignedGraph k4_signed(const EdgeSet& negatives)
{
    return with_signature(make_family("k4", 0), negatives);
}

// circuit with prescribed negative positions
inline SignedGraph circuit_signed(int n, const EdgeSet& negatives)
{
    return with_signature(make_family("circuit", n), negatives);
}

// simple deterministic multigraph sampler for property tests
class GraphSampler {
public:
    explicit GraphSampler(unsigned seed) : rng_(seed) {}

    SignedGraph random_connected(int max_vertices, int max_edges)
    {
        int n = 1 + static_cast<int>(rng_() % max_vertices);
        int m = 1 + static_cast<int>(rng_() % max_edges);
        if (m < n - 1)
            m = n - 1 + static_cast<int>(rng_() % 3);
        std::vector<std::tuple<int, int, int>> t;
        for (int i = 1; i < n; ++i) {
            int j = static_cast<int>(rng_() % i);
            t.push_back({j, i, rng_() % 2 ? 1 : -1});
        }
        while (static_cast<int>(t.size()) < m) {
            int u = static_cast<int>(rng_() % n);
            int v = static_cast<int>(rng_() % n);
            t.push_back({u, v, rng_() % 2 ? 1 : -1});
        }
        return build_graph(t);
    }

    VertexSet random_vertex_subset(const SignedGraph& g)
    {
        VertexSet u;
        for (int v : g.vertices())
            if (rng_() % 2)
                u.insert(v);
        return u;
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

} // namespace sgf::testing
