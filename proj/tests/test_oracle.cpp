#include "doctest.h"
#include "helpers.hpp"

#include "sgf/analysis.hpp"
#include "sgf/oracle.hpp"

using namespace sgf;
using namespace sgf::testing;

TEST_CASE("exists_k_flow on the basic fixtures")
{
    auto sb = exists_k_flow(short_barbell(), 2);
    REQUIRE(sb);
    CHECK(verify_flow(short_barbell(), *sb, true).ok());

    SignedGraph lb = long_barbell(1);
    CHECK(!exists_k_flow(lb, 2));
    auto w3 = exists_k_flow(lb, 3);
    REQUIRE(w3);
    CHECK(verify_flow(lb, *w3, true).ok());

    SignedGraph d2 = digon_neg();
    for (int k = 2; k <= 11; ++k)
        CHECK(!exists_k_flow(d2, k));
}

TEST_CASE("min_flow_number reports ascending feasibility")
{
    OracleReport c = min_flow_number(make_family("circuit", 5), 6);
    REQUIRE(c.min_k);
    CHECK(*c.min_k == 2);

    OracleReport lb = min_flow_number(long_barbell(2), 6);
    REQUIRE(lb.min_k);
    CHECK(*lb.min_k == 3);
    CHECK(!lb.feasible.at(2));
    CHECK(lb.feasible.at(3));
    CHECK(lb.feasible.at(4)); // monotone continuation
    REQUIRE(lb.witness);
    CHECK(verify_flow(long_barbell(2), *lb.witness, true).ok());

    OracleReport none = min_flow_number(digon_neg(), 5);
    CHECK(!none.min_k);
}

TEST_CASE("min flow number is switching-invariant")
{
    GraphSampler sampler(4242);
    for (int i = 0; i < 10; ++i) {
        SignedGraph g = sampler.random_connected(4, 6);
        VertexSet u = sampler.random_vertex_subset(g);
        SignedGraph h = switch_graph(g, default_orientation(g), nullptr, u).graph;
        OracleReport a = min_flow_number(g, 7);
        OracleReport b = min_flow_number(h, 7);
        CHECK(a.min_k == b.min_k);
    }
}

TEST_CASE("signature enumeration counts switching classes")
{
    // a tree: the cut space is everything, one class
    SignedGraph path = build_graph({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    CHECK(enumerate_signatures(path).size() == 1);

    // a circuit: balanced and unbalanced
    SignedGraph c5 = make_family("circuit", 5);
    auto c5reps = enumerate_signatures(c5);
    CHECK(c5reps.size() == 2);

    // K4: 2^(6-3) classes
    SignedGraph k4 = make_family("k4", 0);
    auto reps = enumerate_signatures(k4);
    CHECK(reps.size() == 8);

    // every signature reaches exactly one representative by brute switching
    GraphSampler sampler(1);
    std::set<EdgeSet> repset(reps.begin(), reps.end());
    for (int trial = 0; trial < 20; ++trial) {
        EdgeSet neg;
        for (const Edge& e : k4.edges())
            if (sampler.rng()() % 2)
                neg.insert(e.id);
        // reduce to canonical by trying all switchings
        SignedGraph g = with_signature(k4, neg);
        EdgeSet best = g.negative_edges();
        for (int mask = 0; mask < 16; ++mask) {
            VertexSet u;
            for (int v = 0; v < 4; ++v)
                if ((mask >> v) & 1)
                    u.insert(v);
            EdgeSet cand =
                switch_graph(g, default_orientation(g), nullptr, u).graph.negative_edges();
            if (cand < best)
                best = cand;
        }
        CHECK(repset.count(best) == 1);
    }
}
