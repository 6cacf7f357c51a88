#include "doctest.h"
#include "helpers.hpp"

#include "sgf/analysis.hpp"
#include "sgf/oracle.hpp"

#include <algorithm>

using namespace sgf;
using namespace sgf::testing;

TEST_CASE("balance detection and witnesses")
{
    SignedGraph k4 = make_family("k4", 0);
    BalanceWitness w = is_balanced(k4);
    CHECK(w.balanced);
    CHECK(w.switching_set.empty());

    BalanceWitness wd = is_balanced(digon_neg());
    CHECK(!wd.balanced);
    REQUIRE(wd.unbalanced_circuit);
    CHECK(wd.unbalanced_circuit->edge_ids.size() == 2);
    CHECK(circuit_negative_count(digon_neg(), wd.unbalanced_circuit->edge_ids) % 2 == 1);

    SignedGraph c4 = circuit_signed(4, {0, 2});
    BalanceWitness wc = is_balanced(c4);
    CHECK(wc.balanced);
    SignedGraph sw = switch_graph(c4, default_orientation(c4), nullptr, wc.switching_set).graph;
    CHECK(sw.negative_edges().empty());
}

TEST_CASE("find_unbalanced_circuit handles loops, factors, and unions")
{
    SignedGraph sb = short_barbell();
    auto c = find_unbalanced_circuit(sb, sb.edge_id_set());
    REQUIRE(c);
    CHECK(c->edge_ids.size() == 1);

    SignedGraph c6 = circuit_signed(6, {});
    CHECK(!find_unbalanced_circuit(c6, c6.edge_id_set()));

    // disjoint union: balanced square + unbalanced square
    std::vector<std::tuple<int, int, int>> t;
    for (int i = 0; i < 4; ++i)
        t.push_back({i, (i + 1) % 4, 1});
    for (int i = 0; i < 4; ++i)
        t.push_back({4 + i, 4 + (i + 1) % 4, i == 0 ? -1 : 1});
    SignedGraph uni = build_graph(t);
    auto cu = find_unbalanced_circuit(uni, uni.edge_id_set());
    REQUIRE(cu);
    CHECK(circuit_negative_count(uni, cu->edge_ids) % 2 == 1);
    for (int id : cu->edge_ids)
        CHECK(id >= 4);
}

TEST_CASE("support components classify parity and reject odd degrees")
{
    SignedGraph sb = short_barbell();
    SupportComponents sc = support_components(sb, sb.edge_id_set());
    CHECK(sc.components.size() == 1);
    CHECK(!sc.components[0].odd());

    SignedGraph lb = long_barbell(1);
    SupportComponents lc = support_components(lb, {0, 2});
    CHECK(lc.components.size() == 2);
    CHECK(lc.odd_count() == 2);

    CHECK_THROWS_AS(support_components(lb, {1}), std::invalid_argument);
}

TEST_CASE("Bouchet admissibility matches its two conditions")
{
    AdmissibilityReport d = is_flow_admissible(digon_neg());
    CHECK(!d.admissible);
    CHECK(d.reason == InadmissibleReason::OneNegativeEdgeEquivalent);

    AdmissibilityReport s = is_flow_admissible(short_barbell());
    CHECK(s.admissible);
    CHECK(exists_k_flow(short_barbell(), 2)); // oracle agrees

    // negative loop at 0, bridge 0-1, balanced triangle at 1
    SignedGraph pendant = build_graph(
        {{0, 0, -1}, {0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 1, 1}});
    AdmissibilityReport p = is_flow_admissible(pendant);
    CHECK(!p.admissible);
    CHECK(p.reason == InadmissibleReason::BridgeWithBalancedComponent);
    CHECK(p.witness_edge == 1);
}

TEST_CASE("admissibility is switching-invariant")
{
    GraphSampler sampler(99);
    for (int i = 0; i < 30; ++i) {
        SignedGraph g = sampler.random_connected(5, 7);
        VertexSet u = sampler.random_vertex_subset(g);
        SignedGraph h = switch_graph(g, default_orientation(g), nullptr, u).graph;
        CHECK(is_flow_admissible(g).admissible == is_flow_admissible(h).admissible);
        CHECK(is_balanced(g).balanced == is_balanced(h).balanced);
    }
}

namespace {

// all spanning trees of a small connected graph, as edge sets
std::vector<EdgeSet> spanning_trees(const SignedGraph& g)
{
    std::vector<int> ids;
    for (const Edge& e : g.edges())
        if (!e.is_loop())
            ids.push_back(e.id);
    std::size_t need = g.vertex_count() - 1;
    std::vector<EdgeSet> out;
    std::vector<int> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == need) {
            EdgeSet t(pick.begin(), pick.end());
            SignedGraph sub = edge_subgraph(g, t, true);
            if (is_connected(sub))
                out.push_back(t);
            return;
        }
        for (std::size_t i = start; i < ids.size(); ++i) {
            pick.push_back(ids[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

TEST_CASE("fundamental-circuit balance agrees with is_balanced on every tree")
{
    SignedGraph k4 = make_family("k4", 0);
    for (const EdgeSet& t : spanning_trees(k4))
        CHECK(check_balanced_extension(k4, t));

    SignedGraph d2 = digon_neg();
    CHECK(!check_balanced_extension(d2, {0}));

    // balanced square with chords, some negative
    SignedGraph g = build_graph({{0, 1, 1},
                                 {1, 2, -1},
                                 {2, 3, 1},
                                 {3, 0, -1},
                                 {0, 2, 1},
                                 {1, 3, 1}});
    bool expected = is_balanced(g).balanced;
    for (const EdgeSet& t : spanning_trees(g))
        CHECK(check_balanced_extension(g, t) == expected);

    GraphSampler sampler(5);
    for (int i = 0; i < 10; ++i) {
        SignedGraph h = sampler.random_connected(5, 7);
        bool exp = is_balanced(h).balanced;
        for (const EdgeSet& t : spanning_trees(h))
            CHECK(check_balanced_extension(h, t) == exp);
    }
}

TEST_CASE("bridges in multigraphs")
{
    SignedGraph lb = long_barbell(2);
    std::vector<int> b = find_bridges(lb);
    CHECK(b == std::vector<int>{1, 2});

    CHECK(find_bridges(digon_neg()).empty());
    CHECK(find_bridges(make_family("k4", 0)).empty());
}
