#include "doctest.h"
#include "helpers.hpp"

#include "sgf/analysis.hpp"
#include "sgf/core.hpp"
#include "sgf/oracle.hpp"

using namespace sgf;
using namespace sgf::testing;

TEST_CASE("build_graph infers vertices and keeps input order")
{
    SignedGraph d2 = build_graph({{0, 1, 1}, {0, 1, -1}});
    CHECK(d2.vertex_count() == 2);
    CHECK(d2.edge_count() == 2);
    CHECK(d2.negative_edges() == EdgeSet{1});

    SignedGraph sb = build_graph({{0, 0, -1}, {0, 0, -1}});
    CHECK(sb.vertex_count() == 1);
    CHECK(sb.edge_count() == 2);
    CHECK(sb.negative_edges().size() == 2);

    SignedGraph k4 = make_family("k4", 0);
    CHECK(k4.vertex_count() == 4);
    CHECK(k4.edge_count() == 6);
    CHECK(k4.negative_edges().empty());

    CHECK(build_graph({}).edge_count() == 0);
}

TEST_CASE("default orientation satisfies the half-edge product rule")
{
    SignedGraph g = build_graph({{0, 1, 1}, {0, 1, -1}, {2, 2, -1}, {1, 2, 1}});
    Orientation tau = default_orientation(g);
    CHECK(orientation_consistent(g, tau));
    // positive edge points away from its smaller endpoint
    CHECK(tau.at(0, 0) == 1);
    CHECK(tau.at(0, 1) == -1);
    // negative edges carry equal half-edge values
    CHECK(tau.at(1, 0) == 1);
    CHECK(tau.at(1, 1) == 1);
    CHECK(tau.at(2, 0) == 1);
    CHECK(tau.at(2, 1) == 1);
}

TEST_CASE("boundary sums half-edge contributions")
{
    SignedGraph g = build_graph({{0, 1, 1}});
    IntFlow f;
    f.tau = default_orientation(g);
    f.values[0] = 3;
    f.bound_k = 4;
    CHECK(boundary(g, f, 0) == 3);
    CHECK(boundary(g, f, 1) == -3);

    SignedGraph loop = build_graph({{0, 0, -1}});
    IntFlow fl;
    fl.tau = default_orientation(loop);
    fl.values[0] = 1;
    CHECK(boundary(loop, fl, 0) == 2);

    SignedGraph sb = short_barbell();
    IntFlow fs;
    fs.tau = default_orientation(sb);
    fs.values[0] = 1;
    fs.values[1] = -1;
    CHECK(boundary(sb, fs, 0) == 0);
}

TEST_CASE("verify_flow accepts the short barbell 2-flow and a circulation")
{
    SignedGraph sb = short_barbell();
    IntFlow f;
    f.tau = default_orientation(sb);
    f.values = {{0, 1}, {1, -1}};
    f.bound_k = 2;
    CHECK(verify_flow(sb, f, true).ok());

    // f = 1 around the circuit; the closing edge runs against its canonical
    // direction, so it carries -1 under the default orientation
    SignedGraph c4 = make_family("circuit", 4);
    IntFlow fc;
    fc.tau = default_orientation(c4);
    fc.values = {{0, 1}, {1, 1}, {2, 1}, {3, -1}};
    fc.bound_k = 2;
    CHECK(verify_flow(c4, fc, true).ok());
}

TEST_CASE("the unbalanced digon admits no nowhere-zero 2-flow")
{
    // all four +-1 assignments fail, matching the exhaustive oracle
    SignedGraph d2 = digon_neg();
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            IntFlow f;
            f.tau = default_orientation(d2);
            f.values = {{0, a}, {1, b}};
            f.bound_k = 2;
            CHECK(!verify_flow(d2, f, true).ok());
        }
    CHECK(!exists_k_flow(d2, 2));
}

TEST_CASE("switching flips exactly the cut and preserves flows")
{
    SignedGraph d2 = digon_neg();
    Orientation tau = default_orientation(d2);
    SwitchResult sw = switch_graph(d2, tau, nullptr, {0});
    CHECK(sw.graph.negative_edges().size() == 1);
    CHECK(sw.graph.negative_edges() != d2.negative_edges());
    CHECK(orientation_consistent(sw.graph, sw.tau));

    SignedGraph sb = short_barbell();
    SwitchResult sw2 = switch_graph(sb, default_orientation(sb), nullptr, {0});
    CHECK(sw2.graph.negative_edges() == sb.negative_edges());

    // involution
    SwitchResult back = switch_graph(sw.graph, sw.tau, nullptr, {0});
    CHECK(back.graph.negative_edges() == d2.negative_edges());
    for (const Edge& e : back.graph.edges())
        CHECK(e.sign == d2.edge(e.id).sign);
    CHECK(back.tau == tau);
}

TEST_CASE("switching keeps flows valid, for random graphs and cuts")
{
    GraphSampler sampler(20260810);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        SignedGraph g = sampler.random_connected(5, 7);
        auto wit = exists_k_flow(g, 6);
        if (!wit)
            continue;
        ++checked;
        VertexSet u = sampler.random_vertex_subset(g);
        SwitchResult sw = switch_graph(g, wit->tau, &*wit, u);
        CHECK(verify_flow(sw.graph, *sw.flow, true).ok());
    }
    CHECK(checked > 5);
}

TEST_CASE("switching preserves circuit sign parity")
{
    GraphSampler sampler(42);
    for (int i = 0; i < 10; ++i) {
        SignedGraph g = sampler.random_connected(5, 8);
        VertexSet u = sampler.random_vertex_subset(g);
        SignedGraph h = switch_graph(g, default_orientation(g), nullptr, u).graph;
        for (const Circuit& c : enumerate_circuits(g, 10)) {
            int before = circuit_negative_count(g, c.edge_ids) % 2;
            int after = circuit_negative_count(h, c.edge_ids) % 2;
            CHECK(before == after);
        }
    }
}

TEST_CASE("combine_flows is linear and rejects mixed orientations")
{
    SignedGraph sb = short_barbell();
    IntFlow f;
    f.tau = default_orientation(sb);
    f.values = {{0, 1}, {1, -1}};
    f.bound_k = 2;
    IntFlow zero = combine_flows({{1, f}, {-1, f}});
    CHECK(zero.values.empty());

    IntFlow tripled = combine_flows({{2, f}, {1, f}});
    CHECK(tripled.value(0) == 3);
    CHECK(tripled.bound_k == 4);
    for (int v : sb.vertices())
        CHECK(boundary(sb, tripled, v) == 0);

    IntFlow other = f;
    other.tau.tau[0] = {other.tau.at(0, 0) * -1, other.tau.at(0, 1) * -1};
    CHECK_THROWS_AS(combine_flows({{1, f}, {1, other}}), std::invalid_argument);
}

TEST_CASE("contraction follows the signed rule")
{
    SignedGraph d2 = digon_neg();

    Contraction cpos = contract(d2, {0}); // contract the positive edge
    CHECK(cpos.graph.vertex_count() == 1);
    CHECK(cpos.graph.edge_count() == 1);
    CHECK(cpos.graph.edge(1).is_loop());
    CHECK(cpos.graph.edge(1).sign == -1);

    // contracting the negative edge keeps it as a negative loop; the other
    // edge becomes a positive loop
    Contraction cneg = contract(d2, {1});
    CHECK(cneg.graph.vertex_count() == 1);
    CHECK(cneg.graph.edge_count() == 2);
    CHECK(cneg.graph.edge(1).is_loop());
    CHECK(cneg.graph.edge(1).sign == -1);
    CHECK(cneg.graph.edge(0).is_loop());
    CHECK(cneg.graph.edge(0).sign == 1);

    SignedGraph k4 = make_family("k4", 0);
    // a triangle spans vertices 0,1,2: edges 01, 02, 12
    EdgeSet tri;
    for (const Edge& e : k4.edges())
        if (e.u != 3 && e.v != 3)
            tri.insert(e.id);
    Contraction ck = contract(k4, tri);
    CHECK(ck.graph.vertex_count() == 2);
    CHECK(ck.graph.edge_count() == 3);
    for (const Edge& e : ck.graph.edges()) {
        CHECK(!e.is_loop());
        CHECK(e.sign == 1);
    }
}

TEST_CASE("a flow avoiding the contracted set restricts to the quotient")
{
    GraphSampler sampler(7);
    int checked = 0;
    for (int i = 0; i < 30 && checked < 5; ++i) {
        SignedGraph g = sampler.random_connected(5, 7);
        auto wit = exists_k_flow(g, 5);
        if (!wit)
            continue;
        // contract one zero edge if any, else skip
        EdgeSet zeros;
        for (const Edge& e : g.edges())
            if (wit->value(e.id) == 0)
                zeros.insert(e.id);
        if (zeros.empty())
            continue;
        ++checked;
        Contraction q = contract(g, zeros);
        std::map<int, int> vals;
        for (const Edge& e : q.graph.edges()) {
            if (zeros.count(e.id))
                continue;
            int fix = canonical_tau(g.edge(e.id))[0] == canonical_tau(e)[0] ? 1 : -1;
            vals[e.id] = wit->value(e.id) * fix;
        }
        IntFlow f;
        f.tau = default_orientation(q.graph);
        f.values = vals;
        f.bound_k = wit->bound_k;
        for (int v : q.graph.vertices())
            CHECK(boundary(q.graph, f, v) == 0);
    }
}

TEST_CASE("signed circuit validation catches malformed shapes")
{
    SignedGraph lb = long_barbell(1);
    SignedCircuit sc;
    sc.kind = SignedCircuitKind::LongBarbell;
    Circuit c1;
    c1.edge_ids = {0};
    c1.vertex_seq = {0};
    Circuit c2;
    c2.edge_ids = {2};
    c2.vertex_seq = {1};
    sc.circuits = {c1, c2};
    sc.path_edges = {1};
    sc.path_vertices = {0, 1};
    CHECK_NOTHROW(validate_signed_circuit(lb, sc));

    sc.path_edges.clear();
    sc.path_vertices.clear();
    CHECK_THROWS_AS(validate_signed_circuit(lb, sc), std::invalid_argument);
}
