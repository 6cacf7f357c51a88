#include "doctest.h"
#include "helpers.hpp"

#include "sgf/analysis.hpp"
#include "sgf/coloring.hpp"
#include "sgf/oracle.hpp"
#include "sgf/theorems.hpp"

#include <algorithm>

using namespace sgf;
using namespace sgf::testing;

namespace {

bool trace_contains(const FlowResult& r, const std::string& needle)
{
    for (const auto& t : r.trace)
        if (t == needle)
            return true;
    return false;
}

// first signature of the base (by canonical enumeration order) whose cubic
// pipeline trace hits the wanted label
std::optional<SignedGraph> find_instance(const SignedGraph& base, const std::string& label)
{
    for (const EdgeSet& neg : enumerate_signatures(base)) {
        SignedGraph g = with_signature(base, neg);
        if (!is_flow_admissible(g).admissible)
            continue;
        FlowResult r = cubic_flow(g);
        if (trace_contains(r, label))
            return g;
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("all-negative K4 lands in the 6-flow subcase")
{
    SignedGraph base = make_family("k4", 0);
    EdgeSet all;
    for (const Edge& e : base.edges())
        all.insert(e.id);
    SignedGraph g = k4_signed(all);
    REQUIRE(is_flow_admissible(g).admissible);
    FlowResult r = cubic_flow(g);
    CHECK(r.k == 6);
    CHECK(trace_contains(r, "Case 2"));
    CHECK(trace_contains(r, "Subcase 2.1"));
    CHECK(!r.exceptional);
    CHECK(verify_flow(g, r.flow, true).ok());
    // the oracle can only do better
    OracleReport rep = min_flow_number(g, 11);
    REQUIRE(rep.min_k);
    CHECK(*rep.min_k <= r.k);
}

TEST_CASE("each dispatch branch is reachable on small cubic graphs")
{
    SignedGraph k4 = make_family("k4", 0);
    SignedGraph prism = make_family("prism", 0);
    SignedGraph k33 = make_family("k33", 0);

    auto run_and_check = [&](const SignedGraph& g) {
        FlowResult r = cubic_flow(g);
        CHECK(verify_flow(g, r.flow, true).ok());
        CHECK(r.k <= 10);
        if (!r.exceptional)
            CHECK(r.k <= 8);
        return r;
    };

    bool seen11 = false, seen12 = false, seen21 = false, seen22 = false;
    for (const SignedGraph& base : {k4, prism, k33}) {
        for (const EdgeSet& neg : enumerate_signatures(base)) {
            SignedGraph g = with_signature(base, neg);
            if (!is_flow_admissible(g).admissible)
                continue;
            FlowResult r = run_and_check(g);
            seen11 |= trace_contains(r, "Subcase 1.1");
            seen12 |= trace_contains(r, "Subcase 1.2");
            seen21 |= trace_contains(r, "Subcase 2.1");
            seen22 |= trace_contains(r, "Subcase 2.2");
        }
    }
    // K4, K33, and the prism only have single-circuit 2-factors, so the
    // unbalanced-RB case needs the cube with its dimension coloring
    SignedGraph cube = make_family("cube", 0);
    EdgeColoring dim;
    dim.r = {0, 6, 4, 10};
    dim.b = {3, 9, 1, 7};
    dim.y = {2, 5, 8, 11};
    REQUIRE(coloring_is_proper(cube, dim));
    for (EdgeSet neg : {EdgeSet{0, 1, 2}, EdgeSet{0, 1}}) {
        SignedGraph g = with_signature(cube, neg);
        REQUIRE(is_flow_admissible(g).admissible);
        FlowResult r = cubic_flow(g, dim);
        CHECK(verify_flow(g, r.flow, true).ok());
        CHECK(r.k <= 8);
        seen11 |= trace_contains(r, "Subcase 1.1");
        seen12 |= trace_contains(r, "Subcase 1.2");
    }
    CHECK(seen11);
    CHECK(seen12);
    CHECK(seen21);
    CHECK(seen22);
}

TEST_CASE("cubic pipeline rejects bad inputs by name")
{
    CHECK_THROWS_WITH_AS(cubic_flow(make_family("circuit", 4)),
                         doctest::Contains("cubic"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cubic_flow(make_family("petersen", 0)),
                         doctest::Contains("colorable"), std::invalid_argument);
    // admissibility: K4 with exactly one negative edge is equivalent to a
    // one-negative-edge signature
    SignedGraph bad = k4_signed({0});
    CHECK_THROWS_WITH_AS(cubic_flow(bad), doctest::Contains("admissible"),
                         std::invalid_argument);
}

TEST_CASE("blow_up reproduces the gadget shape")
{
    // hub 0 of degree 7 with two negative loops, wheel rim below
    SignedGraph g = make_family("blowup", 7);
    REQUIRE(g.degree(0) == 7);
    BlowUpResult bu = blow_up(g);
    for (int v : bu.graph.vertices())
        CHECK(bu.graph.degree(v) == 3);
    REQUIRE(bu.gadgets.size() == 1);
    const BlowUpGadget& gad = bu.gadgets[0];
    CHECK(gad.ring_vertices.size() == 3); // d - 2t = 7 - 4
    CHECK(gad.chain_vertices.size() == 4);
    CHECK(gad.loop_to_partner.size() == 2);
    // each digon pairs the old loop id with a fresh positive partner
    for (const auto& [loop_id, partner] : gad.loop_to_partner) {
        const Edge& neg = bu.graph.edge(loop_id);
        const Edge& pos = bu.graph.edge(partner);
        CHECK(neg.sign == -1);
        CHECK(pos.sign == 1);
        CHECK(((neg.u == pos.u && neg.v == pos.v) || (neg.u == pos.v && neg.v == pos.u)));
    }

    // already-cubic loopless graphs pass through untouched
    SignedGraph k4 = make_family("k4", 0);
    BlowUpResult id = blow_up(k4);
    CHECK(id.gadgets.empty());
    CHECK(id.graph.edge_count() == 6);

    // degree-4, no loops: a plain circuit gadget
    SignedGraph w4 = make_family("wheel", 4);
    BlowUpResult bw = blow_up(w4);
    REQUIRE(bw.gadgets.size() == 1);
    CHECK(bw.gadgets[0].ring_vertices.size() == 4);
    CHECK(bw.gadgets[0].chain_vertices.empty());
}

TEST_CASE("contracting the gadget recovers the original up to switching")
{
    for (int hub : {6, 7}) {
        SignedGraph g = make_family("blowup", hub);
        BlowUpResult bu = blow_up(g);
        Contraction back = contract(bu.graph, bu.contract_back);
        CHECK(back.graph.edge_count() == g.edge_count());
        // structure: edges match after renaming merged vertices to originals
        std::map<int, int> rename; // contracted rep -> original vertex
        for (const auto& [orig, home] : bu.vertex_home)
            rename[back.vertex_map.at(home)] = orig;
        EdgeSet negs;
        for (const Edge& e : back.graph.edges()) {
            const Edge& oe = g.edge(e.id);
            int u = rename.at(back.vertex_map.at(bu.graph.edge(e.id).u));
            int v = rename.at(back.vertex_map.at(bu.graph.edge(e.id).v));
            CHECK(((u == oe.u && v == oe.v) || (u == oe.v && v == oe.u)));
            if (e.sign < 0)
                negs.insert(e.id);
        }
        // signatures agree up to switching: their difference is balanced
        std::vector<Edge> diff_edges;
        for (const Edge& oe : g.edges()) {
            Edge d = oe;
            d.sign = oe.sign * (negs.count(oe.id) ? -1 : 1);
            diff_edges.push_back(d);
        }
        SignedGraph diff(g.vertices(), diff_edges);
        CHECK(is_balanced(diff).balanced);
    }
}

TEST_CASE("planar pipeline handles K4 variants, wheels, and fixtures")
{
    // K4 has exactly two admissible switching classes: the balanced one and
    // the one with every triangle unbalanced
    int run = 0;
    for (const EdgeSet& neg : enumerate_signatures(make_family("k4", 0))) {
        SignedGraph g = k4_signed(neg);
        if (!is_flow_admissible(g).admissible)
            continue;
        FlowResult r = planar_flow(g);
        CHECK(r.k <= 10);
        CHECK(verify_flow(g, r.flow, true).ok());
        ++run;
    }
    CHECK(run == 2);

    SignedGraph w4 = with_signature(make_family("wheel", 4), {0, 3});
    if (is_flow_admissible(w4).admissible) {
        FlowResult r = planar_flow(w4);
        CHECK(r.k <= 10);
        CHECK(verify_flow(w4, r.flow, true).ok());
    }

    SignedGraph fixture = make_family("blowup", 7);
    FlowResult rf = planar_flow(fixture);
    CHECK(rf.k <= 10);
    CHECK(verify_flow(fixture, rf.flow, true).ok());

    CHECK_THROWS_AS(planar_flow(long_barbell(1)), std::invalid_argument); // bridge
}

TEST_CASE("hamiltonian pipeline across its branches")
{
    // all-positive wheel: 4-flow through the balanced branch
    SignedGraph w4 = make_family("wheel", 4);
    std::vector<int> ham = {0, 1, 2, 3, 4};
    FlowResult r = hamiltonian_flow(w4, ham);
    CHECK(r.k <= 4);
    CHECK(verify_flow(w4, r.flow, true).ok());
    CHECK(trace_contains(r, "Case 1"));

    // unbalanced wheel with a balanced hamilton circuit
    int spoke = -1, rim = -1;
    for (const Edge& e : w4.edges()) {
        bool on_ham = false;
        for (std::size_t i = 0; i < ham.size(); ++i) {
            int a = ham[i], b = ham[(i + 1) % ham.size()];
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a))
                on_ham = true;
        }
        if (!on_ham) {
            (spoke < 0 ? spoke : rim) = e.id;
            if (rim >= 0)
                break;
        }
    }
    REQUIRE(spoke >= 0);
    REQUIRE(rim >= 0);
    SignedGraph w4neg = with_signature(w4, {spoke, rim});
    if (is_flow_admissible(w4neg).admissible) {
        FlowResult r2 = hamiltonian_flow(w4neg, ham);
        CHECK(r2.k <= 8);
        CHECK(verify_flow(w4neg, r2.flow, true).ok());
    }

    // circulant with an unbalanced hamilton circuit
    std::vector<std::tuple<int, int, int>> ct;
    int n = 6;
    for (int i = 0; i < n; ++i)
        ct.push_back({i, (i + 1) % n, i == 0 ? -1 : 1});
    for (int i = 0; i < n; ++i)
        ct.push_back({i, (i + 2) % n, (i % 3 == 0) ? -1 : 1});
    SignedGraph circ = build_graph(ct);
    std::vector<int> cham = {0, 1, 2, 3, 4, 5};
    if (is_flow_admissible(circ).admissible) {
        FlowResult r3 = hamiltonian_flow(circ, cham);
        CHECK(r3.k <= 8);
        CHECK(verify_flow(circ, r3.flow, true).ok());
        for (const auto& [id, v] : r3.flow.values)
            CHECK(std::abs(v) != 8);
    }

    CHECK_THROWS_AS(hamiltonian_flow(w4, std::vector<int>{0, 1, 2}),
                    std::invalid_argument);
}

TEST_CASE("a contracted negative chord drives the long-barbell route")
{
    // RY splits into an unbalanced digon {0,1} and a balanced square
    // (2,3,4,5); the negative B edge 2-4 contracts to a negative loop, the
    // unbalanced circuit edge-disjoint from the digon.
    SignedGraph g = build_graph({{0, 1, 1},   // R
                                 {0, 1, -1},  // Y
                                 {2, 3, 1},   // R
                                 {3, 4, 1},   // Y
                                 {4, 5, 1},   // R
                                 {5, 2, 1},   // Y
                                 {2, 4, -1},  // B
                                 {0, 3, 1},   // B
                                 {1, 5, -1}}); // B
    EdgeColoring col;
    col.r = {0, 2, 4};
    col.y = {1, 3, 5};
    col.b = {6, 7, 8};
    REQUIRE(coloring_is_proper(g, col));
    REQUIRE(is_flow_admissible(g).admissible);

    FlowResult r = cubic_flow(g, col);
    CHECK(trace_contains(r, "Subcase 2.2"));
    CHECK(trace_contains(r, "Subcase 2.2.1"));
    CHECK(r.k == 8);
    CHECK(verify_flow(g, r.flow, true).ok());
    OracleReport rep = min_flow_number(g, 11);
    REQUIRE(rep.min_k);
    CHECK(*rep.min_k <= r.k);
}

TEST_CASE("digon necklaces run the cubic pipeline cleanly")
{
    // cycle of k digons: parallel pairs alternate two colors, links form the
    // third class; two-factors include digon circuits
    for (int k : {3, 4}) {
        std::vector<std::tuple<int, int, int>> t;
        for (int i = 0; i < k; ++i) {
            t.push_back({2 * i, 2 * i + 1, 1});
            t.push_back({2 * i, 2 * i + 1, 1});
            t.push_back({2 * i + 1, (2 * i + 2) % (2 * k), 1});
        }
        SignedGraph base = build_graph(t);
        int ran = 0;
        for (const EdgeSet& neg : enumerate_signatures(base)) {
            SignedGraph g = with_signature(base, neg);
            if (!is_flow_admissible(g).admissible)
                continue;
            FlowResult r = cubic_flow(g);
            CHECK(verify_flow(g, r.flow, true).ok());
            CHECK(r.k <= 8);
            ++ran;
        }
        CHECK(ran >= 5);
    }
}

TEST_CASE("the exceptional parity pattern reaches the 10-flow case")
{
    // Y is a perfect matching u_i w_i (i = 0..5); R pairs the matching edges
    // {0,1} {2,3} {4,5} into 4-cycles and B pairs {1,2} {3,4} {5,0}.
    // Negatives on Y_0, Y_2, Y_4 make every RY and every BY circuit odd
    // while RB stays balanced.
    std::vector<std::tuple<int, int, int>> t;
    EdgeColoring col;
    auto u = [](int i) { return 2 * i; };
    auto w = [](int i) { return 2 * i + 1; };
    int id = 0;
    for (int i = 0; i < 6; ++i) {
        t.push_back({u(i), w(i), (i % 2 == 0) ? -1 : 1});
        col.y.insert(id++);
    }
    for (int pair : {0, 2, 4}) {
        int a = pair, b = pair + 1;
        t.push_back({w(a), u(b), 1});
        col.r.insert(id++);
        t.push_back({w(b), u(a), 1});
        col.r.insert(id++);
    }
    for (int pair : {1, 3, 5}) {
        int a = pair, b = (pair + 1) % 6;
        t.push_back({w(a), u(b), 1});
        col.b.insert(id++);
        t.push_back({w(b), u(a), 1});
        col.b.insert(id++);
    }
    SignedGraph g = build_graph(t);
    REQUIRE(coloring_is_proper(g, col));
    REQUIRE(is_flow_admissible(g).admissible);

    auto unb = [&](const EdgeSet& a, const EdgeSet& b) {
        int n = 0;
        for (const Circuit& c : two_factor(g, a, b))
            if (!circuit_is_balanced(g, c))
                ++n;
        return n;
    };
    REQUIRE(unb(col.r, col.b) == 0);
    REQUIRE(unb(col.r, col.y) == 3);
    REQUIRE(unb(col.b, col.y) == 3);

    FlowResult r = cubic_flow(g, col);
    CHECK(r.exceptional);
    CHECK(trace_contains(r, "Subcase 2.3"));
    CHECK(r.k == 10);
    CHECK(verify_flow(g, r.flow, true).ok());
    OracleReport rep = min_flow_number(g, 11);
    REQUIRE(rep.min_k);
    CHECK(*rep.min_k <= r.k);
}

TEST_CASE("pipeline bounds never beat the oracle")
{
    for (const EdgeSet& neg : enumerate_signatures(make_family("prism", 0))) {
        SignedGraph g = with_signature(make_family("prism", 0), neg);
        if (!is_flow_admissible(g).admissible)
            continue;
        FlowResult r = cubic_flow(g);
        OracleReport rep = min_flow_number(g, 11);
        REQUIRE(rep.min_k);
        CHECK(*rep.min_k <= r.k);
    }
}
