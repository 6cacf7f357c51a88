#include "sgf/theorems.hpp"

#include "sgf/analysis.hpp"
#include "sgf/flows.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace sgf {

namespace {

// Re-express canonical values of `from` under the canonical orientation of
// `to`; ids must match, signs must match, endpoints may differ (contraction,
// gadget replacement). Side order is preserved by all graph operations here.
std::map<int, int> transport_values(const SignedGraph& from, const SignedGraph& to,
                                    const std::map<int, int>& vals)
{
    std::map<int, int> out;
    for (const auto& [id, v] : vals) {
        if (v == 0)
            continue;
        const Edge& a = from.edge(id);
        const Edge& b = to.edge(id);
        if (a.sign != b.sign)
            throw std::logic_error("transport across differing signs");
        out[id] = v * (canonical_tau(a)[0] == canonical_tau(b)[0] ? 1 : -1);
    }
    return out;
}

IntFlow make_flow(const SignedGraph& g, std::map<int, int> vals, int k)
{
    IntFlow f;
    f.tau = default_orientation(g);
    f.bound_k = k;
    for (auto& [id, v] : vals)
        if (v != 0)
            f.values[id] = v;
    return f;
}

IntFlow unswitch_flow(const SignedGraph& original, const SignedGraph& switched,
                      const VertexSet& u, const IntFlow& f)
{
    SwitchResult undo = switch_graph(switched, f.tau, &f, u);
    IntFlow out = to_default_orientation(original, *undo.flow);
    out.bound_k = f.bound_k;
    return out;
}

void check_nzf(const SignedGraph& g, const IntFlow& f, const std::string& where)
{
    VerifyReport rep = verify_flow(g, f, true);
    if (!rep.ok())
        throw std::logic_error(where + ": " + rep.to_string());
}

int unbalanced_circuits(const SignedGraph& g, const std::vector<Circuit>& cs)
{
    int n = 0;
    for (const Circuit& c : cs)
        if (!circuit_is_balanced(g, c))
            ++n;
    return n;
}

VertexSet sym_diff(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(out, out.begin()));
    return out;
}

EdgeSet edge_sym_diff(const EdgeSet& a, const EdgeSet& b)
{
    EdgeSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(out, out.begin()));
    return out;
}

// Shortest path between two vertex sets with interior vertices outside both.
std::optional<std::pair<std::vector<int>, std::vector<int>>> path_between_sets(
    const SignedGraph& g, const EdgeSet& allowed, const VertexSet& from,
    const VertexSet& to)
{
    std::map<int, std::pair<int, int>> pred;
    std::queue<int> q;
    for (int v : from) {
        pred[v] = {v, -1};
        q.push(v);
    }
    std::map<int, std::vector<HalfEdge>> inc;
    for (int id : allowed) {
        const Edge& e = g.edge(id);
        inc[e.u].push_back(HalfEdge{id, 0});
        if (!e.is_loop())
            inc[e.v].push_back(HalfEdge{id, 1});
    }
    int hit = -1;
    while (!q.empty() && hit < 0) {
        int v = q.front();
        q.pop();
        for (const HalfEdge& h : inc[v]) {
            const Edge& e = g.edge(h.edge_id);
            if (e.is_loop())
                continue;
            int w = e.other(v);
            if (pred.count(w))
                continue;
            pred[w] = {v, h.edge_id};
            if (to.count(w)) {
                hit = w;
                break;
            }
            if (!from.count(w))
                q.push(w);
        }
    }
    if (hit < 0)
        return std::nullopt;
    std::vector<int> vs = {hit};
    std::vector<int> es;
    while (!from.count(vs.back())) {
        auto [pv, pe] = pred[vs.back()];
        es.push_back(pe);
        vs.push_back(pv);
    }
    std::reverse(vs.begin(), vs.end());
    std::reverse(es.begin(), es.end());
    return std::make_pair(vs, es);
}

// Extends contracted circuits lying on the support of `vals` (values on gc)
// and adds 2-flows on the untouched ones.
void expand_contracted_circuits(const SignedGraph& gc, const Contraction& contracted,
                                const std::map<int, Circuit>& circuit_at,
                                std::map<int, int>& vals, int k)
{
    std::set<int> touched;
    for (const auto& [id, v] : vals) {
        if (v == 0)
            continue;
        const Edge& e = gc.edge(id);
        for (int end : {0, 1}) {
            int rep = contracted.vertex_map.at(e.endpoint(end));
            if (circuit_at.count(rep))
                touched.insert(rep);
        }
    }
    for (int rep : touched) {
        const Circuit& c = circuit_at.at(rep);
        VertexSet cv(c.vertex_seq.begin(), c.vertex_seq.end());
        std::map<int, int> inj;
        for (const auto& [id, v] : vals) {
            if (v == 0)
                continue;
            const Edge& e = gc.edge(id);
            for (int end : {0, 1}) {
                int w = e.endpoint(end);
                if (cv.count(w))
                    inj[w] += canonical_tau(e)[end] * v;
            }
        }
        std::map<int, int> ext = extend_circuit_values(gc, c, inj, k);
        for (const auto& [id, v] : ext)
            vals[id] += v;
    }
    for (const auto& [rep, c] : circuit_at) {
        if (touched.count(rep))
            continue;
        TwoFlowOutcome two = two_flow_eulerian(gc, c.edge_set());
        for (const auto& [id, v] : two.flow->values)
            vals[id] += v;
    }
}

} // namespace

Circuit circuit_from_vertices(const SignedGraph& g, const std::vector<int>& vertices)
{
    if (vertices.size() < 1)
        throw std::invalid_argument("empty vertex sequence");
    Circuit c;
    c.vertex_seq = vertices;
    EdgeSet used;
    std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        int a = vertices[i], b = vertices[(i + 1) % n];
        int found = -1;
        for (const HalfEdge& h : g.half_edges_at(a)) {
            const Edge& e = g.edge(h.edge_id);
            if (used.count(e.id))
                continue;
            bool match = n == 1 ? e.is_loop() : (!e.is_loop() && e.other(a) == b);
            if (match && (found < 0 || e.id < found))
                found = e.id;
        }
        if (found < 0)
            throw std::invalid_argument("no edge between consecutive circuit vertices");
        used.insert(found);
        c.edge_ids.push_back(found);
    }
    VertexSet distinct(vertices.begin(), vertices.end());
    if (distinct.size() != vertices.size())
        throw std::invalid_argument("circuit repeats a vertex");
    return c;
}

// --- cubic pipeline ----------------------------------------------------------

namespace {

// Subcase of exactly one unbalanced circuit in the chosen 2-factor.
IntFlow cubic_subcase_22(const SignedGraph& g, const EdgeSet& rb,
                         const std::vector<Circuit>& fy_circuits,
                         std::vector<std::string>& trace)
{
    const Circuit* c1 = nullptr;
    std::vector<const Circuit*> balanced;
    for (const Circuit& c : fy_circuits) {
        if (circuit_is_balanced(g, c))
            balanced.push_back(&c);
        else if (!c1)
            c1 = &c;
        else
            throw std::logic_error("expected exactly one unbalanced circuit");
    }
    EdgeSet others;
    for (const Circuit* c : balanced)
        for (int id : c->edge_ids)
            others.insert(id);

    BalanceWitness bw = is_balanced(g, others);
    if (!bw.balanced)
        throw std::logic_error("balanced circuits must switch positive");
    VertexSet u_total = bw.switching_set;

    SignedGraph g1 = switch_graph(g, default_orientation(g), nullptr, bw.switching_set).graph;
    Contraction con1 = contract(g1, others);

    EdgeSet h_rest = con1.graph.edge_id_set();
    for (int id : c1->edge_ids)
        h_rest.erase(id);
    std::optional<Circuit> cprime = find_unbalanced_circuit(con1.graph, h_rest);

    SignedGraph gc = g1;
    std::map<int, int> vals; // on gc, canonical per-edge values
    if (cprime) {
        trace.push_back("Subcase 2.2.1");
        const SignedGraph& h = con1.graph;
        VertexSet vc1(c1->vertex_seq.begin(), c1->vertex_seq.end());
        VertexSet vcp(cprime->vertex_seq.begin(), cprime->vertex_seq.end());
        for (int v : vcp)
            if (vc1.count(v))
                throw std::logic_error("cubic graphs keep the circuits disjoint");
        EdgeSet avoid = c1->edge_set();
        for (int id : cprime->edge_ids)
            avoid.insert(id);
        EdgeSet pathable;
        for (const Edge& e : h.edges())
            if (!avoid.count(e.id))
                pathable.insert(e.id);
        auto p = path_between_sets(h, pathable, vc1, vcp);
        if (!p)
            throw std::logic_error("contracted graph must stay connected");

        SignedCircuit q;
        q.kind = SignedCircuitKind::LongBarbell;
        q.circuits = {*c1, *cprime};
        q.path_vertices = p->first;
        q.path_edges = p->second;
        IntFlow fq = signed_circuit_flow(h, q);
        vals = transport_values(h, gc, fq.values);
    } else {
        trace.push_back("Subcase 2.2.2");
        EdgeSet g1_rest = g1.edge_id_set();
        for (int id : c1->edge_ids)
            g1_rest.erase(id);
        BalanceWitness bw2 = is_balanced(g1, g1_rest);
        if (!bw2.balanced)
            throw std::logic_error("no edge-disjoint unbalanced circuit, yet G - C1 unbalanced");
        u_total = sym_diff(u_total, bw2.switching_set);
        gc = switch_graph(g, default_orientation(g), nullptr, u_total).graph;
        Contraction con2 = contract(gc, others);
        AdmissibilityReport adm = is_flow_admissible(con2.graph);
        if (!adm.admissible)
            throw std::logic_error("contracted graph lost flow admissibility");
        IntFlow cover = cover_circuit_4flow(con2.graph, *c1);
        vals = transport_values(con2.graph, gc, cover.values);
    }

    // uncontract: extend through circuits met by the support, 2-flows elsewhere
    Contraction con = contract(gc, others);
    std::map<int, Circuit> circuit_at;
    for (const Circuit* c : balanced)
        circuit_at[con.vertex_map.at(c->vertex_seq.front())] = *c;
    expand_contracted_circuits(gc, con, circuit_at, vals, 4);

    IntFlow f4 = make_flow(gc, vals, 4);
    VerifyReport rep = verify_flow(gc, f4, false);
    if (!rep.ok())
        throw std::logic_error("subcase 2.2 cover flow invalid: " + rep.to_string());
    for (const Circuit& c : fy_circuits)
        for (int id : c.edge_ids)
            if (f4.value(id) == 0)
                throw std::logic_error("factor not covered by the 4-flow");

    TwoFlowOutcome two = two_flow_eulerian(gc, rb);
    if (!two.flow)
        throw std::logic_error("RB factor must be balanced in case 2");
    IntFlow f = combine_flows({{1, *two.flow}, {2, f4}});
    f.bound_k = 8;
    check_nzf(gc, f, "subcase 2.2 combination");
    return unswitch_flow(g, gc, u_total, f);
}

} // namespace

FlowResult cubic_flow(const SignedGraph& g, const std::optional<EdgeColoring>& coloring)
{
    if (!is_connected(g))
        throw std::invalid_argument("graph must be connected");
    for (const Edge& e : g.edges())
        if (e.is_loop())
            throw std::invalid_argument("graph must be loopless");
    for (int v : g.vertices())
        if (g.degree(v) != 3)
            throw std::invalid_argument("graph must be cubic");
    AdmissibilityReport adm = is_flow_admissible(g);
    if (!adm.admissible)
        throw std::invalid_argument("graph is not flow-admissible: " + adm.detail);

    EdgeColoring col;
    if (coloring) {
        col = *coloring;
        if (!coloring_is_proper(g, col))
            throw std::invalid_argument("given coloring is not proper");
    } else {
        auto found = three_edge_color(g);
        if (!found)
            throw std::invalid_argument("graph is not 3-edge-colorable");
        col = *found;
    }
    col = order_classes(col, g);

    FlowResult out;
    EdgeSet r = col.r, b = col.b, y = col.y;

    auto factor_edges = [](const EdgeSet& m1, const EdgeSet& m2) {
        EdgeSet s = m1;
        s.insert(m2.begin(), m2.end());
        return s;
    };

    std::vector<Circuit> rb = two_factor(g, r, b);
    std::vector<Circuit> ry = two_factor(g, r, y);
    std::vector<Circuit> by = two_factor(g, b, y);
    int u_rb = unbalanced_circuits(g, rb);
    int u_ry = unbalanced_circuits(g, ry);
    int u_by = unbalanced_circuits(g, by);
    if (u_rb % 2 != 0)
        throw std::logic_error("RB must have an even number of unbalanced circuits");

    if (u_rb > 0) {
        out.trace.push_back("Case 1");
        if (u_ry % 2 != 0) {
            // swap R and B along an unbalanced RB circuit to equalize parities
            out.trace.push_back("Subcase 1.2");
            const Circuit* c = nullptr;
            for (const Circuit& cc : rb)
                if (!circuit_is_balanced(g, cc)) {
                    c = &cc;
                    break;
                }
            EdgeSet cset = c->edge_set();
            EdgeSet r2, b2;
            for (int id : r)
                (cset.count(id) ? b2 : r2).insert(id);
            for (int id : b)
                (cset.count(id) ? r2 : b2).insert(id);
            r = r2;
            b = b2;
            ry = two_factor(g, r, y);
            u_ry = unbalanced_circuits(g, ry);
            if (u_ry % 2 != 0)
                throw std::logic_error("color swap must equalize the parities");
        }
        out.trace.push_back("Subcase 1.1");
        IntFlow f1 = lift_z2_to_3flow(g, factor_edges(r, b));
        IntFlow f2 = lift_z2_to_3flow(g, factor_edges(r, y));
        out.flow = combine_flows({{1, f1}, {3, f2}});
        out.flow.bound_k = 8;
        out.k = 8;
    } else {
        out.trace.push_back("Case 2");
        TwoFlowOutcome two = two_flow_eulerian(g, factor_edges(r, b));
        if (!two.flow)
            throw std::logic_error("RB factor must support a 2-flow in case 2");
        IntFlow f3 = *two.flow;
        if (u_ry % 2 == 0 || u_by % 2 == 0) {
            out.trace.push_back("Subcase 2.1");
            const EdgeSet& first = (u_ry % 2 == 0) ? r : b;
            IntFlow f2 = lift_z2_to_3flow(g, factor_edges(first, y));
            out.flow = combine_flows({{3, f3}, {1, f2}});
            out.flow.bound_k = 6;
            out.k = 6;
        } else if (u_ry == 1 || u_by == 1) {
            out.trace.push_back("Subcase 2.2");
            if (u_ry == 1)
                out.flow = cubic_subcase_22(g, factor_edges(r, b), ry, out.trace);
            else
                out.flow = cubic_subcase_22(g, factor_edges(r, b), by, out.trace);
            out.flow.bound_k = 8;
            out.k = 8;
        } else {
            out.trace.push_back("Subcase 2.3");
            IntFlow f6 = five_flow_odd_components(g, factor_edges(r, y));
            out.flow = combine_flows({{5, f3}, {1, f6}});
            out.flow.bound_k = 10;
            out.k = 10;
            out.exceptional = true;
        }
    }
    check_nzf(g, out.flow, "cubic pipeline");
    return out;
}

// --- blow-up and the planar pipeline -----------------------------------------

BlowUpResult blow_up(const SignedGraph& g)
{
    for (const Edge& e : g.edges())
        if (e.is_loop() && e.sign > 0)
            throw std::invalid_argument("positive loop present");
    for (int v : g.vertices())
        if (g.degree(v) < 3)
            throw std::invalid_argument("degree-2 vertex present");

    int next_vertex = g.vertices().empty() ? 0 : g.vertices().back() + 1;
    int next_edge = g.max_edge_id() + 1;

    BlowUpResult out;
    std::map<std::pair<int, int>, int> end_target; // (edge id, end) -> new endpoint
    std::vector<Edge> new_edges;
    EdgeSet dropped_loops;

    for (int v : g.vertices()) {
        int d = g.degree(v);
        std::vector<int> loops;
        std::vector<std::pair<int, int>> plain; // (edge id, end)
        for (const HalfEdge& h : g.half_edges_at(v)) {
            const Edge& e = g.edge(h.edge_id);
            if (e.is_loop()) {
                if (h.end == 0)
                    loops.push_back(e.id);
            } else {
                plain.push_back({e.id, h.end});
            }
        }
        int t = static_cast<int>(loops.size());
        if (d == 3 && t == 0) {
            out.vertex_home[v] = v;
            continue;
        }
        int k = d - 2 * t;
        if (k < 2)
            throw std::invalid_argument(
                "vertex " + std::to_string(v) + " has too many loops to blow up");
        std::sort(plain.begin(), plain.end());
        std::sort(loops.begin(), loops.end());

        BlowUpGadget gad;
        gad.original_vertex = v;
        for (int i = 0; i < k; ++i)
            gad.ring_vertices.push_back(next_vertex++);
        for (std::size_t i = 0; i < plain.size(); ++i)
            end_target[plain[i]] = gad.ring_vertices[i % k];

        auto add_edge = [&](int a, int b, int sign, int forced_id = -1) {
            int id = forced_id >= 0 ? forced_id : next_edge++;
            new_edges.push_back(Edge{id, a, b, sign});
            if (sign > 0)
                gad.positive_edges.insert(id);
            return id;
        };

        // ring edges; with loops present, the (r0, r1) edge becomes the chain
        for (int i = (t > 0 ? 1 : 0); i < k; ++i)
            add_edge(gad.ring_vertices[i], gad.ring_vertices[(i + 1) % k], 1);
        if (t > 0) {
            std::vector<int> chain = {gad.ring_vertices[0]};
            for (int i = 0; i < 2 * t; ++i) {
                gad.chain_vertices.push_back(next_vertex);
                chain.push_back(next_vertex++);
            }
            chain.push_back(gad.ring_vertices[1 % k]);
            for (int i = 0; i + 1 < static_cast<int>(chain.size()); ++i) {
                if (i % 2 == 1) {
                    int li = loops[i / 2];
                    add_edge(chain[i], chain[i + 1], -1, li); // digon, loop id kept
                    int partner = add_edge(chain[i], chain[i + 1], 1);
                    gad.loop_to_partner[li] = partner;
                    dropped_loops.insert(li);
                } else {
                    add_edge(chain[i], chain[i + 1], 1);
                }
            }
        }
        out.vertex_home[v] = gad.ring_vertices[0];
        out.contract_back.insert(gad.positive_edges.begin(), gad.positive_edges.end());
        out.gadgets.push_back(std::move(gad));
    }

    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) {
            if (!dropped_loops.count(e.id)) {
                if (!out.vertex_home.count(e.u) || out.vertex_home.at(e.u) != e.u)
                    throw std::logic_error("loop survived at a blown-up vertex");
                edges.push_back(e);
            }
            continue;
        }
        Edge moved = e;
        auto it0 = end_target.find({e.id, 0});
        auto it1 = end_target.find({e.id, 1});
        if (it0 != end_target.end())
            moved.u = it0->second;
        if (it1 != end_target.end())
            moved.v = it1->second;
        edges.push_back(moved);
    }
    edges.insert(edges.end(), new_edges.begin(), new_edges.end());

    std::vector<int> verts;
    for (const Edge& e : edges) {
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    out.graph = SignedGraph(std::move(verts), std::move(edges));
    for (int v : out.graph.vertices())
        if (out.graph.degree(v) != 3)
            throw std::logic_error("blow-up failed to produce a cubic graph");
    for (const Edge& e : out.graph.edges())
        if (e.is_loop())
            throw std::logic_error("blow-up left a loop behind");
    return out;
}

namespace {

struct SuppressStep {
    Edge e1, e2, merged; // snapshots at suppression time
    int via;             // the suppressed vertex
};

int tau_end_at(const Edge& e, int v)
{
    // for loops the caller picks end 0
    int end = (e.u == v) ? 0 : 1;
    return canonical_tau(e)[end];
}

} // namespace

FlowResult planar_flow(const SignedGraph& g)
{
    AdmissibilityReport adm = is_flow_admissible(g);
    if (!adm.admissible)
        throw std::invalid_argument("graph is not flow-admissible: " + adm.detail);
    if (!find_bridges(g).empty())
        throw std::invalid_argument("graph has a bridge");

    FlowResult out;
    SignedGraph cur = g;
    std::vector<SuppressStep> suppressed;
    std::vector<int> positive_loops; // restored with value 1

    int next_edge = g.max_edge_id() + 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Edge& e : cur.edges())
            if (e.is_loop() && e.sign > 0) {
                positive_loops.push_back(e.id);
                EdgeSet keep = cur.edge_id_set();
                keep.erase(e.id);
                cur = edge_subgraph(cur, keep);
                changed = true;
                break;
            }
        if (changed)
            continue;
        for (int v : cur.vertices()) {
            if (cur.degree(v) != 2)
                continue;
            const auto& hs = cur.half_edges_at(v);
            if (hs[0].edge_id == hs[1].edge_id) {
                // lone negative loop component: admissibility excluded it
                throw std::logic_error("isolated unbalanced loop survived");
            }
            Edge e1 = cur.edge(hs[0].edge_id);
            Edge e2 = cur.edge(hs[1].edge_id);
            SuppressStep st;
            st.e1 = e1;
            st.e2 = e2;
            st.via = v;
            st.merged = Edge{next_edge++, e1.other(v), e2.other(v), e1.sign * e2.sign};
            std::vector<Edge> edges;
            for (const Edge& e : cur.edges())
                if (e.id != e1.id && e.id != e2.id)
                    edges.push_back(e);
            edges.push_back(st.merged);
            std::vector<int> verts;
            for (int w : cur.vertices())
                if (w != v)
                    verts.push_back(w);
            cur = SignedGraph(std::move(verts), std::move(edges));
            suppressed.push_back(st);
            changed = true;
            break;
        }
        if (changed)
            continue;
        // drop isolated vertices
        std::vector<int> keepv;
        for (int v : cur.vertices())
            if (cur.degree(v) > 0)
                keepv.push_back(v);
        if (keepv.size() != cur.vertex_count()) {
            cur = SignedGraph(keepv, cur.edges());
            changed = true;
        }
    }
    if (!suppressed.empty())
        out.trace.push_back("suppressed " + std::to_string(suppressed.size())
                            + " degree-2 vertices");

    std::map<int, int> vals;
    if (cur.edge_count() == 0) {
        out.k = 2;
        out.trace.push_back("reduced to positive loops");
    } else {
        BlowUpResult bu = blow_up(cur);
        if (!bu.gadgets.empty())
            out.trace.push_back("blow-up of " + std::to_string(bu.gadgets.size())
                                + " vertices");
        auto col = three_edge_color(bu.graph);
        if (!col)
            throw std::invalid_argument("blow-up is not 3-edge-colorable");
        FlowResult fr = cubic_flow(bu.graph, col);
        out.k = fr.k;
        out.exceptional = fr.exceptional;
        out.trace.insert(out.trace.end(), fr.trace.begin(), fr.trace.end());

        // contract the gadgets back: restriction to the surviving edge ids
        std::map<int, int> restricted;
        for (const Edge& e : cur.edges())
            restricted[e.id] = fr.flow.value(e.id);
        vals = transport_values(bu.graph, cur, restricted);
        IntFlow f_cur = make_flow(cur, vals, fr.k);
        check_nzf(cur, f_cur, "gadget contraction");
        vals = f_cur.values;
    }

    for (int id : positive_loops)
        vals[id] = 1;
    for (auto it = suppressed.rbegin(); it != suppressed.rend(); ++it) {
        if (!vals.count(it->merged.id))
            throw std::logic_error("merged edge lost its value");
        int merged_val = vals.at(it->merged.id);
        vals.erase(it->merged.id);
        int a = it->e1.other(it->via);
        // keep the contribution at a, cancel at the suppressed vertex
        int f1 = merged_val * canonical_tau(it->merged)[0] * tau_end_at(it->e1, a);
        int f2 = -f1 * tau_end_at(it->e1, it->via) * tau_end_at(it->e2, it->via);
        vals[it->e1.id] = f1;
        vals[it->e2.id] = f2;
    }

    out.flow = make_flow(g, vals, std::max(out.k, 2));
    out.k = out.flow.bound_k;
    check_nzf(g, out.flow, "planar pipeline");
    return out;
}

// --- hamiltonian pipeline ------------------------------------------------------

FlowResult hamiltonian_flow(const SignedGraph& g, const std::vector<int>& hamilton_cycle)
{
    AdmissibilityReport adm = is_flow_admissible(g);
    if (!adm.admissible)
        throw std::invalid_argument("graph is not flow-admissible: " + adm.detail);
    for (const Edge& e : g.edges())
        if (e.is_loop() && e.sign < 0)
            throw std::invalid_argument("negative loops are not supported here");

    Circuit c0 = circuit_from_vertices(g, hamilton_cycle);
    if (c0.vertex_seq.size() != g.vertex_count())
        throw std::invalid_argument("circuit is not hamiltonian");

    // positive loops never interact with the construction
    EdgeSet keep = g.edge_id_set();
    std::vector<int> positive_loops;
    for (const Edge& e : g.edges())
        if (e.is_loop()) {
            positive_loops.push_back(e.id);
            keep.erase(e.id);
        }
    SignedGraph work = edge_subgraph(g, keep, /*keep_all_vertices=*/true);

    FlowResult out;
    EdgeSet c0_set = c0.edge_set();
    std::map<int, int> vals;

    if (circuit_is_balanced(work, c0)) {
        out.trace.push_back("Case 1");
        BalanceWitness bw = is_balanced(work, c0_set);
        SignedGraph g1 = switch_graph(work, default_orientation(work), nullptr,
                                      bw.switching_set)
                             .graph;
        BalanceWitness whole = is_balanced(g1);
        if (whole.balanced) {
            out.trace.push_back("balanced: hamiltonian 4-flow");
            VertexSet ut = sym_diff(bw.switching_set, whole.switching_set);
            SignedGraph g2 = switch_graph(work, default_orientation(work), nullptr, ut).graph;
            if (!g2.negative_edges().empty())
                throw std::logic_error("switching failed to clear the signature");

            // symmetric difference of the chord fundamental circuits
            std::map<int, int> pos;
            for (std::size_t i = 0; i < c0.vertex_seq.size(); ++i)
                pos[c0.vertex_seq[i]] = static_cast<int>(i);
            EdgeSet h2;
            for (const Edge& e : g2.edges()) {
                if (c0_set.count(e.id))
                    continue;
                EdgeSet ce = {e.id};
                int pu = pos.at(e.u), pv = pos.at(e.v);
                for (int i = pu; i != pv; i = (i + 1) % static_cast<int>(c0.edge_ids.size()))
                    ce.insert(c0.edge_ids[i]);
                h2 = edge_sym_diff(h2, ce);
            }
            TwoFlowOutcome a = two_flow_eulerian(g2, h2);
            TwoFlowOutcome b = two_flow_eulerian(g2, c0_set);
            IntFlow f = combine_flows({{1, *a.flow}, {2, *b.flow}});
            f.bound_k = 4;
            check_nzf(g2, f, "hamiltonian 4-flow");
            out.k = 4;
            vals = unswitch_flow(work, g2, ut, f).values;
        } else {
            out.trace.push_back("unbalanced: phi2 closure of the circuit");
            ModFlow phi = z3_flow_phi2(g1, c0_set);
            IntFlow f1 = lift_z3_to_4flow(g1, phi);
            TwoFlowOutcome f2 = two_flow_eulerian(g1, c0_set);
            IntFlow f = combine_flows({{2, f1}, {1, *f2.flow}});
            f.bound_k = 8;
            check_nzf(g1, f, "hamiltonian 2f1+f2");
            out.k = 8;
            vals = unswitch_flow(work, g1, bw.switching_set, f).values;
        }
    } else {
        out.trace.push_back("Case 2");
        std::map<int, int> pos;
        int n = static_cast<int>(c0.vertex_seq.size());
        for (int i = 0; i < n; ++i)
            pos[c0.vertex_seq[i]] = i;

        auto arc_forward = [&](int pu, int pv) {
            std::vector<int> ids;
            for (int i = pu; i != pv; i = (i + 1) % n)
                ids.push_back(c0.edge_ids[i]);
            return ids;
        };

        EdgeSet h;
        for (const Edge& e : work.edges()) {
            if (c0_set.count(e.id))
                continue;
            EdgeSet ce = {e.id};
            if (!e.is_loop()) {
                std::vector<int> fwd = arc_forward(pos.at(e.u), pos.at(e.v));
                int neg = circuit_negative_count(work, fwd) + (e.sign < 0 ? 1 : 0);
                if (neg % 2 != 0) {
                    std::vector<int> bwd = arc_forward(pos.at(e.v), pos.at(e.u));
                    int neg2 = circuit_negative_count(work, bwd) + (e.sign < 0 ? 1 : 0);
                    if (neg2 % 2 != 0)
                        throw std::logic_error("no balanced fundamental circuit");
                    ce.insert(bwd.begin(), bwd.end());
                } else {
                    ce.insert(fwd.begin(), fwd.end());
                }
            } else if (e.sign < 0) {
                throw std::logic_error("negative loop rejected earlier");
            }
            h = edge_sym_diff(h, ce);
        }
        if (h.empty())
            throw std::logic_error("unbalanced hamiltonian graph without chords");

        BalanceWitness hb = is_balanced(work, h);
        if (hb.balanced) {
            out.trace.push_back("H balanced: circuit cover");
            SignedGraph g3 = switch_graph(work, default_orientation(work), nullptr,
                                          hb.switching_set)
                                 .graph;
            TwoFlowOutcome f3 = two_flow_eulerian(g3, h);
            IntFlow f4 = cover_circuit_4flow(g3, c0);
            IntFlow f = combine_flows({{1, *f3.flow}, {2, f4}});
            f.bound_k = 8;
            check_nzf(g3, f, "hamiltonian f3+2f4");
            out.k = 8;
            vals = unswitch_flow(work, g3, hb.switching_set, f).values;
        } else {
            out.trace.push_back("H unbalanced: two lifts");
            Circuit c0p = *hb.unbalanced_circuit;
            IntFlow f5 = lift_z2_to_3flow(work, h);
            EdgeSet hp = edge_sym_diff(c0_set, c0p.edge_set());
            EdgeSet subset = c0_set;
            for (int id : c0p.edge_ids)
                subset.insert(id);
            SignedGraph sub = edge_subgraph(work, subset);
            IntFlow f6 = lift_z2_to_3flow(sub, hp);
            // values are canonical per edge, so they combine directly
            std::map<int, int> fv;
            for (const auto& [id, v] : f5.values)
                fv[id] += 3 * v;
            for (const auto& [id, v] : f6.values)
                fv[id] += v;
            IntFlow f = make_flow(work, fv, 8);
            check_nzf(work, f, "hamiltonian 3f5+f6");
            for (const auto& [id, v] : f.values)
                if (std::abs(v) == 8)
                    throw std::logic_error("value 8 must not occur in this branch");
            out.k = 8;
            vals = f.values;
        }
    }

    for (int id : positive_loops)
        vals[id] = 1;
    out.flow = make_flow(g, vals, std::max(out.k, 2));
    out.k = out.flow.bound_k;
    check_nzf(g, out.flow, "hamiltonian pipeline");
    return out;
}

} // namespace sgf
