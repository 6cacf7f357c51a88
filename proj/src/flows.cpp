#include "sgf/flows.hpp"
#include "sgf/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace sgf {

namespace {

int tau_at(const SignedGraph& g, int edge_id, int end)
{
    return canonical_tau(g.edge(edge_id))[end];
}

// Values are said to be "canonical" when expressed under the per-edge default
// orientation; they compose across subgraphs because the rule depends only on
// the edge record itself.
IntFlow wrap_flow(const SignedGraph& g, std::map<int, int> values, int k)
{
    IntFlow f;
    f.tau = default_orientation(g);
    f.bound_k = k;
    for (auto& [id, v] : values)
        if (v != 0)
            f.values[id] = v;
    return f;
}

void merge_values(std::map<int, int>& into, const std::map<int, int>& from, int coeff = 1)
{
    for (const auto& [id, v] : from) {
        into[id] += coeff * v;
        if (into[id] == 0)
            into.erase(id);
    }
}

// Transport of `magnitude` units along a closed or open walk. The polarity p
// is the contribution sign left at the head of the step just taken; crossing
// a negative edge keeps both end contributions equal, so p flips there.
struct WalkFlow {
    std::map<int, int> values;
    int start_contrib = 0; // contribution the walk leaves at its first vertex
    int end_contrib = 0;   // contribution the final head leaves (same vertex if closed)
    int final_polarity = 0;
};

WalkFlow polarity_walk(const SignedGraph& g, const std::vector<WalkStep>& steps,
                       int magnitude, int p0)
{
    WalkFlow out;
    int p = p0;
    bool first = true;
    for (const WalkStep& st : steps) {
        const Edge& e = g.edge(st.edge_id);
        int t_tail = tau_at(g, st.edge_id, st.tail_end);
        int f = -p * magnitude * t_tail; // tail contribution = -p * magnitude
        if (out.values.count(st.edge_id))
            throw std::logic_error("walk repeats an edge");
        out.values[st.edge_id] = f;
        if (first) {
            out.start_contrib = -p * magnitude;
            first = false;
        }
        p = e.sign * p;
    }
    out.end_contrib = p * magnitude;
    out.final_polarity = p;
    return out;
}

// +-1 valuation with zero boundary on one connected eulerian edge set; the
// component must contain an even number of negative edges.
std::map<int, int> two_flow_values(const SignedGraph& g, const EdgeSet& component)
{
    std::vector<WalkStep> walk = eulerian_circuit(g, component);
    WalkFlow wf = polarity_walk(g, walk, 1, 1);
    if (wf.start_contrib + wf.end_contrib != 0)
        throw std::invalid_argument("component has an odd number of negative edges");
    if (!component.empty() && wf.values.at(*component.begin()) < 0)
        for (auto& [id, v] : wf.values)
            v = -v;
    return wf.values;
}

std::vector<WalkStep> path_steps(const SignedGraph& g, const std::vector<int>& edges,
                                 const std::vector<int>& vertices)
{
    std::vector<WalkStep> steps;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = g.edge(edges[i]);
        WalkStep st;
        st.edge_id = e.id;
        st.tail = vertices[i];
        st.head = vertices[i + 1];
        st.tail_end = (e.u == st.tail) ? 0 : 1;
        if (e.is_loop())
            st.tail_end = 0;
        st.head_end = 1 - st.tail_end;
        steps.push_back(st);
    }
    return steps;
}

// Open walk carrying `magnitude` units with a prescribed contribution at its
// first vertex; returns the contribution left at the last vertex.
std::pair<std::map<int, int>, int> transport_path(const SignedGraph& g,
                                                  const std::vector<int>& edges,
                                                  const std::vector<int>& vertices,
                                                  int start_contrib)
{
    int magnitude = std::abs(start_contrib);
    int p0 = -start_contrib / magnitude;
    WalkFlow wf = polarity_walk(g, path_steps(g, edges, vertices), magnitude, p0);
    return {wf.values, wf.end_contrib};
}

// Closed walk over one unbalanced eulerian component leaving the prescribed
// defect (+-2 * magnitude) at `at`; the polarity flip across the odd number
// of negative edges is what makes the defect unavoidable.
std::map<int, int> half_flow(const SignedGraph& g, const EdgeSet& component, int at,
                             int defect, int magnitude = 1)
{
    if (std::abs(defect) != 2 * magnitude)
        throw std::logic_error("half_flow defect must be +-2 magnitude");
    int p0 = -defect / (2 * magnitude);
    std::vector<WalkStep> walk = eulerian_circuit(g, component, at);
    if (walk.front().tail != at)
        throw std::logic_error("walk must start at the requested vertex");
    WalkFlow wf = polarity_walk(g, walk, magnitude, p0);
    if (wf.start_contrib + wf.end_contrib != defect)
        throw std::invalid_argument("component is not unbalanced");
    return wf.values;
}

std::map<int, std::vector<HalfEdge>> subset_incidence(const SignedGraph& g,
                                                      const EdgeSet& ids)
{
    std::map<int, std::vector<HalfEdge>> inc;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        inc[e.u].push_back(HalfEdge{id, 0});
        inc[e.v].push_back(HalfEdge{id, 1});
    }
    return inc;
}

// BFS path inside an edge set; returns (vertices, edges) or nullopt.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bfs_path(
    const SignedGraph& g, const EdgeSet& within, int from, int to)
{
    auto inc = subset_incidence(g, within);
    std::map<int, std::pair<int, int>> pred; // vertex -> (prev vertex, edge)
    std::queue<int> q;
    q.push(from);
    pred[from] = {from, -1};
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == to)
            break;
        for (const HalfEdge& h : inc[v]) {
            const Edge& e = g.edge(h.edge_id);
            if (e.is_loop())
                continue;
            int w = e.other(v);
            if (!pred.count(w)) {
                pred[w] = {v, h.edge_id};
                q.push(w);
            }
        }
    }
    if (!pred.count(to))
        return std::nullopt;
    std::vector<int> vs = {to};
    std::vector<int> es;
    while (vs.back() != from) {
        auto [pv, pe] = pred[vs.back()];
        es.push_back(pe);
        vs.push_back(pv);
    }
    std::reverse(vs.begin(), vs.end());
    std::reverse(es.begin(), es.end());
    return std::make_pair(vs, es);
}

} // namespace

// --- two_flow_eulerian ----------------------------------------------------

TwoFlowOutcome two_flow_eulerian(const SignedGraph& g, const EdgeSet& support)
{
    if (!subset_is_eulerian(g, support))
        throw std::invalid_argument("support is not eulerian");
    TwoFlowOutcome out;
    std::map<int, int> values;
    for (const EdgeSet& comp : edge_components(g, support)) {
        int neg = 0;
        for (int id : comp)
            if (g.edge(id).sign < 0)
                ++neg;
        if (neg % 2 != 0) {
            out.odd_component = comp;
            return out;
        }
        merge_values(values, two_flow_values(g, comp));
    }
    out.flow = wrap_flow(g, std::move(values), 2);
    return out;
}

// --- signed_circuit_flow ----------------------------------------------------

IntFlow signed_circuit_flow(const SignedGraph& g, const SignedCircuit& sc)
{
    validate_signed_circuit(g, sc);
    switch (sc.kind) {
    case SignedCircuitKind::BalancedCircuit: {
        TwoFlowOutcome two = two_flow_eulerian(g, sc.circuits[0].edge_set());
        return *two.flow;
    }
    case SignedCircuitKind::ShortBarbell: {
        EdgeSet all = sc.edge_set();
        TwoFlowOutcome two = two_flow_eulerian(g, all);
        IntFlow f = *two.flow;
        f.bound_k = 3;
        return f;
    }
    case SignedCircuitKind::LongBarbell: {
        int u = sc.path_vertices.front();
        int w = sc.path_vertices.back();
        std::map<int, int> values = half_flow(g, sc.circuits[0].edge_set(), u, -2);
        auto [path_vals, delivered] =
            transport_path(g, sc.path_edges, sc.path_vertices, +2);
        merge_values(values, path_vals);
        merge_values(values, half_flow(g, sc.circuits[1].edge_set(), w, -delivered));
        if (values.at(*sc.edge_set().begin()) < 0)
            for (auto& [id, v] : values)
                v = -v;
        return wrap_flow(g, std::move(values), 3);
    }
    }
    throw std::logic_error("unreachable");
}

// --- phi2 closure -----------------------------------------------------------

namespace {

// Shortest balanced circuit using every edge of `required` and otherwise only
// edges of `allowed`; ties broken by the lexicographically smallest sorted
// edge-id sequence.
std::optional<Circuit> best_balanced_circuit(const SignedGraph& g, const EdgeSet& allowed,
                                             const std::vector<int>& required)
{
    const Edge& e0 = g.edge(required[0]);
    int other_required = required.size() > 1 ? required[1] : -1;

    if (e0.is_loop()) {
        if (other_required >= 0)
            return std::nullopt; // a loop is a circuit by itself
        if (e0.sign > 0) {
            Circuit c;
            c.edge_ids = {e0.id};
            c.vertex_seq = {e0.u};
            return c;
        }
        return std::nullopt;
    }
    if (other_required >= 0 && g.edge(other_required).is_loop())
        return std::nullopt;

    std::optional<Circuit> best;
    std::vector<int> best_key;
    auto consider = [&](const std::vector<int>& epath, const std::vector<int>& vpath) {
        int neg = circuit_negative_count(g, epath);
        if (neg % 2 != 0)
            return;
        std::vector<int> key(epath.begin(), epath.end());
        std::sort(key.begin(), key.end());
        if (!best || epath.size() < best->edge_ids.size()
            || (epath.size() == best->edge_ids.size() && key < best_key)) {
            Circuit c;
            c.edge_ids = epath;
            c.vertex_seq = vpath;
            best = c;
            best_key = key;
        }
    };

    int a = e0.u, b = e0.v;
    std::vector<int> vpath = {a, b};
    std::vector<int> epath = {e0.id};
    VertexSet onpath = {a, b};

    std::function<void(int, bool)> dfs = [&](int v, bool used_other) {
        if (best && epath.size() >= best->edge_ids.size())
            return;
        for (const Edge& e : g.edges()) {
            bool usable = allowed.count(e.id) || e.id == other_required;
            if (!usable || e.id == e0.id || e.is_loop() || !e.incident(v))
                continue;
            if (std::find(epath.begin(), epath.end(), e.id) != epath.end())
                continue;
            int w = e.other(v);
            bool now_other = used_other || e.id == other_required;
            if (w == a) {
                if (other_required < 0 || now_other) {
                    epath.push_back(e.id);
                    consider(epath, vpath);
                    epath.pop_back();
                }
                continue;
            }
            if (onpath.count(w))
                continue;
            epath.push_back(e.id);
            vpath.push_back(w);
            onpath.insert(w);
            dfs(w, now_other);
            onpath.erase(w);
            vpath.pop_back();
            epath.pop_back();
        }
    };
    dfs(b, false);
    return best;
}

} // namespace

Phi2Certificate phi2_closure(const SignedGraph& g, const EdgeSet& h)
{
    Phi2Certificate cert;
    cert.closure = h;
    for (;;) {
        std::vector<int> outside;
        for (const Edge& e : g.edges())
            if (!cert.closure.count(e.id))
                outside.push_back(e.id);
        if (outside.empty())
            break;

        std::optional<Circuit> best;
        EdgeSet best_new;
        auto consider = [&](const std::optional<Circuit>& c, const std::vector<int>& req) {
            if (!c)
                return;
            if (!best || c->edge_ids.size() < best->edge_ids.size()
                || (c->edge_ids.size() == best->edge_ids.size()
                    && c->edge_set() < best->edge_set())) {
                best = c;
                best_new = EdgeSet(req.begin(), req.end());
            }
        };
        for (int e : outside)
            consider(best_balanced_circuit(g, cert.closure, {e}), {e});
        for (std::size_t i = 0; i < outside.size(); ++i)
            for (std::size_t j = i + 1; j < outside.size(); ++j)
                consider(best_balanced_circuit(g, cert.closure, {outside[i], outside[j]}),
                         {outside[i], outside[j]});
        if (!best)
            break;
        cert.steps.push_back(Phi2Step{*best, best_new});
        for (int id : best_new)
            cert.closure.insert(id);
    }
    return cert;
}

ModFlow z3_flow_phi2(const SignedGraph& g, const EdgeSet& h)
{
    Phi2Certificate cert = phi2_closure(g, h);
    if (cert.closure != g.edge_id_set())
        throw std::invalid_argument("the phi2 closure of H is not the whole graph");

    ModFlow phi;
    phi.modulus = 3;
    phi.tau = default_orientation(g);

    auto residue = [&](int id) { return ((phi.value(id)) % 3 + 3) % 3; };

    for (auto it = cert.steps.rbegin(); it != cert.steps.rend(); ++it) {
        std::map<int, int> circ = two_flow_values(g, it->circuit.edge_set());
        int chosen = -1;
        for (int c : {0, 1, 2}) {
            bool ok = true;
            for (int id : it->new_edges)
                if (((residue(id) + c * circ.at(id)) % 3 + 3) % 3 == 0)
                    ok = false;
            if (ok) {
                chosen = c;
                break;
            }
        }
        if (chosen < 0)
            throw std::logic_error("no usable circulation coefficient");
        if (chosen != 0)
            for (const auto& [id, v] : circ)
                phi.values[id] = ((phi.values[id] + chosen * v) % 3 + 9) % 3;
    }
    for (auto it = phi.values.begin(); it != phi.values.end();)
        it = it->second == 0 ? phi.values.erase(it) : std::next(it);

    for (int v : g.vertices())
        if (boundary(g, phi.tau, phi.values, v) % 3 != 0)
            throw std::logic_error("phi2 lift is not a Z3 flow");
    for (const Edge& e : g.edges())
        if (!h.count(e.id) && phi.value(e.id) % 3 == 0)
            throw std::logic_error("phi2 lift vanishes outside H");
    return phi;
}

// --- modulo-to-integer lifts -------------------------------------------------

IntFlow lift_z3_to_4flow(const SignedGraph& g, const ModFlow& f1)
{
    if (f1.modulus != 3)
        throw std::invalid_argument("expected a Z3 flow");
    if (!find_bridges(g).empty())
        throw std::invalid_argument("graph has a bridge");

    Orientation canon = default_orientation(g);
    std::map<int, std::vector<int>> candidates;
    for (const Edge& e : g.edges()) {
        int r = ((f1.value(e.id) * reorient_value_sign(e, f1.tau, canon)) % 3 + 3) % 3;
        if (r == 0)
            candidates[e.id] = {0, 3, -3};
        else if (r == 1)
            candidates[e.id] = {1, -2};
        else
            candidates[e.id] = {2, -1};
    }
    auto sol = constrained_flow_search(g, canon, candidates);
    if (!sol)
        throw std::logic_error("residue lift search exhausted (implementation bug)");
    IntFlow out = wrap_flow(g, std::move(*sol), 4);
    VerifyReport rep = verify_flow(g, out, false);
    if (!rep.ok())
        throw std::logic_error("lifted 4-flow fails verification");
    return out;
}

namespace {

struct ContractedTree {
    // spanning tree of g / support, rooted; vertices are representatives
    std::map<int, int> rep;                 // g-vertex -> contracted vertex
    std::map<int, std::pair<int, int>> up;  // contracted vertex -> (parent, edge id)
    std::vector<int> order;                 // BFS order, root first
    EdgeSet tree_edges;
};

ContractedTree contracted_spanning_tree(const SignedGraph& g, const EdgeSet& support)
{
    ContractedTree t;
    Contraction q = contract(g, support);
    t.rep = q.vertex_map;

    std::map<int, std::vector<int>> adj;
    for (const Edge& e : q.graph.edges())
        if (!support.count(e.id) && !e.is_loop())
            adj[e.u].push_back(e.id);
    for (const Edge& e : q.graph.edges())
        if (!support.count(e.id) && !e.is_loop())
            adj[e.v].push_back(e.id);
    for (auto& [v, lst] : adj)
        std::sort(lst.begin(), lst.end());

    int root = q.graph.vertices().front();
    std::map<int, bool> seen;
    seen[root] = true;
    t.order.push_back(root);
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int id : adj[v]) {
            const Edge& e = q.graph.edge(id);
            int w = e.other(v);
            if (seen.count(w))
                continue;
            seen[w] = true;
            t.up[w] = {v, id};
            t.tree_edges.insert(id);
            t.order.push_back(w);
            bfs.push(w);
        }
    }
    if (t.order.size() != q.graph.vertex_count())
        throw std::invalid_argument("graph must be connected");
    return t;
}

// Edges of the spanning tree whose lower side contains an odd number of
// terminals (the unique pairing join inside the tree).
EdgeSet tree_parity_join(const ContractedTree& t, const VertexSet& terminals)
{
    std::map<int, int> cnt;
    for (int v : terminals)
        cnt[v] += 1;
    EdgeSet join;
    for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
        int v = *it;
        auto up = t.up.find(v);
        if (up == t.up.end())
            continue;
        if (cnt[v] % 2 != 0)
            join.insert(up->second.second);
        cnt[up->second.first] += cnt[v];
    }
    return join;
}

// Shared machinery of the 2-to-3 lift: support edges +-1, join edges doubled.
std::map<int, int> z2_lift_values(const SignedGraph& g, const EdgeSet& support,
                                  const EdgeSet& join)
{
    // build the support plus two parallel copies of every join edge
    std::vector<int> verts;
    std::vector<Edge> edges;
    std::map<int, int> copy_of; // fresh id -> original join edge
    int next = g.max_edge_id() + 1;
    for (int id : support)
        edges.push_back(g.edge(id));
    for (int id : join) {
        const Edge& e = g.edge(id);
        edges.push_back(e);
        Edge dup = e;
        dup.id = next++;
        copy_of[dup.id] = id;
        edges.push_back(dup);
    }
    for (const Edge& e : edges) {
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    SignedGraph k2(std::move(verts), std::move(edges));

    std::map<int, int> values;
    for (const EdgeSet& comp : edge_components(k2, k2.edge_id_set())) {
        int neg = 0;
        for (int id : comp)
            if (k2.edge(id).sign < 0)
                ++neg;
        if (neg % 2 != 0)
            throw std::logic_error("doubled-join component has odd negative count");
        merge_values(values, two_flow_values(k2, comp));
    }
    // fold the duplicate back onto its original edge
    std::map<int, int> out;
    for (const auto& [id, v] : values) {
        auto it = copy_of.find(id);
        out[it == copy_of.end() ? id : it->second] += v;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

IntFlow lift_z2_to_3flow(const SignedGraph& g, const EdgeSet& support)
{
    SupportComponents comps = support_components(g, support);
    if (comps.odd_count() % 2 != 0)
        throw std::invalid_argument(
            "odd number of odd components; use five_flow_odd_components");

    ContractedTree t = contracted_spanning_tree(g, support);
    VertexSet terminals;
    for (const SupportComponent& m : comps.components)
        if (m.odd())
            terminals.insert(t.rep.at(g.edge(*m.edges.begin()).u));

    EdgeSet join = tree_parity_join(t, terminals);
    std::map<int, int> values = z2_lift_values(g, support, join);

    IntFlow out = wrap_flow(g, std::move(values), 3);
    for (int id : support)
        if (std::abs(out.value(id)) != 1)
            throw std::logic_error("2-to-3 lift must be +-1 exactly on the support");
    VerifyReport rep = verify_flow(g, out, false);
    if (!rep.ok())
        throw std::logic_error("2-to-3 lift fails verification: " + rep.to_string());
    return out;
}

// --- five_flow_odd_components ------------------------------------------------

namespace {

SignedGraph remove_vertices(const SignedGraph& g, const VertexSet& victims)
{
    std::vector<int> verts;
    for (int v : g.vertices())
        if (!victims.count(v))
            verts.push_back(v);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (!victims.count(e.u) && !victims.count(e.v))
            edges.push_back(e);
    return SignedGraph(std::move(verts), std::move(edges));
}

SignedGraph with_negative_loop(const SignedGraph& g, int at, int id)
{
    std::vector<Edge> edges = g.edges();
    edges.push_back(Edge{id, at, at, -1});
    return SignedGraph(g.vertices(), std::move(edges));
}

bool loop_values_ok(const SignedGraph& g, const EdgeSet& support,
                    const std::map<int, int>& values)
{
    for (int id : support) {
        const Edge& e = g.edge(id);
        auto it = values.find(id);
        int v = it == values.end() ? 0 : std::abs(it->second);
        if (v < 1 || v > 3)
            return false;
        if (e.is_loop() && e.sign < 0 && v > 2)
            return false;
    }
    return true;
}

std::map<int, int> five_flow_values(const SignedGraph& g_in, const EdgeSet& supp_in);

// Terminal branch: leaf odd component whose tree neighbor is also odd.
std::map<int, int> five_flow_yy(const SignedGraph& g, const EdgeSet& support,
                                const EdgeSet& comp_u, const EdgeSet& comp_v,
                                int bridge_id)
{
    VertexSet vu = touched_vertices(g, comp_u);
    SignedGraph rest = remove_vertices(g, vu);
    EdgeSet rest_support = support;
    for (int id : comp_u)
        rest_support.erase(id);
    IntFlow g3 = lift_z2_to_3flow(rest, rest_support);

    EdgeSet pair_edges = comp_u;
    pair_edges.insert(comp_v.begin(), comp_v.end());
    pair_edges.insert(bridge_id);
    SignedGraph pair_graph = edge_subgraph(g, pair_edges);
    EdgeSet pair_support = comp_u;
    pair_support.insert(comp_v.begin(), comp_v.end());
    IntFlow g4 = lift_z2_to_3flow(pair_graph, pair_support);

    for (int s : {1, -1}) {
        std::map<int, int> values = g3.values;
        merge_values(values, g4.values, 2 * s);
        if (loop_values_ok(g, support, values))
            return values;
    }

    // fall back to a bounded search with the same off-support shape; the
    // contracted graph is a tree here, so any off-support subset is acyclic
    Orientation canon = default_orientation(g);
    for (bool full_range : {false, true}) {
        std::map<int, std::vector<int>> cand;
        for (const Edge& e : g.edges()) {
            if (support.count(e.id)) {
                if (e.is_loop() && e.sign < 0)
                    cand[e.id] = {1, -1, 2, -2};
                else
                    cand[e.id] = {1, -1, 2, -2, 3, -3};
            } else {
                if (full_range)
                    cand[e.id] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
                else
                    cand[e.id] = {0, 2, -2, 4, -4};
            }
        }
        if (auto sol = constrained_flow_search(g, canon, cand))
            return *sol;
    }
    throw std::logic_error("no conforming 5-flow found (implementation bug)");
}

std::map<int, int> five_flow_values(const SignedGraph& g_in, const EdgeSet& supp_in)
{
    SignedGraph g = g_in;
    EdgeSet support = supp_in;

    // trim leaves, isolated vertices, and off-support edges that close cycles
    // of the contracted multigraph, so the quotient becomes a tree
    for (bool changed = true; changed;) {
        changed = false;
        VertexSet drop;
        for (int v : g.vertices())
            if (g.degree(v) <= 1)
                drop.insert(v);
        if (!drop.empty()) {
            for (int v : drop)
                for (const HalfEdge& h : g.half_edges_at(v))
                    if (support.count(h.edge_id))
                        throw std::logic_error("support touches a leaf vertex");
            g = remove_vertices(g, drop);
            changed = true;
            continue;
        }
        ContractedTree t = contracted_spanning_tree(g, support);
        EdgeSet keep;
        for (const Edge& e : g.edges())
            if (support.count(e.id) || t.tree_edges.count(e.id))
                keep.insert(e.id);
        if (keep.size() != g.edge_count()) {
            g = edge_subgraph(g, keep, /*keep_all_vertices=*/true);
            changed = true;
        }
    }

    SupportComponents comps = support_components(g, support);
    int odd = comps.odd_count();
    if (odd % 2 == 0 || odd < 3)
        throw std::logic_error("recursion lost the odd-component invariant");

    ContractedTree t = contracted_spanning_tree(g, support);

    // classify contracted vertices
    std::map<int, int> comp_of; // contracted vertex -> component index
    for (std::size_t i = 0; i < comps.components.size(); ++i)
        comp_of[t.rep.at(g.edge(*comps.components[i].edges.begin()).u)] =
            static_cast<int>(i);

    std::map<int, int> tree_deg;
    for (int id : t.tree_edges) {
        // tree edges live in the quotient; recover endpoints through rep
        const Edge& e = g.edge(id);
        tree_deg[t.rep.at(e.u)] += 1;
        tree_deg[t.rep.at(e.v)] += 1;
    }

    struct Leaf {
        int vertex;    // contracted leaf
        int comp;      // component index, -1 for plain vertices
        int neighbor;  // contracted neighbor
        int bridge;    // the unique connecting edge
    };
    std::vector<Leaf> leaves;
    for (const auto& [v, d] : tree_deg) {
        if (d != 1)
            continue;
        int bridge = -1;
        for (int id : t.tree_edges) {
            const Edge& e = g.edge(id);
            if (t.rep.at(e.u) == v || t.rep.at(e.v) == v)
                bridge = id;
        }
        const Edge& be = g.edge(bridge);
        int nb = t.rep.at(be.u) == v ? t.rep.at(be.v) : t.rep.at(be.u);
        auto it = comp_of.find(v);
        leaves.push_back(Leaf{v, it == comp_of.end() ? -1 : it->second, nb, bridge});
    }
    if (leaves.empty())
        throw std::logic_error("contracted tree has no leaves");

    auto is_odd_comp = [&](int ci) { return ci >= 0 && comps.components[ci].odd(); };

    // even leaf component: peel it off and recurse
    for (const Leaf& lf : leaves) {
        if (lf.comp < 0)
            throw std::logic_error("plain vertex survived trimming as a leaf");
        if (!is_odd_comp(lf.comp)) {
            const EdgeSet& bu = comps.components[lf.comp].edges;
            SignedGraph rest = remove_vertices(g, touched_vertices(g, bu));
            EdgeSet rest_support = support;
            for (int id : bu)
                rest_support.erase(id);
            std::map<int, int> values = five_flow_values(rest, rest_support);
            merge_values(values, two_flow_values(g, bu));
            return values;
        }
    }

    // odd leaf with a non-odd neighbor: the main reduction
    for (const Leaf& lf : leaves) {
        int nc = comp_of.count(lf.neighbor) ? comp_of.at(lf.neighbor) : -1;
        if (is_odd_comp(nc))
            continue;
        const EdgeSet& bu = comps.components[lf.comp].edges;
        const Edge& be = g.edge(lf.bridge);
        int xu = touched_vertices(g, bu).count(be.u) ? be.u : be.v;
        int xv = be.other(xu);

        int loop1 = g.max_edge_id() + 1;
        SignedGraph g1 = with_negative_loop(remove_vertices(g, touched_vertices(g, bu)),
                                            xv, loop1);
        EdgeSet supp1 = support;
        for (int id : bu)
            supp1.erase(id);
        supp1.insert(loop1);
        std::map<int, int> g5 = five_flow_values(g1, supp1);

        int a = g5.at(loop1);
        if (std::abs(a) < 1 || std::abs(a) > 2)
            throw std::logic_error("recursive 5-flow breaks the loop value bound");
        g5.erase(loop1);

        int loop2 = loop1 + 1;
        SignedGraph g2 = with_negative_loop(edge_subgraph(g, bu), xu, loop2);
        std::map<int, int> g6 = two_flow_values(g2, g2.edge_id_set());
        int s = -be.sign * g6.at(loop2);

        std::map<int, int> values = std::move(g5);
        for (int id : bu)
            values[id] = a * s * g6.at(id);
        int txv = (be.u == xv) ? 0 : 1;
        values[lf.bridge] = 2 * a * tau_at(g, lf.bridge, txv);
        return values;
    }

    // every leaf is odd with an odd neighbor
    const Leaf& lf = leaves.front();
    return five_flow_yy(g, support, comps.components[lf.comp].edges,
                        comps.components[comp_of.at(lf.neighbor)].edges, lf.bridge);
}

} // namespace

IntFlow five_flow_odd_components(const SignedGraph& g, const EdgeSet& support)
{
    if (!is_connected(g))
        throw std::invalid_argument("graph must be connected");
    SupportComponents comps = support_components(g, support);
    int odd = comps.odd_count();
    if (odd % 2 == 0 || odd < 3)
        throw std::invalid_argument("odd-component count must be odd and at least 3");

    IntFlow out = wrap_flow(g, five_flow_values(g, support), 5);
    VerifyReport rep = verify_flow(g, out, false);
    if (!rep.ok())
        throw std::logic_error("5-flow fails verification: " + rep.to_string());
    if (!loop_values_ok(g, support, out.values))
        throw std::logic_error("5-flow violates the support value bounds");

    // supp(f)/support must be acyclic
    Contraction q = contract(g, support);
    EdgeSet extra;
    for (const auto& [id, v] : out.values)
        if (!support.count(id) && v != 0)
            extra.insert(id);
    VertexSet seen;
    for (int id : extra) {
        const Edge& e = q.graph.edge(id);
        if (e.is_loop())
            throw std::logic_error("5-flow support closes a contracted cycle");
    }
    SignedGraph quotient_extra = edge_subgraph(q.graph, extra);
    std::size_t vertices = quotient_extra.vertex_count();
    std::size_t comps_count = vertex_components(quotient_extra).size();
    if (quotient_extra.edge_count() != vertices - comps_count)
        throw std::logic_error("5-flow support closes a contracted cycle");
    return out;
}

// --- covering an unbalanced circuit by a 4-flow -------------------------------

namespace {

struct CircuitIndex {
    const Circuit& c;
    std::map<int, int> pos; // vertex -> index in vertex_seq
    explicit CircuitIndex(const Circuit& circ) : c(circ)
    {
        for (std::size_t i = 0; i < circ.vertex_seq.size(); ++i)
            pos[circ.vertex_seq[i]] = static_cast<int>(i);
    }
    int n() const { return static_cast<int>(c.vertex_seq.size()); }
    // edges of the arc running forward from position i to position j
    std::vector<int> arc_edges(int i, int j) const
    {
        std::vector<int> out;
        for (int k = i; k != j; k = (k + 1) % n())
            out.push_back(c.edge_ids[k]);
        if (i == j)
            for (int k = 0; k < n(); ++k)
                out.push_back(c.edge_ids[(i + k) % n()]);
        return out;
    }
    std::vector<int> arc_vertices(int i, int j) const
    {
        std::vector<int> out = {c.vertex_seq[i]};
        for (int k = i; k != j; k = (k + 1) % n())
            out.push_back(c.vertex_seq[(k + 1) % n()]);
        return out;
    }
};

} // namespace

std::optional<DisjointPaths> two_disjoint_paths(const SignedGraph& g, const EdgeSet& within,
                                                int source, int t1, int t2)
{
    // unit vertex capacities via vertex splitting; two BFS augmentations
    struct Arc {
        int to;
        int cap;
        int orig;
        int rev;
        int edge_id; // -1 for split/sink arcs
    };
    std::vector<int> vlist;
    for (int v : touched_vertices(g, within))
        vlist.push_back(v);
    std::map<int, int> vidx;
    for (std::size_t i = 0; i < vlist.size(); ++i)
        vidx[vlist[i]] = static_cast<int>(i);
    if (!vidx.count(source) || !vidx.count(t1) || !vidx.count(t2))
        return std::nullopt;

    auto in_of = [&](int v) { return 2 * vidx.at(v); };
    auto out_of = [&](int v) { return 2 * vidx.at(v) + 1; };
    int sink = 2 * static_cast<int>(vlist.size());
    std::vector<std::vector<Arc>> arcs(sink + 1);
    auto add_arc = [&](int a, int b, int cap, int edge_id) {
        arcs[a].push_back(Arc{b, cap, cap, static_cast<int>(arcs[b].size()), edge_id});
        arcs[b].push_back(Arc{a, 0, 0, static_cast<int>(arcs[a].size()) - 1, edge_id});
    };
    for (int v : vlist)
        add_arc(in_of(v), out_of(v), v == source ? 2 : 1, -1);
    for (int id : within) {
        const Edge& e = g.edge(id);
        if (e.is_loop())
            continue;
        add_arc(out_of(e.u), in_of(e.v), 1, id);
        add_arc(out_of(e.v), in_of(e.u), 1, id);
    }
    add_arc(out_of(t1), sink, 1, -1);
    add_arc(out_of(t2), sink, 1, -1);

    int src = in_of(source);
    int flow = 0;
    for (int round = 0; round < 2; ++round) {
        std::vector<std::pair<int, int>> pred(arcs.size(), {-1, -1});
        std::queue<int> q;
        q.push(src);
        pred[src] = {src, -1};
        while (!q.empty() && pred[sink].first < 0) {
            int v = q.front();
            q.pop();
            for (std::size_t i = 0; i < arcs[v].size(); ++i) {
                const Arc& a = arcs[v][i];
                if (a.cap > 0 && pred[a.to].first < 0) {
                    pred[a.to] = {v, static_cast<int>(i)};
                    q.push(a.to);
                }
            }
        }
        if (pred[sink].first < 0)
            break;
        for (int v = sink; v != src;) {
            auto [pv, pi] = pred[v];
            arcs[pv][pi].cap -= 1;
            arcs[arcs[pv][pi].to][arcs[pv][pi].rev].cap += 1;
            v = pv;
        }
        ++flow;
    }
    if (flow < 2)
        return std::nullopt;

    // node index -> vertex (in-nodes are even, out-nodes odd)
    auto vertex_of = [&](int node) { return vlist[node / 2]; };
    auto used = [](const Arc& a) { return a.edge_id >= 0 && a.cap < a.orig; };

    auto extract = [&]() {
        std::vector<int> vs = {source};
        std::vector<int> es;
        int cur = source;
        for (;;) {
            if ((cur == t1 || cur == t2) && cur != source) {
                // stop when the sink arc carries this unit
                for (Arc& a : arcs[out_of(cur)])
                    if (a.to == sink && a.cap < a.orig) {
                        a.cap += 1;
                        return std::make_pair(vs, es);
                    }
            }
            bool advanced = false;
            for (Arc& a : arcs[out_of(cur)]) {
                if (!used(a))
                    continue;
                a.cap += 1; // consume this unit of flow
                cur = vertex_of(a.to);
                vs.push_back(cur);
                es.push_back(a.edge_id);
                advanced = true;
                break;
            }
            if (!advanced)
                return std::make_pair(std::vector<int>{}, std::vector<int>{});
        }
    };

    auto p1 = extract();
    auto p2 = extract();
    if (p1.first.empty() || p2.first.empty())
        return std::nullopt;
    DisjointPaths dp;
    if (p1.first.back() == t1) {
        dp.vertices1 = p1.first;
        dp.edges1 = p1.second;
        dp.vertices2 = p2.first;
        dp.edges2 = p2.second;
    } else {
        dp.vertices1 = p2.first;
        dp.edges1 = p2.second;
        dp.vertices2 = p1.first;
        dp.edges2 = p1.second;
    }
    if (dp.vertices1.back() != t1 || dp.vertices2.back() != t2)
        return std::nullopt;
    return dp;
}

namespace {

struct SegmentInfo {
    int from_pos, to_pos; // positions on C; segment runs forward from->to
    std::vector<int> edges;
    bool negative;
};

std::vector<SegmentInfo> component_segments(const SignedGraph& g, const CircuitIndex& ci,
                                            const std::vector<int>& attachment_pos)
{
    std::vector<SegmentInfo> segs;
    int k = static_cast<int>(attachment_pos.size());
    for (int i = 0; i < k; ++i) {
        SegmentInfo s;
        s.from_pos = attachment_pos[i];
        s.to_pos = attachment_pos[(i + 1) % k];
        s.edges = ci.arc_edges(s.from_pos, s.to_pos);
        s.negative = circuit_negative_count(g, s.edges) % 2 != 0;
        segs.push_back(std::move(s));
    }
    return segs;
}

IntFlow cover_branch_a(const SignedGraph& g, const CircuitIndex& ci, const EdgeSet& comp,
                       const std::vector<SegmentInfo>& segs)
{
    std::vector<int> neg_pos; // start positions of the negative segments
    for (const SegmentInfo& s : segs)
        if (s.negative)
            neg_pos.push_back(s.from_pos);
    int t = static_cast<int>(neg_pos.size());
    if (t < 3 || t % 2 == 0)
        throw std::logic_error("negative segment count must be odd and >= 3 here");

    // consecutive triples of negative segments partition C at their starts
    for (int r = 0; r < t; ++r) {
        int z0 = neg_pos[r], z1 = neg_pos[(r + 1) % t], z2 = neg_pos[(r + 2) % t];
        std::array<int, 3> zs = {z0, z1, z2};
        // roles: (ends p,q in circuit order, middle m)
        const std::array<std::array<int, 3>, 3> roles = {{
            {0, 1, 2}, // middle z2
            {1, 2, 0}, // middle z0
            {2, 0, 1}, // middle z1
        }};
        for (const auto& role : roles) {
            int p = zs[role[0]], q = zs[role[1]], m = zs[role[2]];
            int vp = ci.c.vertex_seq[p], vq = ci.c.vertex_seq[q], vm = ci.c.vertex_seq[m];
            auto dp = two_disjoint_paths(g, comp, vm, vp, vq);
            if (!dp)
                continue;
            // 2 f1 + f2 over the two balanced pieces
            EdgeSet c1 = EdgeSet(dp->edges1.begin(), dp->edges1.end());
            for (int id : ci.arc_edges(p, m))
                c1.insert(id);
            EdgeSet c2 = EdgeSet(dp->edges2.begin(), dp->edges2.end());
            for (int id : ci.arc_edges(m, q))
                c2.insert(id);
            std::map<int, int> values;
            merge_values(values, two_flow_values(g, c1), 2);
            merge_values(values, two_flow_values(g, c2), 1);
            return wrap_flow(g, std::move(values), 4);
        }
    }

    // tripod: partition at the first triple, legs meeting at a single vertex
    int z0 = neg_pos[0], z1 = neg_pos[1], z2 = neg_pos[2];
    int u1 = ci.c.vertex_seq[z0], u2 = ci.c.vertex_seq[z1], u3 = ci.c.vertex_seq[z2];
    auto p1 = bfs_path(g, comp, u1, u2);
    if (!p1)
        throw std::logic_error("attachments must lie in one component");

    // BFS from u3 until it first touches P1
    VertexSet on_p1(p1->first.begin(), p1->first.end());
    if (on_p1.count(u3))
        throw std::logic_error("a through-path exists but was not found");
    auto inc = subset_incidence(g, comp);
    std::map<int, std::pair<int, int>> pred;
    std::queue<int> bq;
    bq.push(u3);
    pred[u3] = {u3, -1};
    int touch = -1;
    while (!bq.empty() && touch < 0) {
        int v = bq.front();
        bq.pop();
        for (const HalfEdge& h : inc[v]) {
            const Edge& e = g.edge(h.edge_id);
            if (e.is_loop())
                continue;
            int w = e.other(v);
            if (pred.count(w))
                continue;
            pred[w] = {v, h.edge_id};
            if (on_p1.count(w)) {
                touch = w;
                break;
            }
            bq.push(w);
        }
    }
    if (touch < 0)
        throw std::logic_error("third attachment cannot reach the first path");
    std::vector<int> leg3_v = {touch};
    std::vector<int> leg3_e;
    while (leg3_v.back() != u3) {
        auto [pv, pe] = pred[leg3_v.back()];
        leg3_e.push_back(pe);
        leg3_v.push_back(pv);
    }
    std::reverse(leg3_v.begin(), leg3_v.end()); // u3 .. touch
    std::reverse(leg3_e.begin(), leg3_e.end());
    int v_mid = touch;
    if (v_mid == u1 || v_mid == u2)
        throw std::logic_error("a through-path exists but was not found");

    // split P1 at v_mid: legs u1 -> v and u2 -> v
    std::vector<int> leg1_v, leg1_e, leg2_v, leg2_e;
    std::size_t mid_idx = 0;
    while (p1->first[mid_idx] != v_mid)
        ++mid_idx;
    leg1_v.assign(p1->first.begin(), p1->first.begin() + mid_idx + 1);
    leg1_e.assign(p1->second.begin(), p1->second.begin() + mid_idx);
    leg2_v.assign(p1->first.begin() + mid_idx, p1->first.end());
    leg2_e.assign(p1->second.begin() + mid_idx, p1->second.end());
    std::reverse(leg2_v.begin(), leg2_v.end()); // u2 .. v
    std::reverse(leg2_e.begin(), leg2_e.end());

    // junction system: arcs contribute the same value at both ends (odd
    // parity), legs transport. Prefer leg magnitudes {1,2,3}.
    std::array<int, 3> mags = {1, 2, 3};
    std::sort(mags.begin(), mags.end());
    do {
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    int y1 = s1 * mags[0], y2 = s2 * mags[1], y3 = s3 * mags[2];
                    if (y1 + y2 + y3 != 0)
                        continue;
                    if ((-y1 - y2 + y3) % 2 != 0)
                        continue;
                    int x1 = (-y1 - y2 + y3) / 2; // arc z0 -> z1
                    int x2 = (y1 - y2 - y3) / 2;  // arc z1 -> z2
                    int x3 = (-y1 + y2 - y3) / 2; // arc z2 -> z0
                    auto okmag = [](int x) { return x != 0 && std::abs(x) <= 3; };
                    if (!okmag(x1) || !okmag(x2) || !okmag(x3))
                        continue;
                    std::map<int, int> values;
                    auto add_arc_flow = [&](int from, int to, int contrib) {
                        auto ve = ci.arc_edges(from, to);
                        auto vv = ci.arc_vertices(from, to);
                        auto [vals, endc] = transport_path(g, ve, vv, contrib);
                        (void)endc;
                        merge_values(values, vals);
                    };
                    add_arc_flow(z0, z1, x1);
                    add_arc_flow(z1, z2, x2);
                    add_arc_flow(z2, z0, x3);
                    auto add_leg = [&](const std::vector<int>& es, const std::vector<int>& vs,
                                       int contrib) {
                        auto [vals, endc] = transport_path(g, es, vs, contrib);
                        (void)endc;
                        merge_values(values, vals);
                    };
                    add_leg(leg1_e, leg1_v, y1);
                    add_leg(leg2_e, leg2_v, y2);
                    add_leg(leg3_e, leg3_v, y3);
                    IntFlow f = wrap_flow(g, std::move(values), 4);
                    if (verify_flow(g, f, false).ok())
                        return f;
                }
    } while (std::next_permutation(mags.begin(), mags.end()));
    throw std::logic_error("tripod sign system has no solution");
}

} // namespace

CosegmentCover minimal_cosegment_cover(const SignedGraph& g, const Circuit& c,
                                       const std::vector<EdgeSet>& components)
{
    CircuitIndex ci(c);
    CosegmentCover cover;
    cover.circuit = c;
    cover.components = components;

    for (const EdgeSet& comp : components) {
        std::vector<int> att_pos;
        for (int v : touched_vertices(g, comp))
            if (ci.pos.count(v))
                att_pos.push_back(ci.pos.at(v));
        std::sort(att_pos.begin(), att_pos.end());
        if (att_pos.empty())
            throw std::invalid_argument("component does not attach to the circuit");

        std::vector<SegmentInfo> segs = component_segments(g, ci, att_pos);
        std::vector<const SegmentInfo*> negs;
        for (const SegmentInfo& s : segs)
            if (s.negative)
                negs.push_back(&s);
        if (negs.size() != 1)
            throw std::invalid_argument(
                "component determines more than one negative segment");

        CosegmentEntry entry;
        entry.component = comp;
        for (int p : att_pos)
            entry.attachments.push_back(c.vertex_seq[p]);
        entry.segment_from = c.vertex_seq[negs[0]->from_pos];
        entry.segment_to = c.vertex_seq[negs[0]->to_pos];
        entry.segment_edges = negs[0]->edges;
        if (negs[0]->from_pos == negs[0]->to_pos)
            continue; // single attachment: the segment is all of C, no cosegment
        entry.cosegment_edges = ci.arc_edges(negs[0]->to_pos, negs[0]->from_pos);
        entry.x = c.vertex_seq[negs[0]->to_pos];
        entry.y = c.vertex_seq[negs[0]->from_pos];
        cover.entries.push_back(std::move(entry));
    }

    // start from all cosegments; drop redundant ones greedily
    std::vector<int> chosen;
    for (std::size_t i = 0; i < cover.entries.size(); ++i)
        chosen.push_back(static_cast<int>(i));
    auto covers_all = [&](const std::vector<int>& sel) {
        EdgeSet un;
        for (int i : sel)
            for (int id : cover.entries[i].cosegment_edges)
                un.insert(id);
        return un.size() == c.edge_ids.size();
    };
    if (!covers_all(chosen))
        throw std::invalid_argument(
            "cosegments do not cover the circuit (negative segments intersect)");
    for (std::size_t i = 0; i < cover.entries.size(); ++i) {
        std::vector<int> trial;
        for (int j : chosen)
            if (j != static_cast<int>(i))
                trial.push_back(j);
        if (trial.size() < chosen.size() && covers_all(trial))
            chosen = trial;
    }
    // cyclic order by cosegment start
    std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
        return ci.pos.at(cover.entries[a].x) < ci.pos.at(cover.entries[b].x);
    });
    cover.cover = chosen;

    // every circuit edge must lie in at most two chosen cosegments
    std::map<int, int> usage;
    for (int i : chosen)
        for (int id : cover.entries[i].cosegment_edges)
            usage[id] += 1;
    for (const auto& [id, cnt] : usage)
        if (cnt > 2)
            throw std::logic_error("minimal cover puts an edge into three cosegments");

    for (int i : chosen) {
        const CosegmentEntry& e = cover.entries[i];
        auto p = bfs_path(g, e.component, e.x, e.y);
        if (!p)
            throw std::logic_error("cosegment endpoints must lie in one component");
        cover.path_vertices.push_back(p->first);
        cover.path_edges.push_back(p->second);
    }
    return cover;
}

IntFlow cover_circuit_4flow(const SignedGraph& g, const Circuit& c)
{
    if (circuit_negative_count(g, c.edge_ids) % 2 == 0)
        throw std::invalid_argument("circuit must be unbalanced");
    EdgeSet rest = g.edge_id_set();
    for (int id : c.edge_ids)
        rest.erase(id);
    BalanceWitness bw = is_balanced(g, rest);
    if (!bw.balanced)
        throw std::invalid_argument("g - E(C) must be balanced");
    AdmissibilityReport adm = is_flow_admissible(g);
    if (!adm.admissible)
        throw std::invalid_argument("graph is not flow-admissible: " + adm.detail);
    if (!is_connected(g))
        throw std::invalid_argument("graph must be connected");

    // switch all edges off C positive
    SwitchResult sw = switch_graph(g, default_orientation(g), nullptr, bw.switching_set);
    const SignedGraph& h = sw.graph;

    CircuitIndex ci(c);
    std::vector<EdgeSet> comps = edge_components(h, rest);

    auto finish = [&](IntFlow f_on_h) {
        SwitchResult undo = switch_graph(h, default_orientation(h), &f_on_h,
                                         bw.switching_set);
        IntFlow result = to_default_orientation(g, *undo.flow);
        result.bound_k = 4;
        for (int id : c.edge_ids)
            if (result.value(id) == 0)
                throw std::logic_error("cover flow misses a circuit edge");
        VerifyReport rep = verify_flow(g, result, false);
        if (!rep.ok())
            throw std::logic_error("cover flow fails verification: " + rep.to_string());
        // support degrees off C: at most 3, and at most one vertex of degree 3
        SignedGraph suppg = edge_subgraph(g, result.support());
        VertexSet on_c(c.vertex_seq.begin(), c.vertex_seq.end());
        int deg3 = 0;
        for (int v : suppg.vertices()) {
            if (on_c.count(v))
                continue;
            int d = suppg.degree(v);
            if (d > 3 || (d == 3 && ++deg3 > 1))
                throw std::logic_error("cover flow violates the degree conditions");
        }
        return result;
    };

    // Branch A: some component determines three or more negative segments
    for (const EdgeSet& comp : comps) {
        std::vector<int> att_pos;
        for (int v : touched_vertices(h, comp))
            if (ci.pos.count(v))
                att_pos.push_back(ci.pos.at(v));
        std::sort(att_pos.begin(), att_pos.end());
        if (att_pos.empty())
            continue;
        std::vector<SegmentInfo> segs = component_segments(h, ci, att_pos);
        int negcount = 0;
        for (const SegmentInfo& s : segs)
            if (s.negative)
                ++negcount;
        if (negcount > 1)
            return finish(cover_branch_a(h, ci, comp, segs));
    }

    // Branch B: one negative segment per component; stitch the minimal cover
    CosegmentCover cover = minimal_cosegment_cover(h, c, comps);
    int t = static_cast<int>(cover.cover.size());
    if (t < 2)
        throw std::logic_error("minimal cover must have at least two members");

    std::vector<std::map<int, int>> flows;
    std::vector<EdgeSet> circuit_sets;
    for (int i = 0; i < t; ++i) {
        const CosegmentEntry& e = cover.entries[cover.cover[i]];
        EdgeSet set(e.cosegment_edges.begin(), e.cosegment_edges.end());
        for (int id : cover.path_edges[i])
            set.insert(id);
        circuit_sets.push_back(set);
        flows.push_back(two_flow_values(h, set));
    }
    // consecutive flows must agree on their overlap so the sum stays nonzero
    for (int i = 0; i + 1 < t; ++i) {
        std::vector<int> shared;
        for (int id : circuit_sets[i])
            if (circuit_sets[i + 1].count(id))
                shared.push_back(id);
        if (shared.empty())
            throw std::logic_error("consecutive cover members must overlap");
        int id = *std::min_element(shared.begin(), shared.end());
        if (flows[i].at(id) != flows[i + 1].at(id))
            for (auto& [k, v] : flows[i + 1])
                v = -v;
    }
    std::map<int, int> values;
    for (int i = 0; i < t; ++i)
        merge_values(values, flows[i], i == t - 1 ? 2 : 1);
    return finish(wrap_flow(h, std::move(values), 4));
}

// --- flow extension across a contracted circuit ------------------------------

std::map<int, int> extend_circuit_values(const SignedGraph& g, const Circuit& c,
                                         const std::map<int, int>& injections, int k)
{
    int n = static_cast<int>(c.edge_ids.size());
    auto inj = [&](int v) {
        auto it = injections.find(v);
        return it == injections.end() ? 0 : it->second;
    };
    if (n == 1) {
        // positive loop: free circulation, no constraint
        return {{c.edge_ids[0], 1}};
    }
    auto tau_of = [&](int idx, int vertex) {
        const Edge& e = g.edge(c.edge_ids[idx]);
        int end = (e.u == vertex) ? 0 : 1;
        if (e.is_loop())
            throw std::logic_error("loop on a longer circuit");
        return canonical_tau(e)[end];
    };
    for (int abs_c = 1; abs_c <= k - 1; ++abs_c) {
        for (int sign : {1, -1}) {
            std::vector<int> vals(n, 0);
            vals[0] = sign * abs_c;
            bool ok = true;
            for (int i = 1; i < n && ok; ++i) {
                int v = c.vertex_seq[i]; // shared by edges i-1 and i
                int lhs = tau_of(i - 1, v) * vals[i - 1] + inj(v);
                vals[i] = -lhs * tau_of(i, v); // tau is +-1
                if (vals[i] == 0 || std::abs(vals[i]) > k - 1)
                    ok = false;
            }
            if (!ok)
                continue;
            int v0 = c.vertex_seq[0];
            if (tau_of(n - 1, v0) * vals[n - 1] + tau_of(0, v0) * vals[0] + inj(v0) != 0)
                continue;
            std::map<int, int> out;
            for (int i = 0; i < n; ++i)
                out[c.edge_ids[i]] = vals[i];
            return out;
        }
    }
    throw std::logic_error("no nonzero circuit extension exists at this k");
}

IntFlow extend_flow_contraction(const SignedGraph& g, const Circuit& c,
                                const IntFlow& flow_on_contraction, int k)
{
    if (k < 4)
        throw std::invalid_argument("extension requires k >= 4");
    VertexSet cv(c.vertex_seq.begin(), c.vertex_seq.end());
    for (int id : c.edge_ids)
        if (g.edge(id).sign < 0)
            throw std::invalid_argument("circuit must be all-positive");
    EdgeSet cset = c.edge_set();
    int delta = 0;
    for (const Edge& e : g.edges()) {
        if (cset.count(e.id))
            continue;
        bool iu = cv.count(e.u) > 0, iv = cv.count(e.v) > 0;
        if (iu && iv)
            throw std::invalid_argument("circuit has a chord");
        if (iu || iv)
            ++delta;
    }
    if (delta < 2 || delta > 3)
        throw std::invalid_argument("|delta(V(C))| must be 2 or 3");

    Contraction q = contract(g, cset);
    VerifyReport rep = verify_flow(q.graph, flow_on_contraction, true);
    if (!rep.ok())
        throw std::invalid_argument("flow on the contraction is not a nowhere-zero flow");
    if (flow_on_contraction.bound_k > k)
        throw std::invalid_argument("flow bound exceeds k");

    // injections at circuit vertices from the boundary edges
    Orientation canon = default_orientation(g);
    std::map<int, int> injections;
    std::map<int, int> values;
    for (const Edge& e : g.edges()) {
        if (cset.count(e.id))
            continue;
        int val = flow_on_contraction.value(e.id)
                * reorient_value_sign(e, flow_on_contraction.tau, canon);
        values[e.id] = val;
        for (int end : {0, 1}) {
            int v = e.endpoint(end);
            if (cv.count(v))
                injections[v] += canonical_tau(e)[end] * val;
        }
    }
    merge_values(values, extend_circuit_values(g, c, injections, k));
    IntFlow out = wrap_flow(g, std::move(values), k);
    VerifyReport rep2 = verify_flow(g, out, true);
    if (!rep2.ok())
        throw std::logic_error("extended flow fails verification: " + rep2.to_string());
    return out;
}

} // namespace sgf
