#include "sgf/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace sgf {

namespace {

// Recovers the circuit formed by non-tree edge `eid` and the tree path
// between its endpoints. `parent` maps vertex -> (parent vertex, edge id).
Circuit fundamental_circuit(const SignedGraph& g, int eid,
                            const std::map<int, std::pair<int, int>>& parent,
                            const std::map<int, int>& depth)
{
    const Edge& e = g.edge(eid);
    if (e.is_loop()) {
        Circuit c;
        c.edge_ids = {eid};
        c.vertex_seq = {e.u};
        return c;
    }
    int a = e.u, b = e.v;
    std::vector<int> va = {a}, vb = {b};
    std::vector<int> ea, eb;
    int da = depth.at(a), db = depth.at(b);
    while (da > db) {
        ea.push_back(parent.at(va.back()).second);
        va.push_back(parent.at(va.back()).first);
        --da;
    }
    while (db > da) {
        eb.push_back(parent.at(vb.back()).second);
        vb.push_back(parent.at(vb.back()).first);
        --db;
    }
    while (va.back() != vb.back()) {
        ea.push_back(parent.at(va.back()).second);
        va.push_back(parent.at(va.back()).first);
        eb.push_back(parent.at(vb.back()).second);
        vb.push_back(parent.at(vb.back()).first);
    }
    // circuit: a ..up.. lca ..down.. b, closed by e
    Circuit c;
    c.vertex_seq = va;
    for (std::size_t i = vb.size() - 1; i-- > 0;)
        c.vertex_seq.push_back(vb[i]);
    c.edge_ids = ea;
    for (std::size_t i = eb.size(); i-- > 0;)
        c.edge_ids.push_back(eb[i]);
    c.edge_ids.push_back(eid);
    return c;
}

} // namespace

BalanceWitness is_balanced(const SignedGraph& g)
{
    return is_balanced(g, g.edge_id_set());
}

BalanceWitness is_balanced(const SignedGraph& g, const EdgeSet& within)
{
    // spanning-forest potentials; potential(v) in {+1,-1}, edge consistent
    // when potential(u)*potential(v) == sign(e)
    std::map<int, int> pot;
    std::map<int, std::pair<int, int>> parent;
    std::map<int, int> depth;
    BalanceWitness w;

    std::map<int, std::vector<int>> adj;
    for (int id : within) {
        const Edge& e = g.edge(id);
        if (e.is_loop()) {
            if (e.sign < 0) {
                Circuit c;
                c.edge_ids = {id};
                c.vertex_seq = {e.u};
                w.balanced = false;
                w.unbalanced_circuit = c;
                return w;
            }
            continue;
        }
        adj[e.u].push_back(id);
        adj[e.v].push_back(id);
    }

    for (const auto& [root, _] : adj) {
        if (pot.count(root))
            continue;
        pot[root] = 1;
        depth[root] = 0;
        std::vector<int> stack = {root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int id : adj[v]) {
                const Edge& e = g.edge(id);
                int u = e.other(v);
                if (!pot.count(u)) {
                    pot[u] = pot[v] * e.sign;
                    parent[u] = {v, id};
                    depth[u] = depth[v] + 1;
                    stack.push_back(u);
                } else if (pot[u] * pot[v] != e.sign) {
                    bool is_tree_edge = (parent.count(u) && parent[u].second == id)
                                     || (parent.count(v) && parent[v].second == id);
                    if (!is_tree_edge) {
                        w.balanced = false;
                        w.unbalanced_circuit = fundamental_circuit(g, id, parent, depth);
                        return w;
                    }
                }
            }
        }
    }
    // consistent: check the non-tree edges explicitly (stack order above may
    // revisit); any conflict was caught, so assemble U
    for (int id : within) {
        const Edge& e = g.edge(id);
        if (e.is_loop())
            continue;
        if (pot[e.u] * pot[e.v] != e.sign) {
            // can only be a conflict missed because both endpoints were
            // settled through other edges; recover a circuit
            w.balanced = false;
            w.unbalanced_circuit = fundamental_circuit(g, id, parent, depth);
            return w;
        }
    }
    w.balanced = true;
    for (const auto& [v, p] : pot)
        if (p < 0)
            w.switching_set.insert(v);
    return w;
}

std::optional<Circuit> find_unbalanced_circuit(const SignedGraph& g, const EdgeSet& within)
{
    BalanceWitness w = is_balanced(g, within);
    if (w.balanced)
        return std::nullopt;
    return w.unbalanced_circuit;
}

SupportComponents support_components(const SignedGraph& g, const EdgeSet& support)
{
    if (!subset_is_eulerian(g, support))
        throw std::invalid_argument("support is not eulerian (odd vertex degree)");
    SupportComponents out;
    for (EdgeSet& comp : edge_components(g, support)) {
        SupportComponent m;
        m.negative_count = 0;
        for (int id : comp)
            if (g.edge(id).sign < 0)
                ++m.negative_count;
        m.edges = std::move(comp);
        out.components.push_back(std::move(m));
    }
    return out;
}

std::vector<int> find_bridges(const SignedGraph& g)
{
    std::map<int, int> num, low;
    std::vector<int> bridges;
    int counter = 0;

    std::function<void(int, int)> dfs = [&](int v, int pedge) {
        num[v] = low[v] = counter++;
        for (const HalfEdge& h : g.half_edges_at(v)) {
            const Edge& e = g.edge(h.edge_id);
            if (e.is_loop() || h.edge_id == pedge)
                continue;
            int u = e.other(v);
            if (!num.count(u)) {
                dfs(u, h.edge_id);
                low[v] = std::min(low[v], low[u]);
                if (low[u] > num[v])
                    bridges.push_back(h.edge_id);
            } else {
                low[v] = std::min(low[v], num[u]);
            }
        }
    };
    for (int v : g.vertices())
        if (!num.count(v))
            dfs(v, -1);
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

bool is_connected(const SignedGraph& g)
{
    return vertex_components(g).size() <= 1;
}

std::vector<VertexSet> vertex_components(const SignedGraph& g)
{
    std::map<int, int> comp;
    std::vector<VertexSet> out;
    for (int root : g.vertices()) {
        if (comp.count(root))
            continue;
        int ci = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack = {root};
        comp[root] = ci;
        out[ci].insert(root);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const HalfEdge& h : g.half_edges_at(v)) {
                int u = g.edge(h.edge_id).other(v);
                if (!comp.count(u)) {
                    comp[u] = ci;
                    out[ci].insert(u);
                    stack.push_back(u);
                }
            }
        }
    }
    return out;
}

namespace {

AdmissibilityReport admissible_connected(const SignedGraph& g)
{
    AdmissibilityReport rep;

    // bridge condition first: a bridge whose removal leaves a balanced side
    for (int b : find_bridges(g)) {
        EdgeSet rest = g.edge_id_set();
        rest.erase(b);
        SignedGraph h = edge_subgraph(g, rest, /*keep_all_vertices=*/true);
        const Edge& be = g.edge(b);
        for (const VertexSet& side : vertex_components(h)) {
            if (!side.count(be.u) && !side.count(be.v))
                continue;
            EdgeSet side_edges;
            for (int id : rest) {
                const Edge& e = g.edge(id);
                if (side.count(e.u))
                    side_edges.insert(id);
            }
            if (is_balanced(g, side_edges).balanced) {
                rep.admissible = false;
                rep.reason = InadmissibleReason::BridgeWithBalancedComponent;
                rep.witness_edge = b;
                rep.detail = "bridge " + std::to_string(b)
                           + " separates a balanced component";
                return rep;
            }
        }
    }

    // one-negative-edge equivalence: g unbalanced with g-e balanced for some e
    if (!is_balanced(g).balanced) {
        for (const Edge& e : g.edges()) {
            EdgeSet rest = g.edge_id_set();
            rest.erase(e.id);
            if (is_balanced(g, rest).balanced) {
                rep.admissible = false;
                rep.reason = InadmissibleReason::OneNegativeEdgeEquivalent;
                rep.witness_edge = e.id;
                rep.detail = "equivalent to a signature whose only negative edge is "
                           + std::to_string(e.id);
                return rep;
            }
        }
    }
    return rep;
}

} // namespace

AdmissibilityReport is_flow_admissible(const SignedGraph& g)
{
    for (const VertexSet& comp : vertex_components(g)) {
        EdgeSet ids;
        std::vector<int> verts(comp.begin(), comp.end());
        std::vector<Edge> edges;
        for (const Edge& e : g.edges())
            if (comp.count(e.u))
                edges.push_back(e);
        SignedGraph sub(verts, edges);
        AdmissibilityReport rep = admissible_connected(sub);
        if (!rep.admissible)
            return rep;
    }
    return AdmissibilityReport{};
}

bool check_balanced_extension(const SignedGraph& g, const EdgeSet& tree)
{
    if (!is_connected(g))
        throw std::invalid_argument("graph must be connected");
    if (tree.size() + 1 != g.vertex_count())
        throw std::invalid_argument("edge set is not a spanning tree");
    SignedGraph t = edge_subgraph(g, tree, /*keep_all_vertices=*/true);
    if (!is_connected(t))
        throw std::invalid_argument("edge set is not a spanning tree");
    for (int id : tree)
        if (g.edge(id).is_loop())
            throw std::invalid_argument("edge set is not a spanning tree");

    // root the tree, then test every non-tree edge's fundamental circuit
    std::map<int, int> pot;
    int root = g.vertices().front();
    pot[root] = 1;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const HalfEdge& h : t.half_edges_at(v)) {
            const Edge& e = t.edge(h.edge_id);
            int u = e.other(v);
            if (!pot.count(u)) {
                pot[u] = pot[v] * e.sign;
                stack.push_back(u);
            }
        }
    }
    for (const Edge& e : g.edges()) {
        if (tree.count(e.id))
            continue;
        if (e.is_loop()) {
            if (e.sign < 0)
                return false;
            continue;
        }
        if (pot[e.u] * pot[e.v] != e.sign)
            return false;
    }
    return true;
}

} // namespace sgf
