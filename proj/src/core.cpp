#include "sgf/core.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sgf {

SignedGraph::SignedGraph(std::vector<int> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges))
{
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    build_index();
}

SignedGraph SignedGraph::from_triples(const std::vector<std::tuple<int, int, int>>& triples)
{
    std::vector<int> verts;
    std::vector<Edge> edges;
    int id = 0;
    for (const auto& [u, v, s] : triples) {
        if (s != 1 && s != -1)
            throw std::invalid_argument("edge sign must be +1 or -1");
        edges.push_back(Edge{id++, u, v, s});
        verts.push_back(u);
        verts.push_back(v);
    }
    return SignedGraph(std::move(verts), std::move(edges));
}

void SignedGraph::build_index()
{
    edge_index_.clear();
    incidence_.clear();
    for (int v : vertices_)
        incidence_[v]; // ensure empty vectors for isolated vertices
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (edge_index_.count(e.id))
            throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
        if (!std::binary_search(vertices_.begin(), vertices_.end(), e.u)
            || !std::binary_search(vertices_.begin(), vertices_.end(), e.v))
            throw std::invalid_argument("edge endpoint is not a declared vertex");
        edge_index_[e.id] = static_cast<int>(i);
        incidence_[e.u].push_back(HalfEdge{e.id, 0});
        incidence_[e.v].push_back(HalfEdge{e.id, 1});
    }
}

bool SignedGraph::has_vertex(int v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool SignedGraph::has_edge(int id) const { return edge_index_.count(id) > 0; }

const Edge& SignedGraph::edge(int id) const
{
    auto it = edge_index_.find(id);
    if (it == edge_index_.end())
        throw std::out_of_range("unknown edge id " + std::to_string(id));
    return edges_[it->second];
}

const std::vector<HalfEdge>& SignedGraph::half_edges_at(int v) const
{
    auto it = incidence_.find(v);
    if (it == incidence_.end())
        throw std::out_of_range("unknown vertex " + std::to_string(v));
    return it->second;
}

int SignedGraph::degree(int v) const { return static_cast<int>(half_edges_at(v).size()); }

EdgeSet SignedGraph::edge_id_set() const
{
    EdgeSet s;
    for (const Edge& e : edges_)
        s.insert(e.id);
    return s;
}

EdgeSet SignedGraph::negative_edges() const
{
    EdgeSet s;
    for (const Edge& e : edges_)
        if (e.sign < 0)
            s.insert(e.id);
    return s;
}

int SignedGraph::max_edge_id() const
{
    int m = -1;
    for (const Edge& e : edges_)
        m = std::max(m, e.id);
    return m;
}

int IntFlow::value(int edge_id) const
{
    auto it = values.find(edge_id);
    return it == values.end() ? 0 : it->second;
}

EdgeSet IntFlow::support() const
{
    EdgeSet s;
    for (const auto& [id, val] : values)
        if (val != 0)
            s.insert(id);
    return s;
}

EdgeSet IntFlow::edges_with_abs(int i) const
{
    EdgeSet s;
    for (const auto& [id, val] : values)
        if (std::abs(val) == i && i != 0)
            s.insert(id);
    return s;
}

int ModFlow::value(int edge_id) const
{
    auto it = values.find(edge_id);
    return it == values.end() ? 0 : it->second;
}

EdgeSet ModFlow::support() const
{
    EdgeSet s;
    for (const auto& [id, val] : values)
        if (val % modulus != 0)
            s.insert(id);
    return s;
}

EdgeSet SignedCircuit::edge_set() const
{
    EdgeSet s;
    for (const Circuit& c : circuits)
        for (int id : c.edge_ids)
            s.insert(id);
    for (int id : path_edges)
        s.insert(id);
    return s;
}

std::string VerifyReport::to_string() const
{
    std::ostringstream os;
    for (const auto& m : orientation_errors)
        os << "orientation: " << m << "\n";
    for (const auto& [v, b] : boundary_violations)
        os << "boundary at vertex " << v << " = " << b << "\n";
    for (int id : bound_violations)
        os << "edge " << id << " exceeds value bound\n";
    for (int id : zero_edges)
        os << "edge " << id << " carries zero\n";
    return os.str();
}

SignedGraph build_graph(const std::vector<std::tuple<int, int, int>>& triples)
{
    return SignedGraph::from_triples(triples);
}

std::array<int, 2> canonical_tau(const Edge& e)
{
    if (e.sign < 0)
        return {1, 1};
    if (e.is_loop() || e.u < e.v)
        return {1, -1};
    return {-1, 1};
}

Orientation default_orientation(const SignedGraph& g)
{
    Orientation tau;
    for (const Edge& e : g.edges())
        tau.tau[e.id] = canonical_tau(e);
    return tau;
}

bool orientation_consistent(const SignedGraph& g, const Orientation& tau)
{
    for (const Edge& e : g.edges()) {
        auto it = tau.tau.find(e.id);
        if (it == tau.tau.end())
            return false;
        if (it->second[0] * it->second[1] != -e.sign)
            return false;
    }
    return true;
}

int boundary(const SignedGraph& g, const Orientation& tau,
             const std::map<int, int>& values, int v)
{
    int sum = 0;
    for (const HalfEdge& h : g.half_edges_at(v)) {
        auto it = values.find(h.edge_id);
        if (it != values.end())
            sum += tau.at(h.edge_id, h.end) * it->second;
    }
    return sum;
}

int boundary(const SignedGraph& g, const IntFlow& f, int v)
{
    return boundary(g, f.tau, f.values, v);
}

VerifyReport verify_flow(const SignedGraph& g, const IntFlow& f, bool require_nowhere_zero)
{
    VerifyReport rep;
    for (const Edge& e : g.edges()) {
        auto it = f.tau.tau.find(e.id);
        if (it == f.tau.tau.end()) {
            rep.orientation_errors.push_back("edge " + std::to_string(e.id) + " unoriented");
            continue;
        }
        if (it->second[0] * it->second[1] != -e.sign)
            rep.orientation_errors.push_back(
                "edge " + std::to_string(e.id) + " violates tau(h^u)tau(h^v) = -sigma");
    }
    if (!rep.orientation_errors.empty())
        return rep;
    for (const Edge& e : g.edges()) {
        int val = f.value(e.id);
        if (std::abs(val) > f.bound_k - 1)
            rep.bound_violations.push_back(e.id);
        if (require_nowhere_zero && val == 0)
            rep.zero_edges.push_back(e.id);
    }
    for (int v : g.vertices()) {
        int b = boundary(g, f, v);
        if (b != 0)
            rep.boundary_violations.push_back({v, b});
    }
    return rep;
}

bool is_zk_flow(const SignedGraph& g, const ModFlow& f, bool require_nowhere_zero)
{
    for (int v : g.vertices()) {
        int b = boundary(g, f.tau, f.values, v);
        if (((b % f.modulus) + f.modulus) % f.modulus != 0)
            return false;
    }
    if (require_nowhere_zero)
        for (const Edge& e : g.edges())
            if (f.value(e.id) % f.modulus == 0)
                return false;
    return true;
}

SwitchResult switch_graph(const SignedGraph& g, const Orientation& tau,
                          const IntFlow* flow, const VertexSet& U)
{
    for (int v : U)
        if (!g.has_vertex(v))
            throw std::invalid_argument("switch set contains unknown vertex");

    std::vector<Edge> edges = g.edges();
    Orientation tau2 = tau;
    for (Edge& e : edges) {
        bool in_u = U.count(e.u) > 0;
        bool in_v = U.count(e.v) > 0;
        if (in_u != in_v)
            e.sign = -e.sign;
        auto& t = tau2.tau.at(e.id);
        if (in_u)
            t[0] = -t[0];
        if (in_v)
            t[1] = -t[1];
    }
    SwitchResult res;
    res.graph = SignedGraph(g.vertices(), std::move(edges));
    res.tau = std::move(tau2);
    if (flow) {
        IntFlow f2 = *flow;
        f2.tau = res.tau;
        res.flow = std::move(f2);
    }
    return res;
}

IntFlow combine_flows(const std::vector<std::pair<int, IntFlow>>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("combine_flows needs at least one term");
    const Orientation& tau = terms.front().second.tau;
    for (const auto& [c, f] : terms)
        if (!(f.tau == tau))
            throw std::invalid_argument("combine_flows: mixed orientations");

    IntFlow out;
    out.tau = tau;
    int maxabs = 0;
    for (const auto& [c, f] : terms)
        for (const auto& [id, val] : f.values)
            out.values[id] += c * val;
    for (auto it = out.values.begin(); it != out.values.end();) {
        if (it->second == 0) {
            it = out.values.erase(it);
        } else {
            maxabs = std::max(maxabs, std::abs(it->second));
            ++it;
        }
    }
    out.bound_k = std::max(2, maxabs + 1);
    return out;
}

Contraction contract(const SignedGraph& g, const EdgeSet& s)
{
    // union-find over vertices joined by contracted edges
    std::map<int, int> parent;
    for (int v : g.vertices())
        parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int id : s) {
        const Edge& e = g.edge(id);
        int a = find(e.u), b = find(e.v);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b); // smallest id represents the class
    }

    Contraction out;
    for (int v : g.vertices())
        out.vertex_map[v] = find(v);

    std::vector<int> verts;
    for (int v : g.vertices())
        verts.push_back(out.vertex_map[v]);

    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int nu = out.vertex_map.at(e.u);
        int nv = out.vertex_map.at(e.v);
        if (s.count(e.id)) {
            if (e.sign > 0) {
                out.deleted_edges.push_back(e.id);
            } else {
                out.kept_loops.push_back(e.id);
                edges.push_back(Edge{e.id, nu, nv, e.sign}); // nu == nv
            }
        } else {
            edges.push_back(Edge{e.id, nu, nv, e.sign});
        }
    }
    out.graph = SignedGraph(std::move(verts), std::move(edges));
    return out;
}

SignedGraph edge_subgraph(const SignedGraph& g, const EdgeSet& ids, bool keep_all_vertices)
{
    std::vector<Edge> edges;
    std::vector<int> verts;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        edges.push_back(e);
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    if (keep_all_vertices)
        verts = g.vertices();
    return SignedGraph(std::move(verts), std::move(edges));
}

int reorient_value_sign(const Edge& e, const Orientation& from, const Orientation& to)
{
    // both orientations satisfy the same product invariant, so the two half
    // edges flip together
    return from.at(e.id, 0) == to.at(e.id, 0) ? 1 : -1;
}

IntFlow to_default_orientation(const SignedGraph& g, const IntFlow& f)
{
    Orientation canon = default_orientation(g);
    IntFlow out;
    out.tau = canon;
    out.bound_k = f.bound_k;
    for (const auto& [id, val] : f.values) {
        if (!g.has_edge(id) || val == 0)
            continue;
        out.values[id] = val * reorient_value_sign(g.edge(id), f.tau, canon);
    }
    return out;
}

int circuit_negative_count(const SignedGraph& g, const std::vector<int>& edge_ids)
{
    int c = 0;
    for (int id : edge_ids)
        if (g.edge(id).sign < 0)
            ++c;
    return c;
}

bool circuit_is_balanced(const SignedGraph& g, const Circuit& c)
{
    return circuit_negative_count(g, c.edge_ids) % 2 == 0;
}

void validate_signed_circuit(const SignedGraph& g, const SignedCircuit& sc)
{
    auto check_circuit_shape = [&](const Circuit& c) {
        if (c.edge_ids.empty() || c.edge_ids.size() != c.vertex_seq.size())
            throw std::invalid_argument("malformed circuit");
        std::size_t n = c.edge_ids.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Edge& e = g.edge(c.edge_ids[i]);
            int a = c.vertex_seq[i];
            int b = c.vertex_seq[(i + 1) % n];
            bool match = (e.u == a && e.v == b) || (e.u == b && e.v == a);
            if (!match)
                throw std::invalid_argument("circuit edges do not follow vertex sequence");
        }
        VertexSet vs(c.vertex_seq.begin(), c.vertex_seq.end());
        if (vs.size() != c.vertex_seq.size())
            throw std::invalid_argument("circuit repeats a vertex");
    };

    switch (sc.kind) {
    case SignedCircuitKind::BalancedCircuit: {
        if (sc.circuits.size() != 1 || !sc.path_edges.empty())
            throw std::invalid_argument("balanced circuit must be a single circuit");
        check_circuit_shape(sc.circuits[0]);
        if (!circuit_is_balanced(g, sc.circuits[0]))
            throw std::invalid_argument("circuit has an odd number of negative edges");
        break;
    }
    case SignedCircuitKind::ShortBarbell: {
        if (sc.circuits.size() != 2 || !sc.path_edges.empty())
            throw std::invalid_argument("short barbell needs two circuits and no path");
        for (const Circuit& c : sc.circuits) {
            check_circuit_shape(c);
            if (circuit_is_balanced(g, c))
                throw std::invalid_argument("barbell circuit must be unbalanced");
        }
        VertexSet a(sc.circuits[0].vertex_seq.begin(), sc.circuits[0].vertex_seq.end());
        VertexSet b(sc.circuits[1].vertex_seq.begin(), sc.circuits[1].vertex_seq.end());
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() != 1)
            throw std::invalid_argument("short barbell circuits must share exactly one vertex");
        break;
    }
    case SignedCircuitKind::LongBarbell: {
        if (sc.circuits.size() != 2 || sc.path_edges.empty())
            throw std::invalid_argument("long barbell needs two circuits and a nontrivial path");
        for (const Circuit& c : sc.circuits) {
            check_circuit_shape(c);
            if (circuit_is_balanced(g, c))
                throw std::invalid_argument("barbell circuit must be unbalanced");
        }
        VertexSet a(sc.circuits[0].vertex_seq.begin(), sc.circuits[0].vertex_seq.end());
        VertexSet b(sc.circuits[1].vertex_seq.begin(), sc.circuits[1].vertex_seq.end());
        for (int v : a)
            if (b.count(v))
                throw std::invalid_argument("long barbell circuits must be vertex-disjoint");
        if (sc.path_vertices.size() != sc.path_edges.size() + 1)
            throw std::invalid_argument("malformed barbell path");
        if (!a.count(sc.path_vertices.front()) || !b.count(sc.path_vertices.back()))
            throw std::invalid_argument("path must join the two circuits");
        for (std::size_t i = 0; i + 1 < sc.path_vertices.size(); ++i) {
            const Edge& e = g.edge(sc.path_edges[i]);
            int x = sc.path_vertices[i], y = sc.path_vertices[i + 1];
            if (!((e.u == x && e.v == y) || (e.u == y && e.v == x)))
                throw std::invalid_argument("path edges do not follow path vertices");
        }
        for (std::size_t i = 1; i + 1 < sc.path_vertices.size(); ++i)
            if (a.count(sc.path_vertices[i]) || b.count(sc.path_vertices[i]))
                throw std::invalid_argument("path meets circuits away from its endvertices");
        break;
    }
    }
}

std::vector<EdgeSet> edge_components(const SignedGraph& g, const EdgeSet& ids)
{
    std::map<int, int> comp; // vertex -> component index, only touched vertices
    std::map<int, std::vector<int>> adj;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        adj[e.u].push_back(id);
        if (e.v != e.u)
            adj[e.v].push_back(id);
    }
    std::vector<EdgeSet> out;
    std::set<int> seen_edges;
    for (const auto& [start, _] : adj) {
        if (comp.count(start))
            continue;
        int ci = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack = {start};
        comp[start] = ci;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int id : adj[v]) {
                if (!seen_edges.insert(id).second)
                    continue;
                out[ci].insert(id);
                int w = g.edge(id).other(v);
                if (!comp.count(w)) {
                    comp[w] = ci;
                    stack.push_back(w);
                }
            }
        }
    }
    return out;
}

VertexSet touched_vertices(const SignedGraph& g, const EdgeSet& ids)
{
    VertexSet vs;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        vs.insert(e.u);
        vs.insert(e.v);
    }
    return vs;
}

bool subset_is_eulerian(const SignedGraph& g, const EdgeSet& ids)
{
    std::map<int, int> deg;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        deg[e.u] += 1;
        deg[e.v] += 1; // a loop adds 2 to its vertex
    }
    for (const auto& [v, d] : deg)
        if (d % 2 != 0)
            return false;
    return true;
}

std::vector<WalkStep> eulerian_circuit(const SignedGraph& g, const EdgeSet& component, int start)
{
    if (component.empty())
        return {};
    std::map<int, std::vector<int>> adj; // vertex -> incident ids (loops once)
    for (int id : component) {
        const Edge& e = g.edge(id);
        adj[e.u].push_back(id);
        if (e.v != e.u)
            adj[e.v].push_back(id);
    }
    int v0 = (start >= 0 && adj.count(start)) ? start : adj.begin()->first;

    std::map<int, std::size_t> cursor;
    std::set<int> used;
    std::vector<int> vstack = {v0};
    std::vector<std::pair<int, int>> estack; // (edge id, tail vertex)
    std::vector<std::pair<int, int>> tour;

    while (!vstack.empty()) {
        int v = vstack.back();
        auto& lst = adj[v];
        std::size_t& cur = cursor[v];
        while (cur < lst.size() && used.count(lst[cur]))
            ++cur;
        if (cur == lst.size()) {
            vstack.pop_back();
            if (!estack.empty()) {
                tour.push_back(estack.back());
                estack.pop_back();
            }
        } else {
            int id = lst[cur];
            used.insert(id);
            const Edge& e = g.edge(id);
            int w = e.other(v);
            estack.push_back({id, v});
            vstack.push_back(w);
        }
    }
    std::reverse(tour.begin(), tour.end());
    if (tour.size() != component.size())
        throw std::invalid_argument("edge set is not connected-eulerian");

    std::vector<WalkStep> steps;
    for (const auto& [id, tail] : tour) {
        const Edge& e = g.edge(id);
        WalkStep st;
        st.edge_id = id;
        st.tail = tail;
        st.head = e.other(tail);
        if (e.is_loop()) {
            st.tail_end = 0;
            st.head_end = 1;
        } else {
            st.tail_end = (e.u == tail) ? 0 : 1;
            st.head_end = 1 - st.tail_end;
        }
        steps.push_back(st);
    }
    return steps;
}

std::vector<Circuit> enumerate_circuits(const SignedGraph& g, std::size_t max_edges)
{
    std::vector<Circuit> out;
    std::set<EdgeSet> seen;

    // loops and digons first
    for (const Edge& e : g.edges())
        if (e.is_loop()) {
            Circuit c;
            c.edge_ids = {e.id};
            c.vertex_seq = {e.u};
            out.push_back(c);
        }
    for (const Edge& a : g.edges())
        for (const Edge& b : g.edges()) {
            if (a.id >= b.id || a.is_loop() || b.is_loop())
                continue;
            if ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u)) {
                Circuit c;
                c.edge_ids = {a.id, b.id};
                c.vertex_seq = {a.u, a.v};
                out.push_back(c);
            }
        }
    for (const Circuit& c : out)
        seen.insert(c.edge_set());

    // DFS for longer simple cycles, anchored at their smallest vertex
    for (int root : g.vertices()) {
        std::vector<int> vpath = {root};
        std::vector<int> epath;
        std::set<int> onpath = {root};
        std::function<void(int)> dfs = [&](int v) {
            if (epath.size() >= max_edges)
                return;
            for (const HalfEdge& h : g.half_edges_at(v)) {
                const Edge& e = g.edge(h.edge_id);
                if (e.is_loop())
                    continue;
                if (!epath.empty() && h.edge_id == epath.back())
                    continue;
                int w = e.other(v);
                if (w < root)
                    continue;
                if (w == root && epath.size() >= 2) {
                    Circuit c;
                    c.edge_ids = epath;
                    c.edge_ids.push_back(e.id);
                    c.vertex_seq = vpath;
                    if (seen.insert(c.edge_set()).second)
                        out.push_back(c);
                    continue;
                }
                if (onpath.count(w))
                    continue;
                vpath.push_back(w);
                epath.push_back(e.id);
                onpath.insert(w);
                dfs(w);
                vpath.pop_back();
                epath.pop_back();
                onpath.erase(w);
            }
        };
        dfs(root);
    }
    return out;
}

} // namespace sgf
