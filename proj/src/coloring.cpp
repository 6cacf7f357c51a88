#include "sgf/coloring.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace sgf {

int EdgeColoring::class_of(int edge_id) const
{
    if (r.count(edge_id))
        return 0;
    if (b.count(edge_id))
        return 1;
    if (y.count(edge_id))
        return 2;
    return -1;
}

bool EdgeColoring::contains(int edge_id) const { return class_of(edge_id) >= 0; }

std::optional<EdgeColoring> three_edge_color(const SignedGraph& g)
{
    for (const Edge& e : g.edges())
        if (e.is_loop())
            throw std::invalid_argument("loops admit no proper edge coloring");
    for (int v : g.vertices())
        if (g.degree(v) != 3)
            throw std::invalid_argument("graph is not cubic");

    std::size_t m = g.edge_count();
    std::vector<int> color(m, -1); // by position in edges()
    std::map<int, int> pos;
    for (std::size_t i = 0; i < m; ++i)
        pos[g.edges()[i].id] = static_cast<int>(i);

    // adjacency between edge positions (shared endpoint)
    std::vector<std::vector<int>> adj(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Edge& e = g.edges()[i];
        for (int w : {e.u, e.v}) {
            for (const HalfEdge& h : g.half_edges_at(w)) {
                int j = pos[h.edge_id];
                if (j != static_cast<int>(i))
                    adj[i].push_back(j);
            }
            if (e.is_loop())
                break;
        }
    }
    for (auto& lst : adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }

    auto candidates = [&](int i) {
        std::array<bool, 3> ok = {true, true, true};
        for (int j : adj[i])
            if (color[j] >= 0)
                ok[color[j]] = false;
        return ok;
    };

    std::function<bool()> solve = [&]() {
        int best = -1, best_count = 4;
        for (std::size_t i = 0; i < m; ++i) {
            if (color[i] >= 0)
                continue;
            auto ok = candidates(static_cast<int>(i));
            int cnt = ok[0] + ok[1] + ok[2];
            if (cnt == 0)
                return false;
            if (cnt < best_count) {
                best_count = cnt;
                best = static_cast<int>(i);
            }
        }
        if (best < 0)
            return true;
        auto ok = candidates(best);
        for (int c = 0; c < 3; ++c) {
            if (!ok[c])
                continue;
            color[best] = c;
            if (solve())
                return true;
            color[best] = -1;
        }
        return false;
    };

    if (m > 0) {
        // symmetry break: the three edges at the first vertex get R, B, Y
        int v0 = g.vertices().front();
        int c = 0;
        for (const HalfEdge& h : g.half_edges_at(v0))
            color[pos[h.edge_id]] = c++;
    }
    if (!solve())
        return std::nullopt;

    EdgeColoring col;
    for (std::size_t i = 0; i < m; ++i) {
        int id = g.edges()[i].id;
        if (color[i] == 0)
            col.r.insert(id);
        else if (color[i] == 1)
            col.b.insert(id);
        else
            col.y.insert(id);
    }
    return col;
}

EdgeColoring order_classes(const EdgeColoring& col, const SignedGraph& g)
{
    std::array<int, 3> parity = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int id : col.klass(i))
            if (g.edge(id).sign < 0)
                parity[i] ^= 1;

    std::array<int, 3> perm = {0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p = {0, 1, 2};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(perms.begin(), perms.end());
    for (const auto& q : perms) {
        if (parity[q[0]] == parity[q[1]]) {
            perm = q;
            break;
        }
    }
    EdgeColoring out;
    out.r = col.klass(perm[0]);
    out.b = col.klass(perm[1]);
    out.y = col.klass(perm[2]);
    return out;
}

std::vector<Circuit> two_factor(const SignedGraph& g, const EdgeSet& class1,
                                const EdgeSet& class2)
{
    EdgeSet both = class1;
    both.insert(class2.begin(), class2.end());

    std::vector<Circuit> out;
    for (const EdgeSet& comp : edge_components(g, both)) {
        std::vector<WalkStep> walk = eulerian_circuit(g, comp);
        Circuit c;
        for (const WalkStep& st : walk) {
            c.edge_ids.push_back(st.edge_id);
            c.vertex_seq.push_back(st.tail);
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool coloring_is_proper(const SignedGraph& g, const EdgeColoring& col)
{
    for (const Edge& e : g.edges())
        if (!col.contains(e.id))
            return false;
    for (int v : g.vertices()) {
        std::array<int, 3> seen = {0, 0, 0};
        for (const HalfEdge& h : g.half_edges_at(v)) {
            int c = col.class_of(h.edge_id);
            if (c < 0)
                return false;
            seen[c]++;
        }
        if (seen[0] > 1 || seen[1] > 1 || seen[2] > 1)
            return false;
    }
    return true;
}

} // namespace sgf
