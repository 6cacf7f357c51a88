#include "sgf/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>

namespace sgf {

std::optional<std::map<int, int>> constrained_flow_search(
    const SignedGraph& g, const Orientation& tau,
    const std::map<int, std::vector<int>>& candidates, SearchStats* stats,
    bool negate_symmetry)
{
    // vertex bookkeeping: partial boundary and number of unassigned half edges
    std::vector<int> vlist = g.vertices();
    std::map<int, int> vidx;
    for (std::size_t i = 0; i < vlist.size(); ++i)
        vidx[vlist[i]] = static_cast<int>(i);

    struct EdgeInfo {
        int id;
        int vu, vv; // vertex indices
        int tu, tv; // tau at the two ends
        const std::vector<int>* cand;
        int maxabs;
    };
    std::vector<EdgeInfo> einfo;
    std::vector<int> partial(vlist.size(), 0);
    std::vector<int> pending(vlist.size(), 0); // unassigned half edges
    std::vector<int> maxslack(vlist.size(), 0);

    for (const Edge& e : g.edges()) {
        auto it = candidates.find(e.id);
        if (it == candidates.end())
            continue; // fixed at zero
        EdgeInfo info;
        info.id = e.id;
        info.vu = vidx.at(e.u);
        info.vv = vidx.at(e.v);
        info.tu = tau.at(e.id, 0);
        info.tv = tau.at(e.id, 1);
        info.cand = &it->second;
        info.maxabs = 0;
        for (int v : it->second)
            info.maxabs = std::max(info.maxabs, std::abs(v));
        einfo.push_back(info);
        pending[info.vu] += 1;
        pending[info.vv] += 1;
        if (info.vu == info.vv) {
            // a positive loop contributes nothing; a negative loop +-2 value
            maxslack[info.vu] += (e.sign < 0 ? 2 * info.maxabs : 0);
        } else {
            maxslack[info.vu] += info.maxabs;
            maxslack[info.vv] += info.maxabs;
        }
    }

    std::size_t m = einfo.size();
    std::vector<int> assigned(m, 0);
    std::vector<bool> done(m, false);
    std::map<int, int> solution;
    std::uint64_t nodes = 0;

    auto feasible_vertex = [&](int vi) {
        if (pending[vi] == 0)
            return partial[vi] == 0;
        return std::abs(partial[vi]) <= maxslack[vi];
    };

    std::function<bool(std::size_t)> go = [&](std::size_t depth) -> bool {
        if (depth == m)
            return true;
        // most saturated: fewest pending half edges among touched vertices
        std::size_t best = m;
        int best_score = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < m; ++i) {
            if (done[i])
                continue;
            int score = std::min(pending[einfo[i].vu], pending[einfo[i].vv]) * 1000
                      + static_cast<int>(i);
            if (score < best_score) {
                best_score = score;
                best = i;
            }
        }
        const EdgeInfo& e = einfo[best];
        done[best] = true;
        pending[e.vu] -= 1;
        pending[e.vv] -= 1;
        bool loop = e.vu == e.vv;
        int loop_contrib = e.tu + e.tv; // 0 for positive loops, +-2 for negative
        for (int val : *e.cand) {
            ++nodes;
            if (negate_symmetry && depth == 0 && val < 0)
                continue;
            int du = 0, dv = 0;
            if (loop) {
                du = loop_contrib * val;
                partial[e.vu] += du;
                maxslack[e.vu] -= std::abs(loop_contrib) * e.maxabs;
            } else {
                du = e.tu * val;
                dv = e.tv * val;
                partial[e.vu] += du;
                partial[e.vv] += dv;
                maxslack[e.vu] -= e.maxabs;
                maxslack[e.vv] -= e.maxabs;
            }
            bool ok = feasible_vertex(e.vu) && feasible_vertex(e.vv);
            if (ok) {
                assigned[best] = val;
                solution[e.id] = val;
                if (go(depth + 1))
                    return true;
                solution.erase(e.id);
            }
            if (loop) {
                partial[e.vu] -= du;
                maxslack[e.vu] += std::abs(loop_contrib) * e.maxabs;
            } else {
                partial[e.vu] -= du;
                partial[e.vv] -= dv;
                maxslack[e.vu] += e.maxabs;
                maxslack[e.vv] += e.maxabs;
            }
        }
        done[best] = false;
        pending[e.vu] += 1;
        pending[e.vv] += 1;
        return false;
    };

    bool found = go(0);
    if (stats)
        stats->nodes += nodes;
    if (!found)
        return std::nullopt;
    for (auto it = solution.begin(); it != solution.end();)
        it = it->second == 0 ? solution.erase(it) : std::next(it);
    return solution;
}

std::optional<IntFlow> exists_k_flow(const SignedGraph& g, int k, SearchStats* stats)
{
    if (k < 2)
        throw std::invalid_argument("k must be at least 2");
    std::map<int, std::vector<int>> candidates;
    std::vector<int> domain;
    for (int a = 1; a <= k - 1; ++a) {
        domain.push_back(a);
        domain.push_back(-a);
    }
    for (const Edge& e : g.edges())
        candidates[e.id] = domain;
    auto sol = constrained_flow_search(g, default_orientation(g), candidates, stats,
                                       /*negate_symmetry=*/true);
    if (!sol)
        return std::nullopt;
    IntFlow f;
    f.tau = default_orientation(g);
    f.values = std::move(*sol);
    f.bound_k = k;
    VerifyReport rep = verify_flow(g, f, true);
    if (!rep.ok())
        throw std::logic_error("oracle produced an invalid witness: " + rep.to_string());
    return f;
}

OracleReport min_flow_number(const SignedGraph& g, int kmax)
{
    if (kmax < 2)
        throw std::invalid_argument("kmax must be at least 2");
    OracleReport rep;
    SearchStats stats;
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 2; k <= kmax; ++k) {
        auto w = exists_k_flow(g, k, &stats);
        if (w) {
            rep.min_k = k;
            rep.witness = w;
            rep.feasible[k] = true;
            // monotone: larger bounds admit the same flow
            for (int j = k + 1; j <= kmax; ++j)
                rep.feasible[j] = true;
            break;
        }
        rep.feasible[k] = false;
    }
    rep.nodes = stats.nodes;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SignedGraph with_signature(const SignedGraph& base, const EdgeSet& negatives)
{
    std::vector<Edge> edges = base.edges();
    for (Edge& e : edges)
        e.sign = negatives.count(e.id) ? -1 : 1;
    return SignedGraph(base.vertices(), std::move(edges));
}

std::vector<EdgeSet> enumerate_signatures(const SignedGraph& base)
{
    std::vector<int> ids;
    for (const Edge& e : base.edges())
        ids.push_back(e.id);
    std::size_t m = ids.size();
    if (m > 20)
        throw std::invalid_argument("base graph too large for signature enumeration");

    const std::vector<int>& verts = base.vertices();
    std::size_t n = verts.size();
    std::map<int, int> vidx;
    for (std::size_t i = 0; i < n; ++i)
        vidx[verts[i]] = static_cast<int>(i);

    // per-edge cut membership masks: switching U flips e iff |U cap {u,v}| = 1;
    // the first vertex stays outside U (U and its complement switch alike)
    auto in_u = [&](std::size_t u, int v) {
        int i = vidx.at(v);
        return i > 0 && ((u >> (i - 1)) & 1u);
    };
    std::vector<std::uint32_t> flips;
    std::size_t subsets = n == 0 ? 1 : (1u << (n - 1));
    for (std::size_t u = 1; u < subsets; ++u) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Edge& e = base.edge(ids[i]);
            if (in_u(u, e.u) != in_u(u, e.v))
                mask |= (1u << i);
        }
        flips.push_back(mask);
    }

    auto to_set = [&](std::uint32_t sig) {
        EdgeSet neg;
        for (std::size_t i = 0; i < m; ++i)
            if ((sig >> i) & 1u)
                neg.insert(ids[i]);
        return neg;
    };

    std::vector<EdgeSet> reps;
    for (std::uint32_t sig = 0; sig < (1u << m); ++sig) {
        EdgeSet mine = to_set(sig);
        bool minimal = true;
        for (std::uint32_t f : flips)
            if (to_set(sig ^ f) < mine) {
                minimal = false;
                break;
            }
        if (minimal)
            reps.push_back(std::move(mine));
    }
    return reps;
}

} // namespace sgf
