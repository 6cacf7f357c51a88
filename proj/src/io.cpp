#include "sgf/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sgf {

namespace {

// strips comments and whitespace-only lines, tracking line numbers
bool next_line(std::istream& in, std::string& line, int& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c)))
                blank = false;
        if (!blank)
            return true;
    }
    return false;
}

} // namespace

SignedGraph parse_graph(std::istream& in)
{
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno))
        throw ParseError(lineno, "missing `sg <n> <m>` header");
    std::istringstream hs(line);
    std::string tag;
    long n = 0, m = 0;
    if (!(hs >> tag >> n >> m) || tag != "sg" || n < 0 || m < 0)
        throw ParseError(lineno, "malformed header, expected `sg <n> <m>`");

    std::vector<std::tuple<int, int, int>> triples;
    for (long i = 0; i < m; ++i) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno, "expected " + std::to_string(m) + " edge lines");
        std::istringstream es(line);
        std::string sign;
        long u = 0, v = 0;
        if (!(es >> tag >> u >> v >> sign) || tag != "e")
            throw ParseError(lineno, "malformed edge, expected `e <u> <v> <+|->`");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex id out of range");
        if (sign != "+" && sign != "-")
            throw ParseError(lineno, "sign must be + or -");
        triples.push_back({static_cast<int>(u), static_cast<int>(v), sign == "+" ? 1 : -1});
    }
    if (next_line(in, line, lineno))
        throw ParseError(lineno, "trailing content after the edge list");

    std::vector<int> verts;
    for (long v = 0; v < n; ++v)
        verts.push_back(static_cast<int>(v));
    std::vector<Edge> edges;
    int id = 0;
    for (const auto& [u, v, s] : triples)
        edges.push_back(Edge{id++, u, v, s});
    return SignedGraph(std::move(verts), std::move(edges));
}

void emit_graph(std::ostream& out, const SignedGraph& g)
{
    int n = g.vertices().empty() ? 0 : g.vertices().back() + 1;
    out << "sg " << n << " " << g.edge_count() << "\n";
    for (const Edge& e : g.edges())
        out << "e " << e.u << " " << e.v << " " << (e.sign > 0 ? "+" : "-") << "\n";
}

IntFlow parse_flow(std::istream& in, const SignedGraph& g)
{
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno))
        throw ParseError(lineno, "missing `flow <k>` header");
    std::istringstream hs(line);
    std::string tag;
    int k = 0;
    if (!(hs >> tag >> k) || tag != "flow" || k < 2)
        throw ParseError(lineno, "malformed header, expected `flow <k>`");

    IntFlow f;
    f.tau = default_orientation(g);
    f.bound_k = k;
    std::set<int> seen;
    while (next_line(in, line, lineno)) {
        std::istringstream es(line);
        long idx = 0, val = 0;
        if (!(es >> tag >> idx >> val) || tag != "f")
            throw ParseError(lineno, "malformed value, expected `f <edge-index> <value>`");
        if (!g.has_edge(static_cast<int>(idx)))
            throw ParseError(lineno, "unknown edge index");
        if (!seen.insert(static_cast<int>(idx)).second)
            throw ParseError(lineno, "duplicate edge index");
        if (val != 0)
            f.values[static_cast<int>(idx)] = static_cast<int>(val);
    }
    if (seen.size() != g.edge_count())
        throw ParseError(lineno, "flow file must value every edge");
    return f;
}

void emit_flow(std::ostream& out, const IntFlow& f, const SignedGraph& g)
{
    out << "flow " << f.bound_k << "\n";
    for (const Edge& e : g.edges())
        out << "f " << e.id << " " << f.value(e.id) << "\n";
}

void emit_dot(std::ostream& out, const SignedGraph& g)
{
    out << "graph sg {\n";
    for (int v : g.vertices())
        out << "  " << v << ";\n";
    for (const Edge& e : g.edges()) {
        out << "  " << e.u << " -- " << e.v;
        if (e.sign < 0)
            out << " [style=dashed]";
        out << ";\n";
    }
    out << "}\n";
}

SignedGraph make_family(const std::string& name, int n)
{
    std::vector<std::tuple<int, int, int>> t;
    auto circuit = [&](int len, bool negative) {
        for (int i = 0; i < len; ++i)
            t.push_back({i, (i + 1) % len, negative && i == 0 ? -1 : 1});
    };
    if (name == "circuit") {
        if (n < 1)
            throw std::invalid_argument("circuit needs n >= 1");
        if (n == 1)
            t.push_back({0, 0, 1});
        else
            circuit(n, false);
    } else if (name == "circuit-neg") {
        if (n < 1)
            throw std::invalid_argument("circuit needs n >= 1");
        if (n == 1)
            t.push_back({0, 0, -1});
        else
            circuit(n, true);
    } else if (name == "digon") {
        t.push_back({0, 1, 1});
        t.push_back({0, 1, -1});
    } else if (name == "short-barbell") {
        t.push_back({0, 0, -1});
        t.push_back({0, 0, -1});
    } else if (name == "long-barbell") {
        if (n < 1)
            throw std::invalid_argument("long-barbell needs a path length n >= 1");
        t.push_back({0, 0, -1});
        for (int i = 0; i < n; ++i)
            t.push_back({i, i + 1, 1});
        t.push_back({n, n, -1});
    } else if (name == "k4") {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                t.push_back({i, j, 1});
    } else if (name == "k33") {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                t.push_back({i, 3 + j, 1});
    } else if (name == "prism") {
        for (int i = 0; i < 3; ++i) {
            t.push_back({i, (i + 1) % 3, 1});
            t.push_back({3 + i, 3 + (i + 1) % 3, 1});
            t.push_back({i, 3 + i, 1});
        }
    } else if (name == "cube") {
        for (int i = 0; i < 4; ++i) {
            t.push_back({i, (i + 1) % 4, 1});
            t.push_back({4 + i, 4 + (i + 1) % 4, 1});
            t.push_back({i, 4 + i, 1});
        }
    } else if (name == "petersen") {
        for (int i = 0; i < 5; ++i) {
            t.push_back({i, (i + 1) % 5, 1});
            t.push_back({5 + i, 5 + (i + 2) % 5, 1});
            t.push_back({i, 5 + i, 1});
        }
    } else if (name == "wheel") {
        if (n < 3)
            throw std::invalid_argument("wheel needs a rim of n >= 3");
        for (int i = 0; i < n; ++i) {
            t.push_back({1 + i, 1 + (i + 1) % n, 1});
            t.push_back({0, 1 + i, 1});
        }
    } else if (name == "blowup") {
        // hub of degree n: two negative hub loops plus spokes to a rim
        if (n < 6)
            throw std::invalid_argument("blowup fixture needs hub degree n >= 6");
        int spokes = n - 4;
        t.push_back({0, 0, -1});
        t.push_back({0, 0, -1});
        for (int i = 0; i < spokes; ++i) {
            t.push_back({1 + i, 1 + (i + 1) % spokes, 1});
            t.push_back({0, 1 + i, 1});
        }
    } else {
        throw std::invalid_argument("unknown family: " + name);
    }
    return build_graph(t);
}

} // namespace sgf
