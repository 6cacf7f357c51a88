#include "sgf/cli.hpp"

#include "sgf/analysis.hpp"
#include "sgf/coloring.hpp"
#include "sgf/core.hpp"
#include "sgf/io.hpp"
#include "sgf/oracle.hpp"
#include "sgf/theorems.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace sgf::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kPrecondition = 2;
constexpr int kParse = 3;

struct Options {
    std::vector<std::string> positional;
    bool machine = false;
    std::optional<std::string> family;
    std::optional<int> n;
    std::optional<int> kmax;
    std::string mode = "cubic"; // for `flow`
    std::vector<int> hamilton;
};

SignedGraph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    return parse_graph(in);
}

std::vector<int> parse_vertex_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(item));
    return out;
}

int cmd_check(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    BalanceWitness bw = is_balanced(g);
    AdmissibilityReport adm = is_flow_admissible(g);
    std::vector<int> bridges = find_bridges(g);
    if (opt.machine) {
        out << "balanced " << (bw.balanced ? 1 : 0) << "\n";
        out << "admissible " << (adm.admissible ? 1 : 0) << "\n";
        if (!adm.admissible) {
            out << "reason "
                << (adm.reason == InadmissibleReason::OneNegativeEdgeEquivalent
                        ? "one-negative-edge-equivalent"
                        : "bridge-with-balanced-component")
                << "\n";
            if (adm.witness_edge)
                out << "witness-edge " << *adm.witness_edge << "\n";
        }
        out << "bridges";
        for (int b : bridges)
            out << " " << b;
        out << "\n";
    } else {
        out << (bw.balanced ? "balanced" : "unbalanced") << "\n";
        if (adm.admissible) {
            out << "flow-admissible\n";
        } else {
            out << "not flow-admissible: " << adm.detail << "\n";
        }
        out << bridges.size() << " bridge(s)";
        for (int b : bridges)
            out << " " << b;
        out << "\n";
    }
    return adm.admissible ? kOk : kNegative;
}

int cmd_color(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    auto col = three_edge_color(g);
    if (!col) {
        out << (opt.machine ? "colorable 0\n" : "not 3-edge-colorable\n");
        return kNegative;
    }
    EdgeColoring ordered = order_classes(*col, g);
    if (opt.machine)
        out << "colorable 1\n";
    const char* names[3] = {"R", "B", "Y"};
    for (int i = 0; i < 3; ++i) {
        out << names[i];
        for (int id : ordered.klass(i))
            out << " " << id;
        out << "\n";
    }
    return kOk;
}

int cmd_flow(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    FlowResult res;
    if (opt.mode == "cubic") {
        res = cubic_flow(g);
    } else if (opt.mode == "planar") {
        res = planar_flow(g);
    } else if (opt.mode == "hamiltonian") {
        res = hamiltonian_flow(g, opt.hamilton);
    } else {
        throw std::invalid_argument("unknown flow mode");
    }
    if (opt.machine) {
        out << "k " << res.k << "\n";
        out << "exceptional " << (res.exceptional ? 1 : 0) << "\n";
        std::string trace;
        for (const auto& t : res.trace)
            trace += (trace.empty() ? "" : " / ") + t;
        out << "trace " << trace << "\n";
        for (const Edge& e : g.edges())
            out << "f " << e.id << " " << res.flow.value(e.id) << "\n";
    } else {
        out << "# trace:";
        for (const auto& t : res.trace)
            out << " " << t;
        out << "\n";
        emit_flow(out, res.flow, g);
    }
    return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    std::ifstream in(opt.positional[1]);
    if (!in)
        throw std::invalid_argument("cannot open " + opt.positional[1]);
    IntFlow f = parse_flow(in, g);
    VerifyReport rep = verify_flow(g, f, true);
    if (opt.machine) {
        out << "valid " << (rep.ok() ? 1 : 0) << "\n";
    } else if (rep.ok()) {
        out << "valid nowhere-zero " << f.bound_k << "-flow\n";
    } else {
        out << rep.to_string();
    }
    return rep.ok() ? kOk : kNegative;
}

int cmd_oracle(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    int kmax = opt.kmax.value_or(11);
    OracleReport rep = min_flow_number(g, kmax);
    if (opt.machine) {
        out << "min-k " << (rep.min_k ? std::to_string(*rep.min_k) : "none") << "\n";
        for (const auto& [k, ok] : rep.feasible)
            out << "feasible " << k << " " << (ok ? 1 : 0) << "\n";
        out << "nodes " << rep.nodes << "\n";
    } else {
        if (rep.min_k)
            out << "minimum nowhere-zero flow number: " << *rep.min_k << "\n";
        else
            out << "no nowhere-zero k-flow for k <= " << kmax << "\n";
        for (const auto& [k, ok] : rep.feasible)
            out << "  k=" << k << ": " << (ok ? "yes" : "no") << "\n";
        out << "  search nodes: " << rep.nodes << "\n";
    }
    return rep.min_k ? kOk : kNegative;
}

int cmd_gen(const Options& opt, std::ostream& out)
{
    if (!opt.family)
        throw std::invalid_argument("gen requires --family");
    SignedGraph g = make_family(*opt.family, opt.n.value_or(0));
    emit_graph(out, g);
    return kOk;
}

int cmd_export_dot(const Options& opt, std::ostream& out)
{
    SignedGraph g = load_graph(opt.positional[0]);
    emit_dot(out, g);
    return kOk;
}

void usage(std::ostream& err)
{
    err << "usage: sgflow <command> [options]\n"
        << "  check <graph>                 balance, admissibility, bridges\n"
        << "  color <graph>                 proper 3-edge-coloring of a cubic graph\n"
        << "  flow <graph> [--cubic|--planar|--hamiltonian v0,v1,...]\n"
        << "  verify <graph> <flow>         check a flow file\n"
        << "  oracle <graph> [--kmax K]     exhaustive flow-number search\n"
        << "  gen --family <name> --n N     emit a built-in family\n"
        << "  export-dot <graph>            DOT output, negative edges dashed\n"
        << "global: --machine               line-oriented key/value output\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (args.empty()) {
        usage(err);
        return kPrecondition;
    }
    std::string cmd = args[0];
    Options opt;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= args.size())
                throw std::invalid_argument(a + " needs a value");
            return args[++i];
        };
        try {
            if (a == "--machine")
                opt.machine = true;
            else if (a == "--family")
                opt.family = next();
            else if (a == "--n")
                opt.n = std::stoi(next());
            else if (a == "--kmax")
                opt.kmax = std::stoi(next());
            else if (a == "--cubic")
                opt.mode = "cubic";
            else if (a == "--planar")
                opt.mode = "planar";
            else if (a == "--hamiltonian") {
                opt.mode = "hamiltonian";
                opt.hamilton = parse_vertex_list(next());
            } else if (a.rfind("--", 0) == 0) {
                err << "unknown option " << a << "\n";
                return kPrecondition;
            } else {
                opt.positional.push_back(a);
            }
        } catch (const std::exception& ex) {
            err << "error: " << ex.what() << "\n";
            return kPrecondition;
        }
    }

    try {
        if (cmd == "check" && opt.positional.size() == 1)
            return cmd_check(opt, out);
        if (cmd == "color" && opt.positional.size() == 1)
            return cmd_color(opt, out);
        if (cmd == "flow" && opt.positional.size() == 1)
            return cmd_flow(opt, out);
        if (cmd == "verify" && opt.positional.size() == 2)
            return cmd_verify(opt, out);
        if (cmd == "oracle" && opt.positional.size() == 1)
            return cmd_oracle(opt, out);
        if (cmd == "gen")
            return cmd_gen(opt, out);
        if (cmd == "export-dot" && opt.positional.size() == 1)
            return cmd_export_dot(opt, out);
        usage(err);
        return kPrecondition;
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << "\n";
        return kPrecondition;
    }
}

} // namespace sgf::cli
