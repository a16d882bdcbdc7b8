#include "kc/cli.hpp"

#include "kc/compiler.hpp"
#include "kc/convert.hpp"
#include "kc/counting.hpp"
#include "kc/generators.hpp"
#include "kc/io.hpp"
#include "kc/lineage.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace kc {

namespace {

enum class FileKind { Nnf, FbddText, Dnf, Cnf };

FileKind detect_kind(const std::string& path, const std::string& content) {
    auto ends_with = [&](const char* suffix) {
        std::string s(suffix);
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".nnf")) return FileKind::Nnf;
    if (ends_with(".fbdd")) return FileKind::FbddText;
    if (ends_with(".dnf")) return FileKind::Dnf;
    if (ends_with(".cnf")) return FileKind::Cnf;
    // sniff the first meaningful token
    std::istringstream is(content);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "nnf") return FileKind::Nnf;
        if (tok == "D" || tok == "S") return FileKind::FbddText;
        if (tok == "p") {
            std::string kind;
            ls >> kind;
            return kind == "dnf" ? FileKind::Dnf : FileKind::Cnf;
        }
        break;
    }
    throw Error("cannot determine the format of '" + path + "'");
}

// Extend the universe to 1..n (used by `count --universe`).
CircuitDag with_universe(CircuitDag dag, std::uint32_t n) {
    for (const Node& node : dag.nodes)
        if (node.kind == NodeKind::Decision && node.var > n)
            throw Error("universe of " + std::to_string(n) +
                        " is smaller than tested variable " + std::to_string(node.var));
    dag.universe = dense_universe(n);
    return dag;
}

struct LoadedCircuit {
    CircuitDag dag;
    bool is_fbdd = false;
};

LoadedCircuit load_circuit(const std::string& path) {
    std::string content = read_file(path);
    switch (detect_kind(path, content)) {
    case FileKind::Nnf: return {parse_nnf(content), false};
    case FileKind::FbddText: return {parse_fbdd(content), true};
    case FileKind::Dnf: return {compile(parse_dnf_file(content)), false};
    case FileKind::Cnf: return {compile(parse_cnf_file(content)), false};
    }
    throw Error("unreachable");
}

nlohmann::ordered_json report_json(const ConvertReport& r) {
    nlohmann::ordered_json j;
    j["N"] = r.input_nodes;
    j["M"] = r.and_count;
    j["L"] = r.light_depth;
    j["out_nodes_with_noops"] = r.out_nodes_with_noops;
    j["out_nodes_final"] = r.out_nodes_final;
    j["bound"] = r.product_bound.get_str();
    j["quasipoly_bound"] = r.quasipoly_bound.get_str();
    return j;
}

void print_report(std::ostream& out, const ConvertReport& r) {
    out << "N=" << r.input_nodes << " M=" << r.and_count << " L=" << r.light_depth
        << " out(noops)=" << r.out_nodes_with_noops << " out(final)=" << r.out_nodes_final
        << " bound=" << r.product_bound.get_str() << "\n";
}

int cmd_validate(const std::string& file, std::ostream& out) {
    LoadedCircuit lc = load_circuit(file);
    ValidationReport rep = validate(lc.dag);
    out << (rep.ok ? "ok" : rep.to_string());
    if (rep.ok) out << ": " << flavor_name(lc.dag.flavor) << ", " << lc.dag.node_count()
                    << " nodes, " << lc.dag.universe.size() << " variables\n";
    return rep.ok ? 0 : 1;
}

int cmd_convert(const std::string& in, const std::string& out_path,
                const std::string& report_path, std::ostream& out) {
    CircuitDag dag = parse_nnf(read_file(in));
    ConvertResult res = convert(dag);
    ValidationReport rep = validate(res.fbdd);
    if (!rep.ok) throw InternalError("converted FBDD fails validation:\n" + rep.to_string());
    if (!out_path.empty()) write_file(out_path, write_fbdd(res.fbdd));
    if (!report_path.empty()) write_file(report_path, report_json(res.report).dump(2) + "\n");
    print_report(out, res.report);
    return 0;
}

int cmd_count(const std::string& file, std::uint32_t universe, std::ostream& out) {
    LoadedCircuit lc = load_circuit(file);
    if (universe > 0) lc.dag = with_universe(std::move(lc.dag), universe);
    ValidationReport rep = validate(lc.dag);
    if (!rep.ok) {
        out << rep.to_string();
        return 1;
    }
    ModelCount mc = lc.is_fbdd ? count_fbdd(lc.dag) : count_dnnf(lc.dag);
    out << mc.count.get_str() << " / 2^" << mc.universe_size << "\n";
    return 0;
}

int cmd_prob(const std::string& file, const std::string& weights_path, std::ostream& out,
             std::ostream& err) {
    LoadedCircuit lc = load_circuit(file);
    ValidationReport rep = validate(lc.dag);
    if (!rep.ok) {
        out << rep.to_string();
        return 1;
    }
    WeightsExact w = parse_weights_csv(read_file(weights_path), lc.dag.universe, err);
    BigRat p = lc.is_fbdd ? prob_fbdd(lc.dag, w) : prob_dnnf(lc.dag, w);
    out << rat_to_string(p) << " (" << rat_to_double(p) << ")\n";
    return 0;
}

int cmd_gen(const std::string& family, std::uint32_t param, const std::string& out_path,
            std::ostream& out) {
    std::string payload;
    if (family == "psi") {
        payload = write_dnf_file(gen_psi(param));
    } else if (family == "psi-dual") {
        payload = write_cnf_file(gen_psi_dual(param));
    } else if (family == "phi") {
        payload = write_dnf_file(gen_phi(param));
    } else if (family == "triangle") {
        payload = write_dnf_file(gen_triangle(param));
    } else if (family == "tight") {
        payload = write_nnf(gen_tight_example(param));
    } else {
        throw CLI::ValidationError("unknown family '" + family + "'");
    }
    write_file(out_path, payload);
    out << "wrote " << out_path << "\n";
    return 0;
}

int cmd_compile(const std::string& in, const std::string& out_path, const std::string& heuristic,
                std::ostream& out) {
    std::string content = read_file(in);
    CompileOptions opts;
    if (heuristic == "freq")
        opts.heuristic = Heuristic::MostFrequentVar;
    else if (heuristic != "fixed")
        throw CLI::ValidationError("--heuristic must be fixed or freq");
    FileKind kind = detect_kind(in, content);
    CircuitDag dag;
    if (kind == FileKind::Dnf)
        dag = compile(parse_dnf_file(content), opts);
    else if (kind == FileKind::Cnf)
        dag = compile(parse_cnf_file(content), opts);
    else
        throw Error("compile expects a .dnf or .cnf file");
    ValidationReport rep = validate(dag);
    if (!rep.ok) throw InternalError("compiled DAG fails validation:\n" + rep.to_string());
    write_file(out_path, write_nnf(dag));
    out << "compiled " << in << ": " << dag.node_count() << " nodes\n";
    return 0;
}

int cmd_lineage(const std::string& query_path, const std::string& db_path,
                const std::string& out_path, std::ostream& out) {
    UcqQuery q = parse_query(read_file(query_path));
    DatabaseInstance db = parse_database(read_file(db_path));
    Grounding g = ground(q, db);
    if (!out_path.empty()) write_file(out_path, write_dnf_file(g.lineage));
    out << "lineage: " << g.lineage.terms.size() << " terms over "
        << g.lineage.universe.size() << " variables\n";
    return 0;
}

int cmd_hierarchical(const std::string& query_path, std::ostream& out) {
    UcqQuery q = parse_query(read_file(query_path));
    HierarchicalResult h = hierarchical(q);
    if (h.hierarchical)
        out << "hierarchical\n";
    else
        out << "non-hierarchical: (" << h.witness->x << "," << h.witness->y << ")\n";
    return 0;
}

int cmd_bench(const std::string& family, const std::string& range, const std::string& out_path,
              std::ostream& out) {
    auto dots = range.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--range must look like a..b");
    std::uint32_t from = static_cast<std::uint32_t>(std::stoul(range.substr(0, dots)));
    std::uint32_t to = static_cast<std::uint32_t>(std::stoul(range.substr(dots + 2)));
    if (from < 1 || to < from) throw CLI::ValidationError("bad --range");

    std::ostringstream csv;
    csv << "family,param,N,M,L,out_nodes,bound\n";
    for (std::uint32_t p = from; p <= to; ++p) {
        CircuitDag dnnf;
        if (family == "phi")
            dnnf = compile(gen_phi(p));
        else if (family == "tight")
            dnnf = gen_tight_example(p);
        else
            throw CLI::ValidationError("--family must be phi or tight");
        ConvertResult res = convert(dnnf);
        csv << family << "," << p << "," << res.report.input_nodes << ","
            << res.report.and_count << "," << res.report.light_depth << ","
            << res.report.out_nodes_final << "," << res.report.product_bound.get_str() << "\n";
    }
    write_file(out_path, csv.str());
    out << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"knowledge compilation toolkit: decision-DNNFs, FBDDs, model counting"};
    app.require_subcommand(1);

    std::string file, out_path, report_path, weights_path, heuristic = "fixed";
    std::string family, range, query_path, db_path;
    std::uint32_t param = 0, universe = 0;

    auto* validate_cmd = app.add_subcommand("validate", "validate a circuit or formula file");
    validate_cmd->add_option("file", file)->required();

    auto* convert_cmd = app.add_subcommand("convert", "convert a decision-DNNF to an FBDD");
    convert_cmd->add_option("input", file)->required();
    convert_cmd->add_option("-o,--output", out_path, "output .fbdd file");
    convert_cmd->add_option("--report", report_path, "write a JSON conversion report");

    auto* count_cmd = app.add_subcommand("count", "exact model count");
    count_cmd->add_option("file", file)->required();
    count_cmd->add_option("--universe", universe, "count over the universe 1..N");

    auto* prob_cmd = app.add_subcommand("prob", "weighted probability");
    prob_cmd->add_option("file", file)->required();
    prob_cmd->add_option("--weights", weights_path, "CSV of var,probability")->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a formula family instance");
    gen_cmd->add_option("family", family, "psi | psi-dual | phi | triangle | tight")->required();
    gen_cmd->add_option("param", param)->required();
    gen_cmd->add_option("-o,--output", out_path)->required();

    auto* compile_cmd = app.add_subcommand("compile", "compile a DNF/CNF to a decision-DNNF");
    compile_cmd->add_option("input", file)->required();
    compile_cmd->add_option("-o,--output", out_path)->required();
    compile_cmd->add_option("--heuristic", heuristic, "fixed | freq");

    auto* lineage_cmd = app.add_subcommand("lineage", "ground a query over a database");
    lineage_cmd->add_option("query", query_path)->required();
    lineage_cmd->add_option("db", db_path)->required();
    lineage_cmd->add_option("-o,--output", out_path, "output .dnf file");

    auto* hier_cmd = app.add_subcommand("hierarchical", "test whether a query is hierarchical");
    hier_cmd->add_option("query", query_path)->required();

    auto* bench_cmd = app.add_subcommand("bench", "convert a family across a parameter range");
    bench_cmd->add_option("--family", family)->required();
    bench_cmd->add_option("--range", range, "a..b")->required();
    bench_cmd->add_option("-o,--output", out_path)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(file, out);
        if (*convert_cmd) return cmd_convert(file, out_path, report_path, out);
        if (*count_cmd) return cmd_count(file, universe, out);
        if (*prob_cmd) return cmd_prob(file, weights_path, out, err);
        if (*gen_cmd) return cmd_gen(family, param, out_path, out);
        if (*compile_cmd) return cmd_compile(file, out_path, heuristic, out);
        if (*lineage_cmd) return cmd_lineage(query_path, db_path, out_path, out);
        if (*hier_cmd) return cmd_hierarchical(query_path, out);
        if (*bench_cmd) return cmd_bench(family, range, out_path, out);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace kc
