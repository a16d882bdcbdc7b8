#include "kc/io.hpp"

#include "kc/numeric.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace kc {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

long parse_long(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    }
}

// --- NNF ------------------------------------------------------------------

struct NnfRecord {
    enum Kind { Lit, AndK, OrK } kind;
    Literal lit = 0;                  // Lit
    Var decision_var = 0;             // OrK hint
    std::vector<std::size_t> children; // AndK / OrK, indices of earlier records
    std::size_t line_no = 0;
};

} // namespace

CircuitDag parse_nnf(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<NnfRecord> recs;
    std::size_t declared_nodes = 0, declared_vars = 0;
    bool saw_header = false;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "nnf") {
            if (saw_header) throw ParseError(line_no, "duplicate nnf header");
            if (toks.size() != 4) throw ParseError(line_no, "header must be 'nnf N E V'");
            declared_nodes = static_cast<std::size_t>(parse_long(toks[1], line_no));
            declared_vars = static_cast<std::size_t>(parse_long(toks[3], line_no));
            saw_header = true;
            continue;
        }
        if (!saw_header) throw ParseError(line_no, "missing 'nnf' header");
        NnfRecord r;
        r.line_no = line_no;
        if (toks[0] == "L") {
            if (toks.size() != 2) throw ParseError(line_no, "literal line must be 'L lit'");
            r.kind = NnfRecord::Lit;
            long lit = parse_long(toks[1], line_no);
            if (lit == 0) throw ParseError(line_no, "literal 0 is not allowed");
            r.lit = static_cast<Literal>(lit);
        } else if (toks[0] == "A" || toks[0] == "O") {
            std::size_t at = 1;
            if (toks[0] == "O") {
                if (toks.size() < 3) throw ParseError(line_no, "OR line must be 'O j c ...'");
                r.kind = NnfRecord::OrK;
                r.decision_var = static_cast<Var>(parse_long(toks[at++], line_no));
            } else {
                if (toks.size() < 2) throw ParseError(line_no, "AND line must be 'A c ...'");
                r.kind = NnfRecord::AndK;
            }
            long count = parse_long(toks[at++], line_no);
            if (count < 0 || toks.size() - at != static_cast<std::size_t>(count))
                throw ParseError(line_no, "child count does not match the line");
            for (; at < toks.size(); ++at) {
                long c = parse_long(toks[at], line_no);
                if (c < 0 || static_cast<std::size_t>(c) >= recs.size())
                    throw ParseError(line_no, "child " + std::to_string(c) +
                                                  " does not refer to an earlier node");
                r.children.push_back(static_cast<std::size_t>(c));
            }
        } else {
            throw ParseError(line_no, "unknown line type '" + toks[0] + "'");
        }
        recs.push_back(std::move(r));
    }
    if (recs.empty()) throw ParseError(lines.size(), "no nodes in file");
    if (declared_nodes != recs.size())
        throw ParseError(lines.size(), "header declares " + std::to_string(declared_nodes) +
                                           " nodes, file has " + std::to_string(recs.size()));

    CircuitDag dag;
    dag.flavor = Flavor::DecisionDnnf;
    const NodeId sink0 = dag.add(Node::sink(false));
    const NodeId sink1 = dag.add(Node::sink(true));

    // Branch recognition: a child record factors over variable x if it is
    // the bare literal (rest = true) or an AND with exactly one literal
    // occurrence of x among its children (rest = the other children).
    struct Factored {
        bool positive;
        std::vector<std::size_t> rest;
    };
    auto factor = [&](std::size_t rec, Var x) -> std::optional<Factored> {
        const NnfRecord& r = recs[rec];
        if (r.kind == NnfRecord::Lit && lit_var(r.lit) == x)
            return Factored{lit_positive(r.lit), {}};
        if (r.kind == NnfRecord::AndK) {
            std::optional<bool> sign;
            std::vector<std::size_t> rest;
            for (std::size_t c : r.children) {
                if (recs[c].kind == NnfRecord::Lit && lit_var(recs[c].lit) == x) {
                    if (sign) return std::nullopt; // x twice in one conjunction
                    sign = lit_positive(recs[c].lit);
                } else {
                    rest.push_back(c);
                }
            }
            if (sign) return Factored{*sign, std::move(rest)};
        }
        return std::nullopt;
    };

    std::vector<NodeId> built(recs.size(), kNoNode);
    // Builds the node for a record; `conj_rest` builds the residue of a
    // decision branch (0 children = true, 1 = that child, else an AND).
    std::function<NodeId(std::size_t)> build = [&](std::size_t rec) -> NodeId {
        if (built[rec] != kNoNode) return built[rec];
        const NnfRecord& r = recs[rec];
        NodeId result = kNoNode;
        auto conj_rest = [&](const std::vector<std::size_t>& rest) -> NodeId {
            if (rest.empty()) return sink1;
            if (rest.size() == 1) return build(rest[0]);
            std::vector<NodeId> kids;
            kids.reserve(rest.size());
            for (std::size_t c : rest) kids.push_back(build(c));
            return dag.add(Node::conj(std::move(kids)));
        };
        switch (r.kind) {
        case NnfRecord::Lit:
            result = dag.add(lit_positive(r.lit) ? Node::decision(lit_var(r.lit), sink0, sink1)
                                                 : Node::decision(lit_var(r.lit), sink1, sink0));
            break;
        case NnfRecord::AndK:
            if (r.children.empty())
                result = sink1; // the true node
            else if (r.children.size() == 1)
                result = build(r.children[0]);
            else {
                std::vector<NodeId> kids;
                kids.reserve(r.children.size());
                for (std::size_t c : r.children) kids.push_back(build(c));
                result = dag.add(Node::conj(std::move(kids)));
            }
            break;
        case NnfRecord::OrK: {
            if (r.children.empty()) {
                result = sink0; // the false node
                break;
            }
            if (r.children.size() != 2)
                throw ParseError(r.line_no,
                                 "OR node is not in decision form (needs exactly 2 children)");
            // Candidate decision variables: the header hint first, then any
            // variable a literal child of either branch mentions.
            std::vector<Var> candidates;
            if (r.decision_var != 0) candidates.push_back(r.decision_var);
            for (std::size_t c : r.children) {
                const NnfRecord& cr = recs[c];
                if (cr.kind == NnfRecord::Lit) candidates.push_back(lit_var(cr.lit));
                if (cr.kind == NnfRecord::AndK)
                    for (std::size_t cc : cr.children)
                        if (recs[cc].kind == NnfRecord::Lit)
                            candidates.push_back(lit_var(recs[cc].lit));
            }
            for (Var x : candidates) {
                auto f0 = factor(r.children[0], x);
                auto f1 = factor(r.children[1], x);
                if (f0 && f1 && f0->positive != f1->positive) {
                    const auto& pos = f0->positive ? *f0 : *f1;
                    const auto& neg = f0->positive ? *f1 : *f0;
                    NodeId lo = conj_rest(neg.rest);
                    NodeId hi = conj_rest(pos.rest);
                    result = dag.add(Node::decision(x, lo, hi));
                    break;
                }
            }
            if (result == kNoNode)
                throw ParseError(r.line_no,
                                 "OR node is not in decision form (x and A) or (not-x and B)");
            break;
        }
        }
        built[rec] = result;
        return result;
    };

    dag.root = build(recs.size() - 1);
    Var max_tested = 0;
    for (const Node& n : dag.nodes)
        if (n.kind == NodeKind::Decision) max_tested = std::max(max_tested, n.var);
    if (declared_vars < max_tested)
        throw ParseError(lines.size(), "header declares " + std::to_string(declared_vars) +
                                           " variables but variable " +
                                           std::to_string(max_tested) + " is tested");
    dag.universe = dense_universe(static_cast<std::uint32_t>(declared_vars));
    return dag;
}

std::string write_nnf(const CircuitDag& dag) {
    if (dag.root >= dag.nodes.size()) throw Error("write_nnf: bad root");
    for (const Node& n : dag.nodes)
        if (n.kind == NodeKind::NoOp)
            throw Error("write_nnf: no-op nodes have no NNF form; eliminate them first");

    std::ostringstream body;
    std::size_t produced = 0, edges = 0;
    std::vector<NodeId> order;
    {
        auto topo = topological_order(dag);
        if (!topo) throw Error("write_nnf: graph has a cycle");
        std::vector<bool> keep = reachable_from_root(dag);
        for (NodeId u : *topo)
            if (keep[u]) order.push_back(u);
    }

    // Line number of each emitted node; sinks are shared single lines.
    std::vector<std::size_t> line_of(dag.nodes.size(), SIZE_MAX);
    std::optional<std::size_t> true_line, false_line;
    auto emit = [&](const std::string& s) {
        body << s << "\n";
        return produced++;
    };
    auto sink_line = [&](bool value) {
        auto& slot = value ? true_line : false_line;
        if (!slot) slot = emit(value ? "A 0" : "O 0 0");
        return *slot;
    };

    for (NodeId u : order) {
        const Node& n = dag.nodes[u];
        switch (n.kind) {
        case NodeKind::Sink:
            line_of[u] = sink_line(n.value);
            break;
        case NodeKind::And: {
            std::ostringstream os;
            os << "A " << n.children.size();
            for (NodeId c : n.children) os << " " << line_of[c];
            edges += n.children.size();
            line_of[u] = emit(os.str());
            break;
        }
        case NodeKind::Decision: {
            const Node& lo = dag.nodes[n.lo()];
            const Node& hi = dag.nodes[n.hi()];
            const bool lo_is_0 = lo.kind == NodeKind::Sink && !lo.value;
            const bool lo_is_1 = lo.kind == NodeKind::Sink && lo.value;
            const bool hi_is_0 = hi.kind == NodeKind::Sink && !hi.value;
            const bool hi_is_1 = hi.kind == NodeKind::Sink && hi.value;
            if (lo_is_0 && hi_is_1) {
                line_of[u] = emit("L " + std::to_string(n.var));
                break;
            }
            if (lo_is_1 && hi_is_0) {
                line_of[u] = emit("L -" + std::to_string(n.var));
                break;
            }
            // (x and hi) or (not-x and lo); a literal branch needs no AND.
            auto branch = [&](bool positive, NodeId child) {
                const Node& cn = dag.nodes[child];
                std::string lit = (positive ? "L " : "L -") + std::to_string(n.var);
                std::size_t lit_line = emit(lit);
                if (cn.kind == NodeKind::Sink && cn.value) return lit_line;
                std::size_t child_line =
                    (cn.kind == NodeKind::Sink) ? sink_line(cn.value) : line_of[child];
                edges += 2;
                return emit("A 2 " + std::to_string(lit_line) + " " +
                            std::to_string(child_line));
            };
            std::size_t hi_line = branch(true, n.hi());
            std::size_t lo_line = branch(false, n.lo());
            edges += 2;
            line_of[u] = emit("O " + std::to_string(n.var) + " 2 " + std::to_string(hi_line) +
                              " " + std::to_string(lo_line));
            break;
        }
        case NodeKind::NoOp:
            break; // unreachable, rejected above
        }
    }

    Var max_var = 0;
    for (Var x : dag.universe) max_var = std::max(max_var, x);
    std::ostringstream out;
    out << "nnf " << produced << " " << edges << " " << max_var << "\n" << body.str();
    return out.str();
}

// --- FBDD text --------------------------------------------------------------

CircuitDag parse_fbdd(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    CircuitDag dag;
    dag.flavor = Flavor::Fbdd;
    std::vector<NodeId> by_line;
    Var max_var = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "S") {
            if (toks.size() != 2 || (toks[1] != "0" && toks[1] != "1"))
                throw ParseError(line_no, "sink line must be 'S 0' or 'S 1'");
            by_line.push_back(dag.add(Node::sink(toks[1] == "1")));
        } else if (toks[0] == "D") {
            if (toks.size() != 4) throw ParseError(line_no, "decision line must be 'D var lo hi'");
            long var = parse_long(toks[1], line_no);
            long lo = parse_long(toks[2], line_no);
            long hi = parse_long(toks[3], line_no);
            if (var <= 0) throw ParseError(line_no, "variable must be positive");
            if (lo < 0 || static_cast<std::size_t>(lo) >= by_line.size() || hi < 0 ||
                static_cast<std::size_t>(hi) >= by_line.size())
                throw ParseError(line_no, "child does not refer to an earlier node");
            max_var = std::max(max_var, static_cast<Var>(var));
            by_line.push_back(dag.add(Node::decision(static_cast<Var>(var),
                                                     by_line[static_cast<std::size_t>(lo)],
                                                     by_line[static_cast<std::size_t>(hi)])));
        } else {
            throw ParseError(line_no, "unknown line type '" + toks[0] + "'");
        }
    }
    if (by_line.empty()) throw ParseError(lines.size(), "no nodes in file");
    dag.root = by_line.back();
    dag.universe = dense_universe(max_var);
    return dag;
}

std::string write_fbdd(const CircuitDag& dag) {
    if (dag.root >= dag.nodes.size()) throw Error("write_fbdd: bad root");
    for (const Node& n : dag.nodes)
        if (n.kind == NodeKind::And || n.kind == NodeKind::NoOp)
            throw Error("write_fbdd: input is not a plain FBDD");
    auto topo = topological_order(dag);
    if (!topo) throw Error("write_fbdd: graph has a cycle");
    std::vector<bool> keep = reachable_from_root(dag);

    std::ostringstream os;
    std::vector<std::size_t> line_of(dag.nodes.size(), SIZE_MAX);
    std::size_t produced = 0;
    for (NodeId u : *topo) {
        if (!keep[u]) continue;
        const Node& n = dag.nodes[u];
        if (n.kind == NodeKind::Sink) {
            os << "S " << (n.value ? 1 : 0) << "\n";
        } else {
            os << "D " << n.var << " " << line_of[n.lo()] << " " << line_of[n.hi()] << "\n";
        }
        line_of[u] = produced++;
    }
    return os.str();
}

// --- DIMACS-style formula files ---------------------------------------------

namespace {

std::vector<std::vector<Literal>> parse_dimacs_body(const std::vector<std::string>& lines,
                                                    std::size_t first, std::size_t n_vars,
                                                    std::size_t n_groups) {
    std::vector<std::vector<Literal>> groups;
    std::vector<Literal> cur;
    for (std::size_t i = first; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c") continue;
        for (const std::string& t : toks) {
            long lit = parse_long(t, line_no);
            if (lit == 0) {
                groups.push_back(cur);
                cur.clear();
            } else {
                if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > n_vars)
                    throw ParseError(line_no, "literal " + t + " out of range");
                cur.push_back(static_cast<Literal>(lit));
            }
        }
    }
    if (!cur.empty())
        throw ParseError(lines.size(), "last clause/term is not 0-terminated");
    if (groups.size() != n_groups)
        throw ParseError(lines.size(), "header declares " + std::to_string(n_groups) +
                                           " clauses/terms, file has " +
                                           std::to_string(groups.size()));
    return groups;
}

std::pair<std::size_t, std::pair<std::size_t, std::size_t>> parse_dimacs_header(
    const std::vector<std::string>& lines, const std::string& kind) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] != "p" || toks.size() != 4 || toks[1] != kind)
            throw ParseError(line_no, "expected header 'p " + kind + " <vars> <count>'");
        std::size_t nv = static_cast<std::size_t>(parse_long(toks[2], line_no));
        std::size_t ng = static_cast<std::size_t>(parse_long(toks[3], line_no));
        return {i + 1, {nv, ng}};
    }
    throw ParseError(lines.size(), "missing 'p " + kind + "' header");
}

std::string write_dimacs(const std::string& kind, const std::vector<Var>& universe,
                         const std::vector<std::vector<Literal>>& groups) {
    Var max_var = 0;
    for (Var x : universe) max_var = std::max(max_var, x);
    std::ostringstream os;
    os << "p " << kind << " " << max_var << " " << groups.size() << "\n";
    for (const auto& g : groups) {
        for (Literal l : g) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

} // namespace

CnfFormula parse_cnf_file(std::string_view text) {
    auto lines = split_lines(text);
    auto [first, counts] = parse_dimacs_header(lines, "cnf");
    CnfFormula f;
    f.universe = dense_universe(static_cast<std::uint32_t>(counts.first));
    for (auto& g : parse_dimacs_body(lines, first, counts.first, counts.second))
        f.add_clause(std::move(g));
    return f;
}

std::string write_cnf_file(const CnfFormula& f) {
    return write_dimacs("cnf", f.universe, f.clauses);
}

DnfFormula parse_dnf_file(std::string_view text) {
    auto lines = split_lines(text);
    auto [first, counts] = parse_dimacs_header(lines, "dnf");
    DnfFormula f;
    f.universe = dense_universe(static_cast<std::uint32_t>(counts.first));
    for (auto& g : parse_dimacs_body(lines, first, counts.first, counts.second))
        f.add_term(std::move(g));
    return f;
}

std::string write_dnf_file(const DnfFormula& f) {
    return write_dimacs("dnf", f.universe, f.terms);
}

// --- weights ----------------------------------------------------------------

WeightsExact parse_weights_csv(std::string_view text, const std::vector<Var>& universe,
                               std::ostream& warn) {
    WeightsExact w;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(line_no, "expected '<var>,<probability>'");
        std::string var_part = line.substr(0, comma);
        std::string prob_part = line.substr(comma + 1);
        if (var_part == "var") continue; // header
        long var = parse_long(var_part, line_no);
        if (var <= 0) throw ParseError(line_no, "variable must be positive");
        BigRat p = rat_from_string(prob_part);
        if (p < 0 || p > 1) throw ParseError(line_no, "probability must be in [0,1]");
        w[static_cast<Var>(var)] = p;
    }
    for (Var x : universe) {
        if (!w.count(x)) {
            warn << "warning: no weight for variable " << x << ", defaulting to 1/2\n";
            w[x] = BigRat(1, 2);
        }
    }
    return w;
}

// --- query text ---------------------------------------------------------------

namespace {

void strip_spaces(std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
}

ConjunctiveQuery parse_cq(const std::string& text, std::size_t line_no) {
    ConjunctiveQuery cq;
    std::string body = text;
    auto colon = body.find(':');
    if (colon != std::string::npos) {
        std::string head = body.substr(0, colon);
        body = body.substr(colon + 1);
        strip_spaces(head);
        if (head.substr(0, 6) != "exists")
            throw ParseError(line_no, "expected 'exists <vars> :' before atoms");
        std::istringstream is(head.substr(6));
        std::string v;
        while (is >> v) cq.variables.push_back(v);
    }
    // atoms split on commas at depth 0
    std::vector<std::string> atom_texts;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            atom_texts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    atom_texts.push_back(cur);
    for (std::string at : atom_texts) {
        strip_spaces(at);
        if (at.empty()) continue;
        auto open = at.find('(');
        auto close = at.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParseError(line_no, "malformed atom '" + at + "'");
        Atom atom;
        atom.relation = at.substr(0, open);
        strip_spaces(atom.relation);
        if (atom.relation.empty()) throw ParseError(line_no, "atom without a relation name");
        std::string args = at.substr(open + 1, close - open - 1);
        std::string arg;
        std::istringstream is(args);
        while (std::getline(is, arg, ',')) {
            strip_spaces(arg);
            if (arg.empty()) throw ParseError(line_no, "empty argument in atom '" + at + "'");
            Atom::Arg a;
            if (arg.front() == '\'') {
                if (arg.size() < 2 || arg.back() != '\'')
                    throw ParseError(line_no, "unterminated constant " + arg);
                a.is_variable = false;
                a.text = arg.substr(1, arg.size() - 2);
            } else {
                a.is_variable = true;
                a.text = arg;
            }
            atom.args.push_back(std::move(a));
        }
        if (atom.args.empty()) throw ParseError(line_no, "atom '" + at + "' has no arguments");
        cq.atoms.push_back(std::move(atom));
    }
    if (cq.atoms.empty()) throw ParseError(line_no, "conjunctive query has no atoms");
    for (const std::string& v : cq.variables) {
        bool used = false;
        for (const Atom& a : cq.atoms)
            for (const Atom::Arg& arg : a.args)
                if (arg.is_variable && arg.text == v) used = true;
        if (!used)
            throw ParseError(line_no, "declared variable '" + v + "' occurs in no atom");
    }
    return cq;
}

} // namespace

UcqQuery parse_query(std::string_view text) {
    // one UCQ per file; '|' separates disjuncts, newlines are whitespace
    std::string flat;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        flat.push_back(c == '\n' || c == '\r' ? ' ' : c);
    }
    UcqQuery q;
    std::string cur;
    std::vector<std::string> parts;
    for (char c : flat) {
        if (c == '|') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    for (std::string& p : parts) {
        strip_spaces(p);
        if (!p.empty()) q.disjuncts.push_back(parse_cq(p, 1));
    }
    if (q.disjuncts.empty()) throw ParseError(1, "empty query");
    return q;
}

std::string write_query(const UcqQuery& q) {
    std::ostringstream os;
    for (std::size_t d = 0; d < q.disjuncts.size(); ++d) {
        if (d) os << " | ";
        const ConjunctiveQuery& cq = q.disjuncts[d];
        if (!cq.variables.empty()) {
            os << "exists";
            for (const auto& v : cq.variables) os << " " << v;
            os << " : ";
        }
        for (std::size_t i = 0; i < cq.atoms.size(); ++i) {
            if (i) os << ", ";
            os << cq.atoms[i].relation << "(";
            for (std::size_t j = 0; j < cq.atoms[i].args.size(); ++j) {
                if (j) os << ", ";
                const Atom::Arg& a = cq.atoms[i].args[j];
                os << (a.is_variable ? a.text : "'" + a.text + "'");
            }
            os << ")";
        }
    }
    os << "\n";
    return os.str();
}

// --- database text --------------------------------------------------------------

DatabaseInstance parse_database(std::string_view text) {
    DatabaseInstance db;
    Relation* cur = nullptr;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "relation") {
            if (toks.size() != 3) throw ParseError(line_no, "expected 'relation <name> <arity>'");
            long arity = parse_long(toks[2], line_no);
            if (arity < 1) throw ParseError(line_no, "arity must be >= 1");
            for (const Relation& r : db.relations)
                if (r.name == toks[1])
                    throw ParseError(line_no, "relation '" + toks[1] + "' declared twice");
            db.relations.push_back({toks[1], static_cast<std::uint32_t>(arity), {}, {}, {}});
            cur = &db.relations.back();
        } else {
            if (!cur) throw ParseError(line_no, "tuple before any 'relation' line");
            if (toks.size() != cur->arity + 1)
                throw ParseError(line_no, "expected " + std::to_string(cur->arity) +
                                              " values and a probability");
            BigRat p;
            try {
                p = rat_from_string(toks.back());
            } catch (const Error&) {
                throw ParseError(line_no, "bad probability '" + toks.back() + "'");
            }
            if (p < 0 || p > 1) throw ParseError(line_no, "probability must be in [0,1]");
            std::vector<std::string> row(toks.begin(), toks.end() - 1);
            cur->rows.push_back(std::move(row));
            cur->probs.push_back(p);
        }
    }
    if (db.relations.empty()) throw ParseError(lines.size(), "no relations in file");
    db.finalize();
    return db;
}

std::string write_database(const DatabaseInstance& db) {
    std::ostringstream os;
    for (const Relation& r : db.relations) {
        os << "relation " << r.name << " " << r.arity << "\n";
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            for (const std::string& v : r.rows[i]) os << v << " ";
            os << rat_to_string(r.probs[i]) << "\n";
        }
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace kc
