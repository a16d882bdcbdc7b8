#include "kc/circuit.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace kc {

const char* flavor_name(Flavor f) {
    switch (f) {
    case Flavor::Fbdd: return "fbdd";
    case Flavor::FbddWithNoops: return "fbdd+noops";
    case Flavor::DecisionDnnf: return "decision-dnnf";
    case Flavor::AndFbdd: return "and-fbdd";
    }
    return "?";
}

Node Node::decision(Var x, NodeId lo, NodeId hi) {
    Node n;
    n.kind = NodeKind::Decision;
    n.var = x;
    n.children = {lo, hi};
    return n;
}

Node Node::conj(NodeId left, NodeId right) {
    Node n;
    n.kind = NodeKind::And;
    n.children = {left, right};
    return n;
}

Node Node::conj(std::vector<NodeId> children) {
    Node n;
    n.kind = NodeKind::And;
    n.children = std::move(children);
    return n;
}

Node Node::noop(NodeId child) {
    Node n;
    n.kind = NodeKind::NoOp;
    n.children = {child};
    return n;
}

Node Node::sink(bool value) {
    Node n;
    n.kind = NodeKind::Sink;
    n.value = value;
    return n;
}

bool CircuitDag::in_universe(Var x) const {
    return std::binary_search(universe.begin(), universe.end(), x);
}

std::vector<Var> dense_universe(std::uint32_t n) {
    std::vector<Var> u(n);
    for (std::uint32_t i = 0; i < n; ++i) u[i] = i + 1;
    return u;
}

CircuitDag sink_dag(bool value, std::vector<Var> universe, Flavor flavor) {
    CircuitDag d;
    d.universe = std::move(universe);
    d.flavor = flavor;
    d.root = d.add(Node::sink(value));
    return d;
}

std::optional<std::vector<NodeId>> topological_order(const CircuitDag& dag) {
    const std::size_t n = dag.nodes.size();
    std::vector<std::uint8_t> state(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<NodeId> order;
    order.reserve(n);
    // Iterative DFS; (node, next child slot) frames.
    std::vector<std::pair<NodeId, std::size_t>> stack;
    for (NodeId start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty()) {
            auto& [u, slot] = stack.back();
            const Node& nu = dag.nodes[u];
            if (slot < nu.children.size()) {
                NodeId c = nu.children[slot++];
                if (c >= n) return std::nullopt; // dangling ref; let validate name it
                if (state[c] == 1) return std::nullopt;
                if (state[c] == 0) {
                    state[c] = 1;
                    stack.push_back({c, 0});
                }
            } else {
                state[u] = 2;
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    return order;
}

std::vector<bool> reachable_from_root(const CircuitDag& dag) {
    std::vector<bool> seen(dag.nodes.size(), false);
    if (dag.root >= dag.nodes.size()) return seen;
    std::vector<NodeId> stack = {dag.root};
    seen[dag.root] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId c : dag.nodes[u].children) {
            if (c < dag.nodes.size() && !seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return seen;
}

VarSets VarSets::below(const CircuitDag& dag) {
    auto order = topological_order(dag);
    if (!order) throw Error("vars_below: graph has a cycle");

    VarSets vs;
    // Slots for every variable that occurs, universe first. Decision nodes
    // may mention variables outside the universe; validate() reports those
    // separately, the set computation must not choke on them.
    for (Var x : dag.universe) {
        if (vs.var_to_slot_.emplace(x, vs.slot_to_var_.size()).second)
            vs.slot_to_var_.push_back(x);
    }
    for (const Node& n : dag.nodes) {
        if (n.kind == NodeKind::Decision && vs.var_to_slot_.emplace(n.var, vs.slot_to_var_.size()).second)
            vs.slot_to_var_.push_back(n.var);
    }
    vs.words_ = (vs.slot_to_var_.size() + 63) / 64;
    vs.bits_.assign(vs.words_ * dag.nodes.size(), 0);

    for (NodeId u : *order) {
        std::uint64_t* mine = vs.bits_.data() + static_cast<std::size_t>(u) * vs.words_;
        const Node& n = dag.nodes[u];
        for (NodeId c : n.children) {
            const std::uint64_t* theirs = vs.bits_.data() + static_cast<std::size_t>(c) * vs.words_;
            for (std::size_t w = 0; w < vs.words_; ++w) mine[w] |= theirs[w];
        }
        if (n.kind == NodeKind::Decision) {
            std::size_t slot = vs.var_to_slot_.at(n.var);
            mine[slot / 64] |= 1ull << (slot % 64);
        }
    }
    return vs;
}

bool VarSets::contains(NodeId node, Var x) const {
    auto it = var_to_slot_.find(x);
    if (it == var_to_slot_.end()) return false;
    std::size_t slot = it->second;
    return (bits_[static_cast<std::size_t>(node) * words_ + slot / 64] >> (slot % 64)) & 1;
}

bool VarSets::disjoint(NodeId a, NodeId b) const {
    const std::uint64_t* wa = bits_.data() + static_cast<std::size_t>(a) * words_;
    const std::uint64_t* wb = bits_.data() + static_cast<std::size_t>(b) * words_;
    for (std::size_t w = 0; w < words_; ++w)
        if (wa[w] & wb[w]) return false;
    return true;
}

std::optional<Var> VarSets::first_common(NodeId a, NodeId b) const {
    const std::uint64_t* wa = bits_.data() + static_cast<std::size_t>(a) * words_;
    const std::uint64_t* wb = bits_.data() + static_cast<std::size_t>(b) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t both = wa[w] & wb[w];
        if (both) {
            std::size_t slot = w * 64 + static_cast<std::size_t>(__builtin_ctzll(both));
            return slot_to_var_[slot];
        }
    }
    return std::nullopt;
}

std::vector<Var> VarSets::vars(NodeId node) const {
    std::vector<Var> out;
    const std::uint64_t* w = bits_.data() + static_cast<std::size_t>(node) * words_;
    for (std::size_t slot = 0; slot < slot_to_var_.size(); ++slot)
        if ((w[slot / 64] >> (slot % 64)) & 1) out.push_back(slot_to_var_[slot]);
    std::sort(out.begin(), out.end());
    return out;
}

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::RootRef: return "root-ref";
    case Rule::ChildRef: return "child-ref";
    case Rule::Arity: return "arity";
    case Rule::UnknownVar: return "unknown-var";
    case Rule::Cycle: return "cycle";
    case Rule::FlavorKind: return "flavor-kind";
    case Rule::ReadOnce: return "read-once";
    case Rule::Decomposability: return "decomposability";
    }
    return "?";
}

std::string ValidationReport::to_string() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (const Violation& v : violations) {
        os << rule_name(v.rule);
        if (v.node != kNoNode) os << " at node " << v.node;
        if (v.other != kNoNode) os << " (with node " << v.other << ")";
        if (v.var != 0) os << " variable " << v.var;
        if (!v.detail.empty()) os << ": " << v.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

bool kind_allowed(Flavor f, NodeKind k) {
    switch (k) {
    case NodeKind::Decision:
    case NodeKind::Sink:
        return true;
    case NodeKind::And:
        return f == Flavor::DecisionDnnf || f == Flavor::AndFbdd;
    case NodeKind::NoOp:
        return f == Flavor::FbddWithNoops;
    }
    return false;
}

bool arity_ok(const Node& n) {
    switch (n.kind) {
    case NodeKind::Decision: return n.children.size() == 2;
    case NodeKind::And: return n.children.size() >= 2;
    case NodeKind::NoOp: return n.children.size() == 1;
    case NodeKind::Sink: return n.children.empty();
    }
    return false;
}

} // namespace

ValidationReport validate(const CircuitDag& dag) {
    ValidationReport rep;
    auto flag = [&](Violation v) {
        rep.ok = false;
        rep.violations.push_back(std::move(v));
    };

    if (dag.root >= dag.nodes.size()) {
        flag({Rule::RootRef, dag.root, kNoNode, 0, "root does not name a node"});
        return rep;
    }
    bool structure_ok = true;
    for (NodeId u = 0; u < dag.nodes.size(); ++u) {
        const Node& n = dag.nodes[u];
        if (!arity_ok(n)) {
            flag({Rule::Arity, u, kNoNode, 0,
                  "node has " + std::to_string(n.children.size()) + " children"});
            structure_ok = false;
        }
        for (NodeId c : n.children) {
            if (c >= dag.nodes.size()) {
                flag({Rule::ChildRef, u, c, 0, "child reference out of range"});
                structure_ok = false;
            }
        }
    }
    if (!structure_ok) return rep;

    auto order = topological_order(dag);
    if (!order) {
        flag({Rule::Cycle, kNoNode, kNoNode, 0, "graph has a cycle"});
        return rep;
    }

    for (NodeId u = 0; u < dag.nodes.size(); ++u) {
        const Node& n = dag.nodes[u];
        if (!kind_allowed(dag.flavor, n.kind))
            flag({Rule::FlavorKind, u, kNoNode, 0,
                  std::string("node kind not allowed in flavor ") + flavor_name(dag.flavor)});
        if (n.kind == NodeKind::Decision && !dag.in_universe(n.var))
            flag({Rule::UnknownVar, u, kNoNode, n.var, "tested variable not in universe"});
    }

    VarSets below = VarSets::below(dag);
    for (NodeId u = 0; u < dag.nodes.size(); ++u) {
        const Node& n = dag.nodes[u];
        if (n.kind == NodeKind::Decision) {
            for (NodeId c : n.children) {
                if (below.contains(c, n.var)) {
                    flag({Rule::ReadOnce, u, c, n.var,
                          "variable tested again below this decision node"});
                    break;
                }
            }
        } else if (n.kind == NodeKind::And && dag.flavor == Flavor::DecisionDnnf) {
            for (std::size_t i = 0; i + 1 < n.children.size() && rep.violations.size() < 1000; ++i) {
                for (std::size_t j = i + 1; j < n.children.size(); ++j) {
                    if (auto x = below.first_common(n.children[i], n.children[j])) {
                        flag({Rule::Decomposability, u, kNoNode, *x,
                              "AND children share a variable"});
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

// Rebuild the sub-DAG reachable from the root with nodes renumbered in BFS
// discovery order (children visited left to right). Deterministic, so two
// passes yield identical arrays.
CircuitDag bfs_compact(const CircuitDag& dag) {
    CircuitDag out;
    out.universe = dag.universe;
    out.flavor = dag.flavor;
    std::vector<NodeId> remap(dag.nodes.size(), kNoNode);
    std::deque<NodeId> queue;
    auto visit = [&](NodeId old) {
        if (remap[old] == kNoNode) {
            remap[old] = static_cast<NodeId>(out.nodes.size());
            Node placeholder = dag.nodes[old];
            out.nodes.push_back(placeholder);
            queue.push_back(old);
        }
        return remap[old];
    };
    out.root = visit(dag.root);
    while (!queue.empty()) {
        NodeId old = queue.front();
        queue.pop_front();
        std::vector<NodeId> mapped;
        mapped.reserve(dag.nodes[old].children.size());
        for (NodeId c : dag.nodes[old].children) mapped.push_back(visit(c));
        out.nodes[remap[old]].children = std::move(mapped);
    }
    return out;
}

} // namespace

CircuitDag normalize(const CircuitDag& dag) {
    if (dag.flavor == Flavor::FbddWithNoops || dag.flavor == Flavor::AndFbdd) {
        ValidationReport rep;
        rep.ok = false;
        rep.violations.push_back({Rule::FlavorKind, kNoNode, kNoNode, 0,
                                  std::string("normalize expects a decision-DNNF, got ") +
                                      flavor_name(dag.flavor)});
        throw ValidationError(std::move(rep));
    }
    ValidationReport rep = validate(dag);
    if (!rep.ok) throw ValidationError(std::move(rep));

    CircuitDag out = bfs_compact(dag);

    // Expand n-ary ANDs into right-deep chains, preserving child order; the
    // converter reorders children afterwards anyway.
    const std::size_t n_original = out.nodes.size();
    for (NodeId u = 0; u < n_original; ++u) {
        if (out.nodes[u].kind != NodeKind::And || out.nodes[u].children.size() == 2) continue;
        std::vector<NodeId> kids = out.nodes[u].children;
        NodeId tail = kids.back();
        for (std::size_t i = kids.size() - 2; i >= 1; --i) {
            tail = out.add(Node::conj(kids[i], tail));
        }
        out.nodes[u].children = {kids[0], tail};
    }
    out = bfs_compact(out);

    // Give every edge into a 1-sink its own copy; the first edge keeps the
    // original node. 0-sinks may stay shared.
    std::vector<bool> sink_used(out.nodes.size(), false);
    const std::size_t n_before = out.nodes.size();
    for (NodeId u = 0; u < n_before; ++u) {
        for (std::size_t slot = 0; slot < out.nodes[u].children.size(); ++slot) {
            NodeId c = out.nodes[u].children[slot];
            if (out.nodes[c].kind == NodeKind::Sink && out.nodes[c].value) {
                if (sink_used[c]) {
                    out.nodes[u].children[slot] = out.add(Node::sink(true));
                } else {
                    sink_used[c] = true;
                }
            }
        }
    }
    return bfs_compact(out);
}

CircuitDag eliminate_noops(const CircuitDag& dag) {
    if (dag.root >= dag.nodes.size()) throw Error("eliminate_noops: bad root");
    for (const Node& n : dag.nodes)
        if (n.kind == NodeKind::And)
            throw Error("eliminate_noops: AND node present, input is not an FBDD");

    // Resolve each no-op chain to its first real node.
    std::vector<NodeId> target(dag.nodes.size(), kNoNode);
    auto resolve = [&](NodeId start) {
        std::vector<NodeId> chain;
        NodeId u = start;
        while (dag.nodes[u].kind == NodeKind::NoOp && target[u] == kNoNode) {
            if (dag.nodes[u].children.size() != 1)
                throw Error("eliminate_noops: no-op node without exactly one child");
            chain.push_back(u);
            u = dag.nodes[u].children[0];
            if (u >= dag.nodes.size()) throw Error("eliminate_noops: dangling child");
            if (chain.size() > dag.nodes.size()) throw Error("eliminate_noops: no-op cycle");
        }
        NodeId end = (dag.nodes[u].kind == NodeKind::NoOp) ? target[u] : u;
        for (NodeId c : chain) target[c] = end;
        return end;
    };

    CircuitDag out;
    out.universe = dag.universe;
    out.flavor = Flavor::Fbdd;
    std::vector<NodeId> remap(dag.nodes.size(), kNoNode);
    std::deque<NodeId> queue;
    auto visit = [&](NodeId old) {
        NodeId real = resolve(old);
        if (remap[real] == kNoNode) {
            remap[real] = static_cast<NodeId>(out.nodes.size());
            out.nodes.push_back(dag.nodes[real]);
            queue.push_back(real);
        }
        return remap[real];
    };
    out.root = visit(dag.root);
    while (!queue.empty()) {
        NodeId old = queue.front();
        queue.pop_front();
        std::vector<NodeId> mapped;
        mapped.reserve(dag.nodes[old].children.size());
        for (NodeId c : dag.nodes[old].children) mapped.push_back(visit(c));
        out.nodes[remap[old]].children = std::move(mapped);
    }
    return out;
}

std::string canonical_signature(const CircuitDag& dag) {
    if (dag.root >= dag.nodes.size()) return "<empty>";
    CircuitDag c = bfs_compact(dag);
    std::ostringstream os;
    os << "root " << c.root << "\n";
    for (NodeId u = 0; u < c.nodes.size(); ++u) {
        const Node& n = c.nodes[u];
        switch (n.kind) {
        case NodeKind::Decision: os << u << " D " << n.var; break;
        case NodeKind::And: os << u << " A"; break;
        case NodeKind::NoOp: os << u << " N"; break;
        case NodeKind::Sink: os << u << " S " << (n.value ? 1 : 0); break;
        }
        for (NodeId ch : n.children) os << " " << ch;
        os << "\n";
    }
    return os.str();
}

} // namespace kc
