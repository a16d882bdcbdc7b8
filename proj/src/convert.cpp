#include "kc/convert.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace kc {

namespace {

// Distinct reachable AND nodes per sub-DAG, as bitsets over AND indices.
// Sub-DAGs of a decomposable AND are variable-disjoint but may in principle
// share variable-free structure, so we count reachable nodes rather than
// trusting the additive recurrence.
std::vector<std::uint32_t> ands_below_counts(const CircuitDag& dag,
                                             const std::vector<NodeId>& topo) {
    std::vector<std::uint32_t> and_index(dag.nodes.size(), 0);
    std::uint32_t n_ands = 0;
    for (NodeId u = 0; u < dag.nodes.size(); ++u)
        if (dag.nodes[u].kind == NodeKind::And) and_index[u] = n_ands++;

    const std::size_t words = (n_ands + 63) / 64;
    std::vector<std::uint64_t> bits(words * dag.nodes.size(), 0);
    std::vector<std::uint32_t> count(dag.nodes.size(), 0);
    for (NodeId u : topo) {
        std::uint64_t* mine = bits.data() + static_cast<std::size_t>(u) * words;
        for (NodeId c : dag.nodes[u].children) {
            const std::uint64_t* theirs = bits.data() + static_cast<std::size_t>(c) * words;
            for (std::size_t w = 0; w < words; ++w) mine[w] |= theirs[w];
        }
        if (dag.nodes[u].kind == NodeKind::And) {
            std::uint32_t i = and_index[u];
            mine[i / 64] |= 1ull << (i % 64);
        }
        std::uint32_t c = 0;
        for (std::size_t w = 0; w < words; ++w)
            c += static_cast<std::uint32_t>(__builtin_popcountll(mine[w]));
        count[u] = c;
    }
    return count;
}

} // namespace

ClassifiedDag classify_and_order(const CircuitDag& dag) {
    ClassifiedDag out;
    out.dag = dag; // private copy; swaps below never touch the caller's DAG
    for (const Node& n : out.dag.nodes) {
        if (n.kind == NodeKind::NoOp)
            throw Error("classify_and_order: no-op node in decision-DNNF input");
        if (n.kind == NodeKind::And && n.children.size() != 2)
            throw Error("classify_and_order: AND node is not binary; normalize first");
    }
    auto topo = topological_order(out.dag);
    if (!topo) throw Error("classify_and_order: graph has a cycle");

    out.counts.ands_below = ands_below_counts(out.dag, *topo);

    std::uint64_t total = 0;
    for (NodeId u = 0; u < out.dag.nodes.size(); ++u) {
        Node& n = out.dag.nodes[u];
        if (n.kind != NodeKind::And) continue;
        ++total;
        if (out.counts.ands_below[n.children[0]] > out.counts.ands_below[n.children[1]])
            std::swap(n.children[0], n.children[1]);
    }
    out.counts.total_ands = total;

    out.edge_class.assign(out.dag.nodes.size(), {EdgeClass::Neutral, EdgeClass::Neutral});
    for (NodeId u = 0; u < out.dag.nodes.size(); ++u) {
        if (out.dag.nodes[u].kind == NodeKind::And)
            out.edge_class[u] = {EdgeClass::Light, EdgeClass::Heavy};
    }

    // L: longest chain of light edges on any downward path.
    std::vector<std::uint32_t> depth(out.dag.nodes.size(), 0);
    for (NodeId u : *topo) {
        const Node& n = out.dag.nodes[u];
        std::uint32_t d = 0;
        for (std::size_t slot = 0; slot < n.children.size(); ++slot) {
            std::uint32_t via = depth[n.children[slot]] +
                                (out.edge_class[u][slot] == EdgeClass::Light ? 1u : 0u);
            d = std::max(d, via);
        }
        depth[u] = d;
    }
    out.counts.max_light_depth = depth[out.dag.root];
    return out;
}

namespace {

struct ProductKey {
    NodeId base;
    std::vector<NodeId> sorted_lights;

    bool operator==(const ProductKey& o) const {
        return base == o.base && sorted_lights == o.sorted_lights;
    }
};

struct ProductKeyHash {
    std::size_t operator()(const ProductKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.base;
        for (NodeId e : k.sorted_lights) {
            h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

ProductFbdd to_fbdd(const ClassifiedDag& cls) {
    const CircuitDag& d = cls.dag;
    if (d.root >= d.nodes.size()) throw Error("to_fbdd: bad root");

    // Unique incoming edge per 1-sink is a precondition (Type 3 edges hand a
    // 1-sink copy exactly one continuation).
    {
        std::vector<std::uint8_t> seen(d.nodes.size(), 0);
        for (const Node& n : d.nodes)
            for (NodeId c : n.children)
                if (d.nodes[c].kind == NodeKind::Sink && d.nodes[c].value && seen[c]++)
                    throw Error("to_fbdd: shared 1-sink; normalize first");
    }

    ProductFbdd out;
    out.fbdd.universe = d.universe;
    out.fbdd.flavor = Flavor::FbddWithNoops;

    std::unordered_map<ProductKey, NodeId, ProductKeyHash> memo;
    std::deque<NodeId> queue;

    auto label_for = [&](NodeId base, bool s_empty) {
        const Node& n = d.nodes[base];
        switch (n.kind) {
        case NodeKind::Decision: return Node::decision(n.var, kNoNode, kNoNode);
        case NodeKind::And: return Node::noop(kNoNode);
        case NodeKind::Sink:
            if (!n.value) return Node::sink(false);
            return s_empty ? Node::sink(true) : Node::noop(kNoNode);
        case NodeKind::NoOp: break;
        }
        throw InternalError("to_fbdd: unexpected node kind");
    };

    auto intern = [&](NodeId base, std::vector<NodeId> lights) {
        // 0-sinks may stay shared: all (0-sink, s) pairs collapse into one
        // leaf per sink, which keeps the output within the node bound even
        // when a light sub-DAG shares its 0-sink with the rest of the DAG.
        const bool zero_sink =
            d.nodes[base].kind == NodeKind::Sink && !d.nodes[base].value;
        if (zero_sink) lights.clear();
        ProductKey key{base, lights};
        std::sort(key.sorted_lights.begin(), key.sorted_lights.end());
        if (auto it = memo.find(key); it != memo.end()) {
            // On a DAG the traversal order of a light-edge set is
            // path-independent; assert it instead of assuming silently.
            if (out.light_edges[it->second] != lights)
                throw InternalError("to_fbdd: light-edge set reached in two different orders");
            return it->second;
        }
        NodeId id = out.fbdd.add(label_for(base, lights.empty()));
        out.origin.push_back(base);
        out.light_edges.push_back(std::move(lights));
        memo.emplace(std::move(key), id);
        queue.push_back(id);
        return id;
    };

    out.fbdd.root = intern(d.root, {});
    while (!queue.empty()) {
        NodeId id = queue.front();
        queue.pop_front();
        const NodeId base = out.origin[id];
        const Node& src = d.nodes[base];
        std::vector<NodeId> children;
        switch (src.kind) {
        case NodeKind::Decision: // Type 2: neutral edges keep s
            children.push_back(intern(src.lo(), out.light_edges[id]));
            children.push_back(intern(src.hi(), out.light_edges[id]));
            break;
        case NodeKind::And: { // Type 1: follow the light edge, s grows
            std::vector<NodeId> s = out.light_edges[id];
            s.push_back(base);
            children.push_back(intern(src.children[0], std::move(s)));
            break;
        }
        case NodeKind::Sink: {
            if (!src.value || out.light_edges[id].empty()) break; // leaf in the output
            // Type 3: pop the last light edge, continue at its heavy child.
            std::vector<NodeId> s = out.light_edges[id];
            NodeId and_node = s.back();
            s.pop_back();
            children.push_back(intern(d.nodes[and_node].children[1], std::move(s)));
            break;
        }
        case NodeKind::NoOp:
            throw InternalError("to_fbdd: unexpected no-op");
        }
        out.fbdd.nodes[id].children = std::move(children);
    }

    out.report.input_nodes = d.nodes.size();
    out.report.and_count = cls.counts.total_ands;
    out.report.light_depth = cls.counts.max_light_depth;
    out.report.out_nodes_with_noops = out.fbdd.nodes.size();
    out.report.product_bound =
        BigInt(static_cast<unsigned long>(d.nodes.size())) *
        pow_int(BigInt(static_cast<unsigned long>(cls.counts.total_ands)),
                cls.counts.max_light_depth);
    out.report.quasipoly_bound = quasipoly_bound_floor(d.nodes.size());
    // Provable hard cap: per source node, the nonempty light-edge sets of
    // size <= L inject into M-ary sequences of length L, plus the empty set.
    if (BigInt(static_cast<unsigned long>(out.report.out_nodes_with_noops)) >
        BigInt(static_cast<unsigned long>(d.nodes.size())) *
            (pow_int(BigInt(static_cast<unsigned long>(cls.counts.total_ands)),
                     cls.counts.max_light_depth) +
             1))
        throw InternalError("to_fbdd: output exceeds the N*(M^L+1) cap");
    return out;
}

ConvertResult convert(const CircuitDag& dnnf) {
    CircuitDag norm = normalize(dnnf);
    ClassifiedDag cls = classify_and_order(norm);
    ProductFbdd prod = to_fbdd(cls);
    ConvertResult res;
    res.fbdd = eliminate_noops(prod.fbdd);
    res.report = prod.report;
    res.report.out_nodes_final = res.fbdd.nodes.size();
    return res;
}

std::uint32_t max_ands_on_path(const CircuitDag& dag) {
    auto topo = topological_order(dag);
    if (!topo) throw Error("max_ands_on_path: graph has a cycle");
    std::vector<std::uint32_t> best(dag.nodes.size(), 0);
    for (NodeId u : *topo) {
        const Node& n = dag.nodes[u];
        std::uint32_t d = 0;
        for (NodeId c : n.children) d = std::max(d, best[c]);
        best[u] = d + (n.kind == NodeKind::And ? 1 : 0);
    }
    return best[dag.root];
}

} // namespace kc
