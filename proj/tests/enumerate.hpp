#pragma once

#include "kc/convert.hpp"

#include <algorithm>
#include <functional>
#include <set>

// Path-enumeration ground truth for the product construction: the distinct
// light-edge sets over all root-to-target paths, independent of to_fbdd.

namespace kct {

using namespace kc;

inline std::set<std::vector<NodeId>> light_sets_to(const ClassifiedDag& cls, NodeId target) {
    const CircuitDag& d = cls.dag;
    auto topo_opt = topological_order(d);
    if (!topo_opt) throw Error("light_sets_to: cycle");
    std::vector<char> reaches(d.node_count(), 0);
    reaches[target] = 1;
    for (NodeId u : *topo_opt) { // children first, so one pass suffices
        if (u == target) continue;
        for (NodeId c : d.node(u).children)
            if (reaches[c]) {
                reaches[u] = 1;
                break;
            }
    }
    std::set<std::vector<NodeId>> sets;
    std::vector<NodeId> cur;
    std::function<void(NodeId)> dfs = [&](NodeId u) {
        if (u == target) {
            std::vector<NodeId> s = cur;
            std::sort(s.begin(), s.end());
            sets.insert(std::move(s));
            return;
        }
        const Node& n = d.node(u);
        for (std::size_t slot = 0; slot < n.children.size(); ++slot) {
            NodeId c = n.children[slot];
            if (!reaches[c]) continue;
            const bool light = n.kind == NodeKind::And && slot == 0;
            if (light) cur.push_back(u);
            dfs(c);
            if (light) cur.pop_back();
        }
    };
    if (reaches[d.root]) dfs(d.root);
    return sets;
}

// How many product nodes the conversion made for the given source node.
inline std::size_t copies_of(const ProductFbdd& prod, NodeId source) {
    std::size_t n = 0;
    for (NodeId o : prod.origin)
        if (o == source) ++n;
    return n;
}

} // namespace kct
