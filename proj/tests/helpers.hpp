#pragma once

#include "kc/circuit.hpp"
#include "kc/formula.hpp"

#include <functional>
#include <map>
#include <random>

// Shared fixtures for the test suites.

namespace kct {

using namespace kc;

// The four-variable decision-DNNF computing (not-X) Y Z  or  X Y U:
// a decision on X whose branches are AND nodes sharing the decision on Y.
// Variables: X=1, Y=2, Z=3, U=4.
inline CircuitDag shared_subgraph() {
    CircuitDag d;
    d.flavor = Flavor::DecisionDnnf;
    d.universe = dense_universe(4);
    NodeId s0 = d.add(Node::sink(false));
    NodeId s1 = d.add(Node::sink(true));
    NodeId y = d.add(Node::decision(2, s0, s1));
    NodeId z = d.add(Node::decision(3, s0, s1));
    NodeId u = d.add(Node::decision(4, s0, s1));
    NodeId and_yz = d.add(Node::conj(y, z));
    NodeId and_yu = d.add(Node::conj(y, u));
    d.root = d.add(Node::decision(1, and_yz, and_yu));
    return d;
}

inline CircuitDag single_decision(Var x, std::uint32_t universe_size) {
    CircuitDag d;
    d.flavor = Flavor::Fbdd;
    d.universe = dense_universe(universe_size);
    NodeId s0 = d.add(Node::sink(false));
    NodeId s1 = d.add(Node::sink(true));
    d.root = d.add(Node::decision(x, s0, s1));
    return d;
}

// Random decision-DNNFs with genuine sharing: sub-DAGs are built over
// variable ranges, reused across parents with some probability, and split
// into AND nodes over disjoint sub-ranges, so read-once and decomposability
// hold by construction.
inline CircuitDag random_dnnf(std::uint32_t n_vars, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CircuitDag d;
    d.flavor = Flavor::DecisionDnnf;
    d.universe = dense_universe(n_vars);
    NodeId s0 = d.add(Node::sink(false));
    NodeId s1 = d.add(Node::sink(true));
    // memo of already-built nodes per variable range, for sharing
    std::map<std::pair<Var, Var>, std::vector<NodeId>> pool;
    std::function<NodeId(Var, Var)> build = [&](Var lo, Var hi) -> NodeId {
        if (lo > hi || rng() % 5 == 0) return (rng() & 1) ? s1 : s0;
        auto& seen = pool[{lo, hi}];
        if (!seen.empty() && rng() % 3 == 0) return seen[rng() % seen.size()];
        NodeId made;
        if (hi > lo && rng() % 3 == 0) {
            Var mid = lo + rng() % (hi - lo); // AND over disjoint ranges
            made = d.add(Node::conj(build(lo, mid), build(mid + 1, hi)));
        } else {
            NodeId l = build(lo + 1, hi);
            NodeId h = build(lo + 1, hi);
            made = d.add(Node::decision(lo, l, h));
        }
        seen.push_back(made);
        return made;
    };
    d.root = build(1, n_vars);
    return d;
}

// The unique decision node testing x, or kNoNode.
inline NodeId decision_on(const CircuitDag& d, Var x) {
    NodeId found = kNoNode;
    for (NodeId u = 0; u < d.node_count(); ++u)
        if (d.node(u).kind == NodeKind::Decision && d.node(u).var == x) {
            if (found != kNoNode) return kNoNode;
            found = u;
        }
    return found;
}

} // namespace kct
