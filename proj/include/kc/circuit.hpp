#pragma once

#include "kc/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kc {

// Boolean variables are identified by a positive index.
using Var = std::uint32_t;

// Nodes live in a flat array; a NodeId is an index into it. Index-based
// storage keeps shared sub-DAGs cheap to reference and memoize on.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

enum class NodeKind : std::uint8_t {
    Decision, // tests a variable; children = {0-branch, 1-branch}
    And,      // conjunction of children (2 or more until normalized)
    NoOp,     // unlabeled pass-through with a single child
    Sink,     // constant 0 or 1
};

enum class Flavor : std::uint8_t {
    Fbdd,          // decision + sink nodes only
    FbddWithNoops, // additionally allows no-op nodes
    DecisionDnnf,  // decision + decomposable AND + sink nodes
    AndFbdd,       // AND nodes without the decomposability requirement
};

const char* flavor_name(Flavor f);

struct Node {
    NodeKind kind = NodeKind::Sink;
    Var var = 0;                  // Decision only
    bool value = false;           // Sink only
    std::vector<NodeId> children; // Decision: {lo, hi}; And: >= 2; NoOp: 1

    static Node decision(Var x, NodeId lo, NodeId hi);
    static Node conj(NodeId left, NodeId right);
    static Node conj(std::vector<NodeId> children);
    static Node noop(NodeId child);
    static Node sink(bool value);

    NodeId lo() const { return children[0]; }
    NodeId hi() const { return children[1]; }
};

// A rooted DAG over a declared variable universe. The universe may strictly
// contain the tested variables: model counts over N variables stay
// well-defined even when the DAG omits some of them.
//
// CircuitDag values are treated as immutable once built; every operation
// below returns a fresh DAG rather than mutating its input.
struct CircuitDag {
    std::vector<Node> nodes;
    NodeId root = kNoNode;
    std::vector<Var> universe; // sorted, unique
    Flavor flavor = Flavor::DecisionDnnf;

    NodeId add(Node n) {
        nodes.push_back(std::move(n));
        return static_cast<NodeId>(nodes.size() - 1);
    }

    std::size_t node_count() const { return nodes.size(); }
    const Node& node(NodeId id) const { return nodes[id]; }
    bool in_universe(Var x) const;
};

// Universe = {1..n}.
std::vector<Var> dense_universe(std::uint32_t n);

// Single-sink DAG.
CircuitDag sink_dag(bool value, std::vector<Var> universe, Flavor flavor);

// Children-before-parents order over all nodes, or nullopt if the graph has
// a cycle.
std::optional<std::vector<NodeId>> topological_order(const CircuitDag& dag);

// Nodes reachable from the root.
std::vector<bool> reachable_from_root(const CircuitDag& dag);

// Per-node sets of variables tested by decision nodes in the sub-DAG.
// Backed by one flat bitset; answers the containment and disjointness
// queries validation needs in O(universe/64).
class VarSets {
public:
    // Throws Error if the graph is cyclic.
    static VarSets below(const CircuitDag& dag);

    bool contains(NodeId node, Var x) const;
    bool disjoint(NodeId a, NodeId b) const;
    std::optional<Var> first_common(NodeId a, NodeId b) const;
    std::vector<Var> vars(NodeId node) const; // sorted

private:
    std::size_t words_ = 0;
    std::vector<Var> slot_to_var_;
    std::unordered_map<Var, std::size_t> var_to_slot_;
    std::vector<std::uint64_t> bits_; // node-major
};

enum class Rule : std::uint8_t {
    RootRef,         // root is not a valid node id
    ChildRef,        // child reference out of range
    Arity,           // wrong number of children for the node kind
    UnknownVar,      // decision variable outside the declared universe
    Cycle,           // graph is not acyclic
    FlavorKind,      // node kind not allowed by the declared flavor
    ReadOnce,        // some path tests a variable twice
    Decomposability, // AND children share a variable
};

const char* rule_name(Rule r);

struct Violation {
    Rule rule;
    NodeId node = kNoNode;  // offending node
    NodeId other = kNoNode; // second witness node, if any
    Var var = 0;            // witness variable, if any
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string to_string() const;
};

// Structural validation: acyclicity, flavor-specific node kinds, read-once,
// and (for decision-DNNFs) decomposability at every AND node. Violations are
// reported, never thrown.
//
// Read-once is checked with the descendant-variable criterion: a decision
// node on X with X in vars_below of either child. Every descendant is
// path-reachable, so any such hit yields a doubly-testing path, and
// conversely.
ValidationReport validate(const CircuitDag& dag);

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report)
        : Error("validation failed:\n" + report.to_string()), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Enforce the two normal-form assumptions the conversion relies on: every
// AND node has exactly two children (n-ary ANDs become a right-deep chain in
// the given child order) and every 1-sink has at most one incoming edge
// (duplicated per edge). Output is rebuilt in BFS order, so the operation is
// structurally idempotent. Rejects inputs that do not validate as
// decision-DNNFs by throwing ValidationError.
CircuitDag normalize(const CircuitDag& dag);

// Remove no-op nodes by redirecting every edge into a no-op to its
// transitive non-no-op target. Unreachable nodes are dropped. Throws Error
// on a no-op cycle.
CircuitDag eliminate_noops(const CircuitDag& dag);

// Order-sensitive structural fingerprint of the reachable sub-DAG (node
// kinds, labels, child wiring, root). Universe is not included.
std::string canonical_signature(const CircuitDag& dag);

inline bool isomorphic(const CircuitDag& a, const CircuitDag& b) {
    return canonical_signature(a) == canonical_signature(b);
}

} // namespace kc
