#pragma once

#include "kc/circuit.hpp"
#include "kc/numeric.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace kc {

// Translation of a normalized decision-DNNF into an equivalent FBDD via
// product nodes (u, s), where s is the set of light edges on the path that
// reached u.

enum class EdgeClass : std::uint8_t { Neutral, Light, Heavy };

// AND-node statistics. ands_below[u] is the number of distinct AND nodes in
// the sub-DAG rooted at u; max_light_depth is the largest number of light
// edges on any root-to-leaf path.
struct AndCounts {
    std::vector<std::uint32_t> ands_below;
    std::uint64_t total_ands = 0;      // M
    std::uint32_t max_light_depth = 0; // L
};

// A decision-DNNF with AND children ordered so the child with fewer AND
// descendants comes first, plus the induced edge classification: the first
// child edge of an AND is light, the second heavy, decision edges neutral.
// The input DAG is copied; callers never see their argument mutated.
struct ClassifiedDag {
    CircuitDag dag;
    std::vector<std::array<EdgeClass, 2>> edge_class; // per node, per child slot
    AndCounts counts;
};

// Requires a normalized decision-DNNF (binary ANDs). Ties in the AND counts
// keep the original child order.
ClassifiedDag classify_and_order(const CircuitDag& dag);

struct ConvertReport {
    std::uint64_t input_nodes = 0;          // N, node count of the normalized input
    std::uint64_t and_count = 0;            // M
    std::uint32_t light_depth = 0;          // L
    std::uint64_t out_nodes_with_noops = 0; // product nodes built
    std::uint64_t out_nodes_final = 0;      // after no-op elimination
    BigInt product_bound;                   // N * M^L (with 0^0 = 1)
    BigInt quasipoly_bound;                 // certified floor of N * 2^(log2 N)^2
};

// The FBDD-with-no-ops produced by the product construction, with the
// source node of every output node. Output node k corresponds to the pair
// (origin[k], light_edges[k]); light edges are identified by their AND node.
struct ProductFbdd {
    CircuitDag fbdd; // flavor FbddWithNoops
    std::vector<NodeId> origin;
    std::vector<std::vector<NodeId>> light_edges; // in path order
    ConvertReport report;                         // out_nodes_final not yet known
};

// Builds exactly the product nodes reachable from (root, {}), breadth-first,
// memoized on the pair. Edges:
//   light edge (u,v):    (u,s) -> (v, s + {e})
//   neutral edge (u,v):  (u,s) -> (v, s)
//   1-sink copy (w,s) with s nonempty: single edge to (v', s - {e}) where e
//     is the last light edge in s and v' the heavy child of e's AND node.
// Labels: decision -> decision on the same variable, AND -> no-op, 0-sink ->
// 0-sink, 1-sink -> 1-sink if s is empty else no-op.
//
// The traversal order of a light-edge set is path-independent on a DAG; the
// memo asserts this at runtime and raises InternalError on a mismatch.
ProductFbdd to_fbdd(const ClassifiedDag& dag);

struct ConvertResult {
    CircuitDag fbdd; // flavor Fbdd
    ConvertReport report;
};

// Full pipeline: normalize -> classify_and_order -> to_fbdd ->
// eliminate_noops. Propagates validation failures from normalize.
ConvertResult convert(const CircuitDag& dnnf);

// Largest number of AND nodes on any root-to-leaf path.
std::uint32_t max_ands_on_path(const CircuitDag& dag);

} // namespace kc
