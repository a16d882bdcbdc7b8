#pragma once

#include "kc/circuit.hpp"
#include "kc/numeric.hpp"

#include <map>

namespace kc {

// Exact number of satisfying assignments over a declared universe.
struct ModelCount {
    BigInt count;
    std::size_t universe_size = 0;

    bool operator==(const ModelCount& o) const {
        return count == o.count && universe_size == o.universe_size;
    }
};

// Independent success probabilities per variable, in [0,1].
using WeightsExact = std::map<Var, BigRat>;
using WeightsApprox = std::map<Var, double>;

WeightsExact uniform_weights(const std::vector<Var>& universe); // all 1/2
WeightsApprox to_approx(const WeightsExact& w);

// Bottom-up probability DP over an FBDD (no-op nodes allowed):
//   v(decision on X) = (1 - p(X)) v(lo) + p(X) v(hi)
// Linear in the number of nodes. Throws if a tested variable has no weight
// or if an AND node is present.
double prob_fbdd(const CircuitDag& dag, const WeightsApprox& w);
BigRat prob_fbdd(const CircuitDag& dag, const WeightsExact& w);

// Same DP extended to decision-DNNFs: decomposability makes AND nodes
// multiplicative, v(and) = v(left) v(right).
double prob_dnnf(const CircuitDag& dag, const WeightsApprox& w);
BigRat prob_dnnf(const CircuitDag& dag, const WeightsExact& w);

// Exact model count over dag.universe:
//   c(1-sink) = 2^|U|, c(0-sink) = 0, c(decision) = (c(lo) + c(hi)) / 2
// Every division is exact because children omit the tested variable; an
// inexact division signals a non-read-once DAG and raises InternalError.
ModelCount count_fbdd(const CircuitDag& dag);

// Adds c(and) = c(left) c(right) / 2^|U| with the same exactness check.
ModelCount count_dnnf(const CircuitDag& dag);

} // namespace kc
