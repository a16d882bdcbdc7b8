#include "kc/counting.hpp"

namespace kc {

WeightsExact uniform_weights(const std::vector<Var>& universe) {
    WeightsExact w;
    for (Var x : universe) w[x] = BigRat(1, 2);
    return w;
}

WeightsApprox to_approx(const WeightsExact& w) {
    WeightsApprox a;
    for (const auto& [x, q] : w) a[x] = rat_to_double(q);
    return a;
}

namespace {

template <class Num, class Weights>
Num prob_dp(const CircuitDag& dag, const Weights& w, bool allow_and) {
    auto order = topological_order(dag);
    if (!order) throw Error("prob: graph has a cycle");
    std::vector<Num> value(dag.nodes.size(), Num(0));
    for (NodeId u : *order) {
        const Node& n = dag.nodes[u];
        switch (n.kind) {
        case NodeKind::Sink:
            value[u] = Num(n.value ? 1 : 0);
            break;
        case NodeKind::NoOp:
            value[u] = value[n.children[0]];
            break;
        case NodeKind::Decision: {
            auto it = w.find(n.var);
            if (it == w.end())
                throw Error("prob: no weight for variable " + std::to_string(n.var));
            const Num& p = it->second;
            value[u] = (Num(1) - p) * value[n.lo()] + p * value[n.hi()];
            break;
        }
        case NodeKind::And: {
            if (!allow_and)
                throw Error("prob_fbdd: AND node present, use prob_dnnf");
            Num v = value[n.children[0]];
            for (std::size_t i = 1; i < n.children.size(); ++i) v *= value[n.children[i]];
            value[u] = v;
            break;
        }
        }
    }
    return value[dag.root];
}

// Counting with the divide-by-two normalization: every node value is the
// model count of its sub-function over the full universe.
BigInt count_dp(const CircuitDag& dag, bool allow_and) {
    auto order = topological_order(dag);
    if (!order) throw Error("count: graph has a cycle");
    const std::size_t u_size = dag.universe.size();
    for (const Node& n : dag.nodes)
        if (n.kind == NodeKind::Decision && !dag.in_universe(n.var))
            throw Error("count: tested variable " + std::to_string(n.var) +
                        " not in universe");

    std::vector<BigInt> value(dag.nodes.size());
    for (NodeId u : *order) {
        const Node& n = dag.nodes[u];
        switch (n.kind) {
        case NodeKind::Sink:
            value[u] = n.value ? pow2(u_size) : BigInt(0);
            break;
        case NodeKind::NoOp:
            value[u] = value[n.children[0]];
            break;
        case NodeKind::Decision: {
            BigInt sum = value[n.lo()] + value[n.hi()];
            if (mpz_odd_p(sum.get_mpz_t()))
                throw InternalError("count: inexact division by 2 (non-read-once DAG?)");
            value[u] = sum >> 1;
            break;
        }
        case NodeKind::And: {
            if (!allow_and) throw Error("count_fbdd: AND node present, use count_dnnf");
            BigInt prod = value[n.children[0]];
            for (std::size_t i = 1; i < n.children.size(); ++i) {
                prod *= value[n.children[i]];
                if (prod != 0 &&
                    mpz_scan1(prod.get_mpz_t(), 0) < static_cast<mp_bitcnt_t>(u_size))
                    throw InternalError(
                        "count: inexact division by 2^|U| (non-decomposable AND?)");
                prod >>= u_size;
            }
            value[u] = prod;
            break;
        }
        }
    }
    return value[dag.root];
}

} // namespace

double prob_fbdd(const CircuitDag& dag, const WeightsApprox& w) {
    return prob_dp<double>(dag, w, false);
}

BigRat prob_fbdd(const CircuitDag& dag, const WeightsExact& w) {
    return prob_dp<BigRat>(dag, w, false);
}

double prob_dnnf(const CircuitDag& dag, const WeightsApprox& w) {
    return prob_dp<double>(dag, w, true);
}

BigRat prob_dnnf(const CircuitDag& dag, const WeightsExact& w) {
    return prob_dp<BigRat>(dag, w, true);
}

ModelCount count_fbdd(const CircuitDag& dag) {
    return {count_dp(dag, false), dag.universe.size()};
}

ModelCount count_dnnf(const CircuitDag& dag) {
    return {count_dp(dag, true), dag.universe.size()};
}

} // namespace kc
