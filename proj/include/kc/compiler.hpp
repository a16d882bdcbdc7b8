#pragma once

#include "kc/circuit.hpp"
#include "kc/formula.hpp"

namespace kc {

// A small DPLL-style knowledge compiler: branch on a variable, split
// variable-disjoint components under binary AND nodes, cache residual
// formulas so shared sub-DAGs are reused. The output validates as a
// decision-DNNF and is equivalent to the input formula.

enum class Heuristic {
    FixedOrder,      // branch on the smallest variable index present
    MostFrequentVar, // branch on the most frequent variable (ties: smallest)
};

struct CompileOptions {
    Heuristic heuristic = Heuristic::FixedOrder;
    bool use_cache = true; // disabling must not change the result's function
};

CircuitDag compile(const DnfFormula& f, const CompileOptions& opts = {});
CircuitDag compile(const CnfFormula& f, const CompileOptions& opts = {});

struct MonotoneKdnf {
    bool monotone = false;
    std::uint32_t width = 0; // size of the largest prime implicant for monotone inputs
};

// monotone = no negated literals; width = max term size after dropping
// subsumed terms, so it reflects prime implicants for monotone formulas.
MonotoneKdnf is_monotone_kdnf(const DnfFormula& f);

} // namespace kc
