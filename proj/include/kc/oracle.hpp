#pragma once

#include "kc/circuit.hpp"
#include "kc/counting.hpp"
#include "kc/formula.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace kc {

// Brute-force ground truth, independent of the DP evaluators: evaluate under
// an assignment, enumerate all assignments, compare functions.

// A total assignment over a declared universe.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<Var> universe_sorted);

    // Assignment number `index` in lexicographic order: the values
    // (a(v1), a(v2), ...) for the sorted universe v1 < v2 < ... are the bits
    // of `index` from most significant down. Index 0 is all-zeros.
    static Assignment from_index(std::span<const Var> universe_sorted, std::uint64_t index);

    bool value(Var x) const; // throws Error if x is not assigned
    void set(Var x, bool v);
    const std::vector<Var>& vars() const { return vars_; }
    std::string to_string() const;

private:
    std::vector<Var> vars_; // sorted
    std::vector<std::uint8_t> vals_;
};

// Follow the assignment through the DAG: decisions branch, AND nodes
// conjoin, no-ops pass through, sinks return their label.
bool eval(const CircuitDag& dag, const Assignment& a);
bool eval(const DnfFormula& f, const Assignment& a);
bool eval(const CnfFormula& f, const Assignment& a);

inline constexpr std::size_t kDefaultOracleCap = 24;

// Exhaustive enumeration of all 2^|universe| assignments. Refuses universes
// beyond the cap.
ModelCount brute_count(const CircuitDag& dag, std::size_t cap = kDefaultOracleCap);
ModelCount brute_count(const DnfFormula& f, std::size_t cap = kDefaultOracleCap);
ModelCount brute_count(const CnfFormula& f, std::size_t cap = kDefaultOracleCap);

// Black-box oracle for functions with no small formula (e.g. the row/column
// matrix tests).
ModelCount brute_count(std::span<const Var> universe,
                       const std::function<bool(const Assignment&)>& fn,
                       std::size_t cap = kDefaultOracleCap);

struct EquivResult {
    bool ok = false;
    std::optional<Assignment> counterexample; // lexicographically first difference
};

// Both sides must declare the same universe.
EquivResult equivalent(const CircuitDag& f, const CircuitDag& g,
                       std::size_t cap = kDefaultOracleCap);
EquivResult equivalent(const DnfFormula& f, const CircuitDag& g,
                       std::size_t cap = kDefaultOracleCap);
EquivResult equivalent(const CnfFormula& f, const CircuitDag& g,
                       std::size_t cap = kDefaultOracleCap);

// Deterministic sample of assignments (for DAGs too large to enumerate):
// returns the first disagreement found among `samples` seeded draws.
EquivResult equivalent_sampled(const CircuitDag& f, const CircuitDag& g,
                               std::size_t samples, std::uint64_t seed);

} // namespace kc
