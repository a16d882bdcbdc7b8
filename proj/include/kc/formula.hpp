#pragma once

#include "kc/circuit.hpp"

#include <cstdint>
#include <vector>

namespace kc {

// A literal is +v for the variable v and -v for its negation.
using Literal = std::int32_t;

inline Var lit_var(Literal l) { return static_cast<Var>(l < 0 ? -l : l); }
inline bool lit_positive(Literal l) { return l > 0; }

// Variable-major literal order; terms and clauses are kept sorted by it.
inline bool lit_less(Literal a, Literal b) {
    if (lit_var(a) != lit_var(b)) return lit_var(a) < lit_var(b);
    return a < b;
}

// Flat DNF: a disjunction of terms, each term a conjunction of literals.
struct DnfFormula {
    std::vector<std::vector<Literal>> terms; // each term sorted by variable
    std::vector<Var> universe;               // sorted, unique

    // Sorts the term by variable index and drops duplicate literals.
    void add_term(std::vector<Literal> term);

    bool monotone() const;        // no negative literals anywhere
    std::uint32_t width() const;  // max term size (k)
    bool has_empty_term() const;  // an empty term makes the formula true
};

// Flat CNF: a conjunction of clauses.
struct CnfFormula {
    std::vector<std::vector<Literal>> clauses;
    std::vector<Var> universe;

    void add_clause(std::vector<Literal> clause);
    bool has_empty_clause() const;
};

// True if the term contains both a variable and its negation.
bool term_contradictory(const std::vector<Literal>& term);

// Canonical form: sorted, de-duplicated term/clause list.
std::vector<std::vector<Literal>> canonical_terms(std::vector<std::vector<Literal>> terms);

} // namespace kc
