#pragma once

#include "kc/formula.hpp"
#include "kc/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kc {

// The probabilistic-database layer: relational instances with one Boolean
// variable per tuple, union-of-conjunctive-queries, lineage grounding, and
// the hierarchical-query test.

struct TupleRef {
    std::uint32_t relation = 0; // index into DatabaseInstance::relations
    std::uint32_t row = 0;

    bool operator<(const TupleRef& o) const {
        return relation != o.relation ? relation < o.relation : row < o.row;
    }
    bool operator==(const TupleRef& o) const {
        return relation == o.relation && row == o.row;
    }
};

struct Relation {
    std::string name;
    std::uint32_t arity = 0;
    std::vector<std::vector<std::string>> rows; // sorted lexicographically
    std::vector<Var> vars;                      // parallel to rows
    std::vector<BigRat> probs;                  // parallel to rows
};

struct DatabaseInstance {
    std::vector<std::string> domain;  // sorted constants
    std::vector<Relation> relations;  // declaration order

    // Sorts rows, numbers tuple variables relation-by-relation then
    // lexicographically, and collects the domain from all tuple fields.
    // Call once after the rows are in place.
    void finalize();

    const Relation* find_relation(const std::string& name) const;
    std::optional<std::uint32_t> find_row(const Relation& rel,
                                          const std::vector<std::string>& values) const;
    std::uint32_t tuple_count() const;
};

struct Atom {
    struct Arg {
        bool is_variable = false;
        std::string text; // variable name or constant
    };
    std::string relation;
    std::vector<Arg> args;
};

struct ConjunctiveQuery {
    std::vector<std::string> variables; // declaration order
    std::vector<Atom> atoms;
};

// Q = Q1 v ... v Qm; queries are assumed minimized.
struct UcqQuery {
    std::vector<ConjunctiveQuery> disjuncts;
};

struct Grounding {
    DnfFormula lineage;                                 // monotone DNF over tuple variables
    std::map<std::vector<Literal>, std::vector<TupleRef>> provenance; // term -> tuples
};

// Inductive grounding: a ground atom becomes its tuple variable (false and
// term-dropping if the tuple is absent), conjunction inside a CQ,
// disjunction across substitutions and disjuncts. Duplicate terms are
// removed; the result mentions exactly the surviving tuple variables.
// Throws Error on an unknown relation or an arity mismatch.
Grounding ground(const UcqQuery& q, const DatabaseInstance& db);

struct HierarchicalWitness {
    std::size_t disjunct = 0;
    std::string x, y;
};

struct HierarchicalResult {
    bool hierarchical = false;
    std::optional<HierarchicalWitness> witness; // first offending pair
};

// Definition: for every pair of variables of every CQ, the atom sets
// containing them are nested or disjoint.
HierarchicalResult hierarchical(const UcqQuery& q);

// R = [n], S = [n] x [n], T = [n], all tuple probabilities 1/2.
DatabaseInstance gen_rst_db(std::uint32_t n);

// The non-hierarchical query exists x y : R(x), S(x,y), T(y) whose lineage
// over gen_rst_db(n) is exactly the 3-DNF family gen_phi(n).
UcqQuery rst_query();

// Probability of the query's lineage under the per-tuple probabilities:
// ground -> compile -> convert -> FBDD probability, cross-checked against
// the decision-DNNF probability of the compiled form.
BigRat query_prob_exact(const UcqQuery& q, const DatabaseInstance& db);
double query_prob(const UcqQuery& q, const DatabaseInstance& db);

} // namespace kc
