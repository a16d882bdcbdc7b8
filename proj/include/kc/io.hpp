#pragma once

#include "kc/circuit.hpp"
#include "kc/counting.hpp"
#include "kc/formula.hpp"
#include "kc/lineage.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace kc {

// c2d-style NNF text. Header "nnf <nodes> <edges> <vars>", then one node per
// line: "L <lit>", "A <n> <children...>", "O <var> <n> <children...>", root
// last, children referring to earlier lines. OR nodes are accepted only in
// decision form (x and A) or (not-x and B) and are rewritten to decision
// nodes; "A 0" is the true node and "O 0 0" the false node. Literal lines
// fold into one-decision nodes over shared sinks.
CircuitDag parse_nnf(std::string_view text);
std::string write_nnf(const CircuitDag& dag);

// FBDD text: one node per line, "D <var> <lo> <hi>" or "S 0|1", children
// referring to earlier lines (0-based), root last. The universe is taken to
// be 1..max tested variable; the format carries structure only.
CircuitDag parse_fbdd(std::string_view text);
std::string write_fbdd(const CircuitDag& dag);

// DIMACS CNF, and the same shape with header "p dnf" for DNF files.
CnfFormula parse_cnf_file(std::string_view text);
std::string write_cnf_file(const CnfFormula& f);
DnfFormula parse_dnf_file(std::string_view text);
std::string write_dnf_file(const DnfFormula& f);

// Weights CSV: one "<var>,<probability>" pair per line, optional
// "var,probability" header. Universe variables without an entry default to
// 1/2 with a warning on `warn`.
WeightsExact parse_weights_csv(std::string_view text, const std::vector<Var>& universe,
                               std::ostream& warn);

// Query text: disjuncts separated by '|', each "exists x y : R(x), S(x,y)"
// (the exists clause may be omitted for ground queries); constants are
// single-quoted.
UcqQuery parse_query(std::string_view text);
std::string write_query(const UcqQuery& q);

// Database text: "relation <name> <arity>" introduces a relation, each
// following line is one tuple: <arity> constants and a probability.
DatabaseInstance parse_database(std::string_view text);
std::string write_database(const DatabaseInstance& db);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace kc
