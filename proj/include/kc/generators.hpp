#pragma once

#include "kc/circuit.hpp"
#include "kc/formula.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace kc {

bool is_prime(std::uint32_t p);

// Edge relation over [n] x [n] with n = p^2, p prime, built from a modular
// congruence: (i+1, j+1) is included iff, writing i = a + bp and j = c + dp
// with 0 <= a,b,c,d < p, c = a + b*d (mod p). Its 2-DNF needs exponential
// FBDDs, which is what makes the families below hard.
struct EdgeRelation {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs; // sorted, 1-based

    bool contains(std::uint32_t i, std::uint32_t j) const;
};

// Throws Error if p is not prime.
EdgeRelation gen_en(std::uint32_t p);

// Psi_E = OR_{(i,j) in E} X_i Y_j, a monotone 2-DNF over 2n variables.
// X_i = i, Y_j = n + j.
DnfFormula gen_psi(std::uint32_t p);

// The dual CNF: AND_{(i,j) in E} (X_i or Y_j).
CnfFormula gen_psi_dual(std::uint32_t p);

// Phi_n = OR_{1<=i,j<=n} X_i Z_ij Y_j, a monotone 3-DNF over n^2 + 2n
// variables. X_i = i, Z_ij = n + (i-1)n + j, Y_j = n + n^2 + j.
DnfFormula gen_phi(std::uint32_t n);

// Delta_n = OR_{i,j,k} Z_ij Z_jk Z_ki over the n^2 variables
// Z_ij = (i-1)n + j. Terms are literal sets: repeated literals collapse and
// duplicate terms are kept once.
DnfFormula gen_triangle(std::uint32_t n);

// Gamma_n over an n x n 0/1 matrix (row-major): true iff the total parity is
// even and some row is all ones, or the parity is odd and some column is all
// ones. Provided as a black-box oracle; no small DNF exists.
bool gamma_eval(std::uint32_t n, const std::vector<std::uint8_t>& matrix);

// The block-tree decision-DNNF on which the conversion provably blows up:
// m = 2^p - 1 blocks of m decision variables and m+1 AND nodes each,
// arranged in a depth-p binary tree of blocks. The i-th AND node of block w
// descends to entry point i of blocks w0 and w1; the (m+1)-st AND node links
// the (m+1)-st AND nodes of w0 and w1. Below the last level every AND child
// is a fresh decision node whose 1-branch goes to a 1-sink and 0-branch to a
// 0-sink.
CircuitDag gen_tight_example(std::uint32_t p);

// The variable tested by the last decision node of the left-most bottom
// block; the conversion's copy count of that node is the blowup witness.
Var tight_example_final_var(std::uint32_t p);

// Number of AND nodes of the tight example, m(m+1).
std::uint64_t tight_example_and_count(std::uint32_t p);

// Deterministic random monotone DNF: exactly k distinct positive literals
// per term, duplicate terms dropped. Throws on infeasible parameters.
DnfFormula gen_random_monotone_dnf(std::uint32_t n_vars, std::uint32_t n_terms, std::uint32_t k,
                                   std::uint64_t seed);

} // namespace kc
