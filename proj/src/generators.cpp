#include "kc/generators.hpp"

#include "kc/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace kc {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool EdgeRelation::contains(std::uint32_t i, std::uint32_t j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
}

EdgeRelation gen_en(std::uint32_t p) {
    if (!is_prime(p)) throw Error("gen_en: " + std::to_string(p) + " is not prime");
    EdgeRelation e;
    e.n = p * p;
    for (std::uint32_t i = 0; i < e.n; ++i) {
        const std::uint32_t a = i % p, b = i / p;
        for (std::uint32_t j = 0; j < e.n; ++j) {
            const std::uint32_t c = j % p, d = j / p;
            if (c == (a + b * d) % p) e.pairs.emplace_back(i + 1, j + 1);
        }
    }
    return e;
}

DnfFormula gen_psi(std::uint32_t p) {
    EdgeRelation e = gen_en(p);
    DnfFormula f;
    f.universe = dense_universe(2 * e.n);
    for (auto [i, j] : e.pairs)
        f.add_term({static_cast<Literal>(i), static_cast<Literal>(e.n + j)});
    return f;
}

CnfFormula gen_psi_dual(std::uint32_t p) {
    EdgeRelation e = gen_en(p);
    CnfFormula f;
    f.universe = dense_universe(2 * e.n);
    for (auto [i, j] : e.pairs)
        f.add_clause({static_cast<Literal>(i), static_cast<Literal>(e.n + j)});
    return f;
}

DnfFormula gen_phi(std::uint32_t n) {
    if (n < 1) throw Error("gen_phi: n must be >= 1");
    DnfFormula f;
    f.universe = dense_universe(n * n + 2 * n);
    auto x = [&](std::uint32_t i) { return static_cast<Literal>(i); };
    auto z = [&](std::uint32_t i, std::uint32_t j) {
        return static_cast<Literal>(n + (i - 1) * n + j);
    };
    auto y = [&](std::uint32_t j) { return static_cast<Literal>(n + n * n + j); };
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) f.add_term({x(i), z(i, j), y(j)});
    return f;
}

DnfFormula gen_triangle(std::uint32_t n) {
    if (n < 1) throw Error("gen_triangle: n must be >= 1");
    auto z = [&](std::uint32_t i, std::uint32_t j) {
        return static_cast<Literal>((i - 1) * n + j);
    };
    std::set<std::vector<Literal>> seen;
    DnfFormula f;
    f.universe = dense_universe(n * n);
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j)
            for (std::uint32_t k = 1; k <= n; ++k) {
                std::vector<Literal> term{z(i, j), z(j, k), z(k, i)};
                std::sort(term.begin(), term.end());
                term.erase(std::unique(term.begin(), term.end()), term.end());
                if (seen.insert(term).second) f.terms.push_back(std::move(term));
            }
    return f;
}

bool gamma_eval(std::uint32_t n, const std::vector<std::uint8_t>& matrix) {
    if (matrix.size() != static_cast<std::size_t>(n) * n)
        throw Error("gamma_eval: matrix must be n x n");
    std::uint32_t ones = 0;
    for (std::uint8_t v : matrix) ones += (v != 0);
    const bool even = (ones % 2) == 0;
    auto at = [&](std::uint32_t r, std::uint32_t c) { return matrix[r * n + c] != 0; };
    if (even) {
        for (std::uint32_t r = 0; r < n; ++r) {
            bool all = true;
            for (std::uint32_t c = 0; c < n && all; ++c) all = at(r, c);
            if (all) return true;
        }
    } else {
        for (std::uint32_t c = 0; c < n; ++c) {
            bool all = true;
            for (std::uint32_t r = 0; r < n && all; ++r) all = at(r, c);
            if (all) return true;
        }
    }
    return false;
}

namespace {

// Blocks are numbered like a binary heap: block 1 is the root, block b has
// children 2b and 2b+1, bottom blocks are those with 2b > m.
struct TightBuilder {
    std::uint32_t p;
    std::uint32_t m;
    CircuitDag dag;
    NodeId sink0, sink1;
    Var next_white;

    // decision[b][i], and_node[b][i] for 1-based b and i
    std::vector<std::vector<NodeId>> decision;
    std::vector<std::vector<NodeId>> and_node;

    explicit TightBuilder(std::uint32_t p_) : p(p_), m((1u << p_) - 1) {
        dag.flavor = Flavor::DecisionDnnf;
        sink0 = dag.add(Node::sink(false));
        sink1 = dag.add(Node::sink(true));
        next_white = m * m + 1;
        decision.assign(m + 1, {});
        and_node.assign(m + 1, {});
    }

    Var block_var(std::uint32_t b, std::uint32_t i) const { return (b - 1) * m + i; }

    NodeId white_box() {
        Var v = next_white++;
        return dag.add(Node::decision(v, sink0, sink1));
    }

    void build_block(std::uint32_t b) {
        const bool bottom = 2 * b > m;
        auto& ands = and_node[b];
        ands.resize(m + 2, kNoNode);
        for (std::uint32_t i = 1; i <= m; ++i) {
            NodeId left = bottom ? white_box() : decision[2 * b][i];
            NodeId right = bottom ? white_box() : decision[2 * b + 1][i];
            ands[i] = dag.add(Node::conj(left, right));
        }
        {
            NodeId left = bottom ? white_box() : and_node[2 * b][m + 1];
            NodeId right = bottom ? white_box() : and_node[2 * b + 1][m + 1];
            ands[m + 1] = dag.add(Node::conj(left, right));
        }
        auto& decs = decision[b];
        decs.resize(m + 1, kNoNode);
        for (std::uint32_t i = m; i >= 1; --i) {
            NodeId cont = (i == m) ? ands[m + 1] : decs[i + 1];
            decs[i] = dag.add(Node::decision(block_var(b, i), cont, ands[i]));
        }
    }
};

} // namespace

CircuitDag gen_tight_example(std::uint32_t p) {
    if (p < 1) throw Error("gen_tight_example: p must be >= 1");
    if (p > 12) throw Error("gen_tight_example: p too large");
    TightBuilder tb(p);
    for (std::uint32_t b = tb.m; b >= 1; --b) tb.build_block(b);
    tb.dag.root = tb.decision[1][1];
    tb.dag.universe = dense_universe(tb.next_white - 1);
    return tb.dag;
}

Var tight_example_final_var(std::uint32_t p) {
    const std::uint32_t m = (1u << p) - 1;
    const std::uint32_t leftmost_bottom = 1u << (p - 1);
    return (leftmost_bottom - 1) * m + m;
}

std::uint64_t tight_example_and_count(std::uint32_t p) {
    const std::uint64_t m = (1ull << p) - 1;
    return m * (m + 1);
}

DnfFormula gen_random_monotone_dnf(std::uint32_t n_vars, std::uint32_t n_terms, std::uint32_t k,
                                   std::uint64_t seed) {
    if (k < 1 || k > n_vars)
        throw Error("gen_random_monotone_dnf: need 1 <= k <= n_vars");
    std::mt19937_64 rng(seed);
    std::vector<Var> pool = dense_universe(n_vars);
    std::set<std::vector<Literal>> seen;
    DnfFormula f;
    f.universe = dense_universe(n_vars);
    std::size_t attempts = 0;
    const std::size_t max_attempts = static_cast<std::size_t>(n_terms) * 20 + 100;
    while (seen.size() < n_terms && attempts++ < max_attempts) {
        // partial Fisher-Yates: first k entries become the term
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::uint32_t> dist(i, n_vars - 1);
            std::swap(pool[i], pool[dist(rng)]);
        }
        std::vector<Literal> term;
        term.reserve(k);
        for (std::uint32_t i = 0; i < k; ++i) term.push_back(static_cast<Literal>(pool[i]));
        std::sort(term.begin(), term.end());
        if (seen.insert(term).second) f.terms.push_back(std::move(term));
    }
    return f;
}

} // namespace kc
