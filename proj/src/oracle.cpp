#include "kc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace kc {

Assignment::Assignment(std::vector<Var> universe_sorted)
    : vars_(std::move(universe_sorted)), vals_(vars_.size(), 0) {}

Assignment Assignment::from_index(std::span<const Var> universe_sorted, std::uint64_t index) {
    Assignment a(std::vector<Var>(universe_sorted.begin(), universe_sorted.end()));
    const std::size_t n = a.vars_.size();
    for (std::size_t i = 0; i < n; ++i)
        a.vals_[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1);
    return a;
}

bool Assignment::value(Var x) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it == vars_.end() || *it != x)
        throw Error("assignment: variable " + std::to_string(x) + " is not assigned");
    return vals_[static_cast<std::size_t>(it - vars_.begin())] != 0;
}

void Assignment::set(Var x, bool v) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it == vars_.end() || *it != x) {
        std::size_t pos = static_cast<std::size_t>(it - vars_.begin());
        vars_.insert(it, x);
        vals_.insert(vals_.begin() + static_cast<std::ptrdiff_t>(pos), v ? 1 : 0);
    } else {
        vals_[static_cast<std::size_t>(it - vars_.begin())] = v ? 1 : 0;
    }
}

std::string Assignment::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << " ";
        os << vars_[i] << "=" << int(vals_[i]);
    }
    return os.str();
}

bool eval(const CircuitDag& dag, const Assignment& a) {
    auto order = topological_order(dag);
    if (!order) throw Error("eval: graph has a cycle");
    std::vector<std::uint8_t> value(dag.nodes.size(), 0);
    for (NodeId u : *order) {
        const Node& n = dag.nodes[u];
        switch (n.kind) {
        case NodeKind::Sink: value[u] = n.value; break;
        case NodeKind::NoOp: value[u] = value[n.children[0]]; break;
        case NodeKind::Decision:
            value[u] = value[a.value(n.var) ? n.hi() : n.lo()];
            break;
        case NodeKind::And: {
            std::uint8_t v = 1;
            for (NodeId c : n.children) v &= value[c];
            value[u] = v;
            break;
        }
        }
    }
    return value[dag.root] != 0;
}

bool eval(const DnfFormula& f, const Assignment& a) {
    for (const auto& term : f.terms) {
        bool sat = true;
        for (Literal l : term) {
            if (a.value(lit_var(l)) != lit_positive(l)) {
                sat = false;
                break;
            }
        }
        if (sat) return true;
    }
    return false;
}

bool eval(const CnfFormula& f, const Assignment& a) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (Literal l : clause) {
            if (a.value(lit_var(l)) == lit_positive(l)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

namespace {

// Word-parallel enumeration: one 64-bit lane per assignment, in
// lexicographic order. Bit t of block b is assignment number b*64+t;
// variable i of the sorted universe corresponds to bit (n-1-i) of the
// assignment number.
constexpr std::uint64_t kAlt[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t var_lane(std::size_t pos, std::size_t n, std::uint64_t block) {
    std::size_t b = n - 1 - pos; // bit of the assignment number
    if (b < 6) return kAlt[b];
    return ((block >> (b - 6)) & 1) ? ~0ull : 0ull;
}

struct Blocks {
    std::uint64_t count;     // number of 64-lane blocks
    std::uint64_t last_mask; // valid lanes in the final block
};

Blocks blocks_for(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw Error("oracle: universe of " + std::to_string(n) +
                    " variables exceeds the enumeration cap of " + std::to_string(cap));
    if (n >= 6) return {1ull << (n - 6), ~0ull};
    return {1, (1ull << (1ull << n)) - 1};
}

// Evaluates all 64 assignments of one block at once over a DAG.
class DagLanes {
public:
    explicit DagLanes(const CircuitDag& dag) : dag_(dag) {
        auto order = topological_order(dag);
        if (!order) throw Error("oracle: graph has a cycle");
        order_ = std::move(*order);
        value_.resize(dag.nodes.size());
        var_pos_.resize(dag.nodes.size());
        for (NodeId u = 0; u < dag.nodes.size(); ++u) {
            const Node& n = dag.nodes[u];
            if (n.kind != NodeKind::Decision) continue;
            auto it = std::lower_bound(dag.universe.begin(), dag.universe.end(), n.var);
            if (it == dag.universe.end() || *it != n.var)
                throw Error("oracle: tested variable " + std::to_string(n.var) +
                            " not in universe");
            var_pos_[u] = static_cast<std::size_t>(it - dag.universe.begin());
        }
    }

    std::uint64_t block(std::uint64_t b) {
        const std::size_t n = dag_.universe.size();
        for (NodeId u : order_) {
            const Node& node = dag_.nodes[u];
            switch (node.kind) {
            case NodeKind::Sink:
                value_[u] = node.value ? ~0ull : 0;
                break;
            case NodeKind::NoOp:
                value_[u] = value_[node.children[0]];
                break;
            case NodeKind::Decision: {
                std::uint64_t x = var_lane(var_pos_[u], n, b);
                value_[u] = (~x & value_[node.lo()]) | (x & value_[node.hi()]);
                break;
            }
            case NodeKind::And: {
                std::uint64_t v = ~0ull;
                for (NodeId c : node.children) v &= value_[c];
                value_[u] = v;
                break;
            }
            }
        }
        return value_[dag_.root];
    }

private:
    const CircuitDag& dag_;
    std::vector<NodeId> order_;
    std::vector<std::uint64_t> value_;
    std::vector<std::size_t> var_pos_;
};

// Same interface for flat formulas.
class TermLanes {
public:
    TermLanes(const std::vector<std::vector<Literal>>& groups, const std::vector<Var>& universe,
              bool conjunction_of_groups)
        : groups_(groups), universe_(universe), cnf_(conjunction_of_groups) {
        for (const auto& g : groups)
            for (Literal l : g)
                if (!std::binary_search(universe.begin(), universe.end(), lit_var(l)))
                    throw Error("oracle: literal over variable " + std::to_string(lit_var(l)) +
                                " not in universe");
    }

    std::uint64_t block(std::uint64_t b) const {
        const std::size_t n = universe_.size();
        std::uint64_t acc = cnf_ ? ~0ull : 0;
        for (const auto& g : groups_) {
            std::uint64_t gv = cnf_ ? 0 : ~0ull;
            for (Literal l : g) {
                auto it = std::lower_bound(universe_.begin(), universe_.end(), lit_var(l));
                std::uint64_t x =
                    var_lane(static_cast<std::size_t>(it - universe_.begin()), n, b);
                if (!lit_positive(l)) x = ~x;
                if (cnf_)
                    gv |= x;
                else
                    gv &= x;
            }
            if (cnf_)
                acc &= gv;
            else
                acc |= gv;
        }
        return acc;
    }

private:
    const std::vector<std::vector<Literal>>& groups_;
    const std::vector<Var>& universe_;
    bool cnf_;
};

template <class Fn>
ModelCount count_blocks(const std::vector<Var>& universe, std::size_t cap, Fn&& fn) {
    auto [nblocks, last_mask] = blocks_for(universe.size(), cap);
    BigInt total = 0;
    std::uint64_t run = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        std::uint64_t mask = (b + 1 == nblocks) ? last_mask : ~0ull;
        run += static_cast<std::uint64_t>(std::popcount(fn(b) & mask));
        if ((b & 0xffffff) == 0xffffff) { // flush periodically to avoid overflow
            total += run;
            run = 0;
        }
    }
    total += run;
    return {total, universe.size()};
}

template <class FnA, class FnB>
EquivResult diff_blocks(const std::vector<Var>& universe, std::size_t cap, FnA&& fa, FnB&& fb) {
    auto [nblocks, last_mask] = blocks_for(universe.size(), cap);
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        std::uint64_t mask = (b + 1 == nblocks) ? last_mask : ~0ull;
        std::uint64_t d = (fa(b) ^ fb(b)) & mask;
        if (d) {
            std::uint64_t index = b * 64 + static_cast<std::uint64_t>(std::countr_zero(d));
            return {false, Assignment::from_index(universe, index)};
        }
    }
    return {true, std::nullopt};
}

void require_same_universe(const std::vector<Var>& a, const std::vector<Var>& b) {
    if (a != b) throw Error("oracle: operands declare different universes");
}

} // namespace

ModelCount brute_count(const CircuitDag& dag, std::size_t cap) {
    DagLanes lanes(dag);
    return count_blocks(dag.universe, cap, [&](std::uint64_t b) { return lanes.block(b); });
}

ModelCount brute_count(const DnfFormula& f, std::size_t cap) {
    TermLanes lanes(f.terms, f.universe, false);
    return count_blocks(f.universe, cap, [&](std::uint64_t b) { return lanes.block(b); });
}

ModelCount brute_count(const CnfFormula& f, std::size_t cap) {
    TermLanes lanes(f.clauses, f.universe, true);
    return count_blocks(f.universe, cap, [&](std::uint64_t b) { return lanes.block(b); });
}

ModelCount brute_count(std::span<const Var> universe,
                       const std::function<bool(const Assignment&)>& fn, std::size_t cap) {
    std::vector<Var> u(universe.begin(), universe.end());
    if (u.size() > cap)
        throw Error("oracle: universe of " + std::to_string(u.size()) +
                    " variables exceeds the enumeration cap of " + std::to_string(cap));
    BigInt total = 0;
    const std::uint64_t end = 1ull << u.size();
    for (std::uint64_t i = 0; i < end; ++i)
        if (fn(Assignment::from_index(u, i))) ++total;
    return {total, u.size()};
}

EquivResult equivalent(const CircuitDag& f, const CircuitDag& g, std::size_t cap) {
    require_same_universe(f.universe, g.universe);
    DagLanes la(f), lb(g);
    return diff_blocks(
        f.universe, cap, [&](std::uint64_t b) { return la.block(b); },
        [&](std::uint64_t b) { return lb.block(b); });
}

EquivResult equivalent(const DnfFormula& f, const CircuitDag& g, std::size_t cap) {
    require_same_universe(f.universe, g.universe);
    TermLanes la(f.terms, f.universe, false);
    DagLanes lb(g);
    return diff_blocks(
        f.universe, cap, [&](std::uint64_t b) { return la.block(b); },
        [&](std::uint64_t b) { return lb.block(b); });
}

EquivResult equivalent(const CnfFormula& f, const CircuitDag& g, std::size_t cap) {
    require_same_universe(f.universe, g.universe);
    TermLanes la(f.clauses, f.universe, true);
    DagLanes lb(g);
    return diff_blocks(
        f.universe, cap, [&](std::uint64_t b) { return la.block(b); },
        [&](std::uint64_t b) { return lb.block(b); });
}

EquivResult equivalent_sampled(const CircuitDag& f, const CircuitDag& g, std::size_t samples,
                               std::uint64_t seed) {
    require_same_universe(f.universe, g.universe);
    std::mt19937_64 rng(seed);
    Assignment a(f.universe);
    for (std::size_t s = 0; s < samples; ++s) {
        for (Var x : f.universe) a.set(x, (rng() & 1) != 0);
        if (eval(f, a) != eval(g, a)) return {false, a};
    }
    return {true, std::nullopt};
}

} // namespace kc
