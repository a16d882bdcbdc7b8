#include "kc/compiler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace kc {

namespace {

// Residual formulas are canonical term/clause lists: terms sorted and
// de-duplicated, literals sorted within each term. Equal keys define equal
// functions over the same remaining variables.
using Residual = std::vector<std::vector<Literal>>;

struct ResidualHash {
    std::size_t operator()(const Residual& r) const {
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& t : r) {
            h = (h ^ 0x2545F4914F6CDD1Dull) * 1099511628211ull;
            for (Literal l : t)
                h = (h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(l))) *
                    1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

class Compiler {
public:
    Compiler(bool dnf, const CompileOptions& opts) : dnf_(dnf), opts_(opts) {
        sink_[0] = dag_.add(Node::sink(false));
        sink_[1] = dag_.add(Node::sink(true));
    }

    CircuitDag run(Residual input, std::vector<Var> universe) {
        dag_.universe = std::move(universe);
        dag_.flavor = Flavor::DecisionDnnf;
        dag_.root = build(std::move(input));
        return std::move(dag_);
    }

private:
    bool dnf_;
    CompileOptions opts_;
    CircuitDag dag_;
    NodeId sink_[2];
    std::unordered_map<Residual, NodeId, ResidualHash> cache_;

    // DNF: true if some term is empty, false if no terms remain.
    // CNF: false if some clause is empty, true if none remain.
    std::optional<bool> constant_of(const Residual& r) const {
        if (r.empty()) return !dnf_;
        for (const auto& g : r)
            if (g.empty()) return dnf_;
        return std::nullopt;
    }

    Residual assign(const Residual& r, Var x, bool v) const {
        Residual out;
        out.reserve(r.size());
        for (const auto& g : r) {
            std::vector<Literal> kept;
            kept.reserve(g.size());
            bool gone = false;
            for (Literal l : g) {
                if (lit_var(l) != x) {
                    kept.push_back(l);
                    continue;
                }
                const bool satisfied = (lit_positive(l) == v);
                // DNF term: a falsified literal kills the term, a satisfied
                // one is removed. CNF clause: a satisfied literal kills the
                // clause, a falsified one is removed.
                if (dnf_ ? !satisfied : satisfied) {
                    gone = true;
                    break;
                }
            }
            if (gone) continue;
            if (kept.empty()) return {{}}; // constant: empty term / empty clause
            out.push_back(std::move(kept));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    Var pick_var(const Residual& r) const {
        if (opts_.heuristic == Heuristic::FixedOrder) {
            Var best = 0;
            for (const auto& g : r)
                for (Literal l : g)
                    if (best == 0 || lit_var(l) < best) best = lit_var(l);
            return best;
        }
        std::map<Var, std::size_t> freq;
        for (const auto& g : r)
            for (Literal l : g) ++freq[lit_var(l)];
        Var best = 0;
        std::size_t best_count = 0;
        for (auto [x, c] : freq) {
            if (c > best_count) {
                best = x;
                best_count = c;
            }
        }
        return best;
    }

    NodeId literal_node(Literal l) {
        return dag_.add(lit_positive(l) ? Node::decision(lit_var(l), sink_[0], sink_[1])
                                        : Node::decision(lit_var(l), sink_[1], sink_[0]));
    }

    // DNF conjunctive decomposition: literals present in every term factor
    // out, f = l1 ... lk ∧ f' where f' no longer mentions their variables
    // (a contradictory occurrence would have made a term contradictory).
    // Covers the one-term case: a lone term is the conjunction of its
    // literals. Variable-disjoint *term groups*, by contrast, are a
    // disjunction and cannot be joined under an AND node.
    std::vector<Literal> common_literals(const Residual& r) const {
        std::vector<Literal> common = r[0];
        for (std::size_t i = 1; i < r.size() && !common.empty(); ++i) {
            std::vector<Literal> kept;
            std::set_intersection(common.begin(), common.end(), r[i].begin(), r[i].end(),
                                  std::back_inserter(kept), lit_less);
            common = std::move(kept);
        }
        return common;
    }

    Residual strip_literals(const Residual& r, const std::vector<Literal>& lits) const {
        Residual out;
        out.reserve(r.size());
        for (const auto& g : r) {
            std::vector<Literal> kept;
            std::set_difference(g.begin(), g.end(), lits.begin(), lits.end(),
                                std::back_inserter(kept), lit_less);
            out.push_back(std::move(kept));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // CNF conjunctive decomposition: union-find over variables sharing a
    // clause; variable-disjoint clause groups are independent conjuncts.
    std::vector<Residual> cnf_components(const Residual& r) const {
        std::map<Var, Var> parent;
        std::function<Var(Var)> find = [&](Var x) {
            auto it = parent.find(x);
            if (it->second == x) return x;
            return it->second = find(it->second);
        };
        for (const auto& g : r)
            for (Literal l : g) parent.emplace(lit_var(l), lit_var(l));
        for (const auto& g : r)
            for (std::size_t i = 1; i < g.size(); ++i) {
                Var a = find(lit_var(g[0])), b = find(lit_var(g[i]));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        std::map<Var, Residual> by_root; // root is the smallest variable
        for (const auto& g : r) by_root[find(lit_var(g[0]))].push_back(g);
        std::vector<Residual> out;
        for (auto& [root, group] : by_root) out.push_back(std::move(group));
        return out;
    }

    NodeId conj_chain(const std::vector<NodeId>& parts) {
        NodeId tail = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;)
            tail = dag_.add(Node::conj(parts[i], tail));
        return tail;
    }

    NodeId build(Residual r) {
        if (auto c = constant_of(r)) return sink_[*c ? 1 : 0];
        if (opts_.use_cache) {
            if (auto it = cache_.find(r); it != cache_.end()) return it->second;
        }
        NodeId result = kNoNode;
        if (r.size() == 1 && r[0].size() == 1) {
            // A unit clause in CNF and a unit term in DNF both denote the
            // bare literal.
            result = literal_node(r[0][0]);
        } else if (dnf_) {
            std::vector<Literal> common = common_literals(r);
            if (!common.empty()) {
                Residual rest = strip_literals(r, common);
                std::vector<NodeId> parts;
                for (Literal l : common) parts.push_back(build(Residual{{l}}));
                if (!constant_of(rest).value_or(false)) parts.push_back(build(std::move(rest)));
                result = parts.size() == 1 ? parts[0] : conj_chain(parts);
            }
        } else {
            std::vector<Residual> comps = cnf_components(r);
            if (comps.size() > 1) {
                std::vector<NodeId> parts;
                parts.reserve(comps.size());
                for (auto& c : comps) parts.push_back(build(std::move(c)));
                result = conj_chain(parts);
            }
        }
        if (result == kNoNode) {
            Var x = pick_var(r);
            NodeId lo = build(assign(r, x, false));
            NodeId hi = build(assign(r, x, true));
            result = dag_.add(Node::decision(x, lo, hi));
        }
        if (opts_.use_cache) cache_.emplace(std::move(r), result);
        return result;
    }
};

Residual initial_residual(const std::vector<std::vector<Literal>>& groups) {
    // A contradictory DNF term is identically false and a tautological CNF
    // clause identically true; both drop from the conjunction/disjunction.
    Residual r;
    r.reserve(groups.size());
    for (const auto& g : groups)
        if (!term_contradictory(g)) r.push_back(g);
    return canonical_terms(std::move(r));
}

} // namespace

CircuitDag compile(const DnfFormula& f, const CompileOptions& opts) {
    Compiler c(true, opts);
    return c.run(initial_residual(f.terms), f.universe);
}

CircuitDag compile(const CnfFormula& f, const CompileOptions& opts) {
    Compiler c(false, opts);
    return c.run(initial_residual(f.clauses), f.universe);
}

MonotoneKdnf is_monotone_kdnf(const DnfFormula& f) {
    MonotoneKdnf out;
    out.monotone = f.monotone();
    // Drop subsumed terms: a term containing another term's literal set is
    // redundant, so the width reflects prime implicants for monotone inputs.
    auto terms = canonical_terms(f.terms);
    std::vector<bool> dead(terms.size(), false);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (i == j || dead[j]) continue;
            if (std::includes(terms[j].begin(), terms[j].end(), terms[i].begin(),
                              terms[i].end(), lit_less))
                dead[j] = true;
        }
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (!dead[i]) k = std::max(k, terms[i].size());
    out.width = static_cast<std::uint32_t>(k);
    return out;
}

} // namespace kc
