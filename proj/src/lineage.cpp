#include "kc/lineage.hpp"

#include "kc/compiler.hpp"
#include "kc/convert.hpp"
#include "kc/counting.hpp"

#include <algorithm>
#include <set>

namespace kc {

void DatabaseInstance::finalize() {
    std::set<std::string> consts(domain.begin(), domain.end());
    Var next = 1;
    for (Relation& rel : relations) {
        // Sort rows with their attributes attached.
        std::vector<std::size_t> idx(rel.rows.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return rel.rows[a] < rel.rows[b];
        });
        std::vector<std::vector<std::string>> rows;
        std::vector<BigRat> probs;
        rows.reserve(idx.size());
        const bool have_probs = rel.probs.size() == rel.rows.size();
        for (std::size_t i : idx) {
            rows.push_back(rel.rows[i]);
            probs.push_back(have_probs ? rel.probs[i] : BigRat(1, 2));
        }
        rel.rows = std::move(rows);
        rel.probs = std::move(probs);
        rel.vars.resize(rel.rows.size());
        for (std::size_t i = 0; i < rel.rows.size(); ++i) {
            rel.vars[i] = next++;
            for (const std::string& c : rel.rows[i]) consts.insert(c);
        }
    }
    domain.assign(consts.begin(), consts.end());
}

const Relation* DatabaseInstance::find_relation(const std::string& name) const {
    for (const Relation& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

std::optional<std::uint32_t> DatabaseInstance::find_row(
    const Relation& rel, const std::vector<std::string>& values) const {
    auto it = std::lower_bound(rel.rows.begin(), rel.rows.end(), values);
    if (it == rel.rows.end() || *it != values) return std::nullopt;
    return static_cast<std::uint32_t>(it - rel.rows.begin());
}

std::uint32_t DatabaseInstance::tuple_count() const {
    std::uint32_t n = 0;
    for (const Relation& r : relations) n += static_cast<std::uint32_t>(r.rows.size());
    return n;
}

namespace {

void check_query(const UcqQuery& q, const DatabaseInstance& db) {
    for (const ConjunctiveQuery& cq : q.disjuncts) {
        for (const Atom& a : cq.atoms) {
            const Relation* rel = db.find_relation(a.relation);
            if (!rel) throw Error("ground: unknown relation '" + a.relation + "'");
            if (rel->arity != a.args.size())
                throw Error("ground: relation '" + a.relation + "' has arity " +
                            std::to_string(rel->arity) + ", atom has " +
                            std::to_string(a.args.size()) + " arguments");
        }
        for (const std::string& v : cq.variables) {
            bool used = false;
            for (const Atom& a : cq.atoms)
                for (const Atom::Arg& arg : a.args)
                    if (arg.is_variable && arg.text == v) used = true;
            if (!used)
                throw Error("ground: variable '" + v + "' occurs in no atom");
        }
    }
}

} // namespace

Grounding ground(const UcqQuery& q, const DatabaseInstance& db) {
    check_query(q, db);
    Grounding out;
    std::set<Var> mentioned;

    for (const ConjunctiveQuery& cq : q.disjuncts) {
        const std::size_t nvars = cq.variables.size();
        std::vector<std::size_t> sub(nvars, 0); // indices into db.domain
        const std::size_t domain_size = db.domain.size();
        if (domain_size == 0) continue;

        // Odometer over all substitutions; the big OR of rule (4).
        while (true) {
            std::vector<Literal> term;
            std::vector<TupleRef> tuples;
            bool alive = true;
            for (const Atom& a : cq.atoms) {
                const Relation* rel = db.find_relation(a.relation);
                std::vector<std::string> values;
                values.reserve(a.args.size());
                for (const Atom::Arg& arg : a.args) {
                    if (!arg.is_variable) {
                        values.push_back(arg.text);
                        continue;
                    }
                    auto it = std::find(cq.variables.begin(), cq.variables.end(), arg.text);
                    values.push_back(db.domain[sub[static_cast<std::size_t>(
                        it - cq.variables.begin())]]);
                }
                auto row = db.find_row(*rel, values);
                if (!row) { // absent tuple grounds to false; the term dies
                    alive = false;
                    break;
                }
                term.push_back(static_cast<Literal>(rel->vars[*row]));
                tuples.push_back({static_cast<std::uint32_t>(rel - db.relations.data()), *row});
            }
            if (alive) {
                std::sort(term.begin(), term.end(), lit_less);
                term.erase(std::unique(term.begin(), term.end()), term.end());
                std::sort(tuples.begin(), tuples.end());
                tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
                if (out.provenance.emplace(term, std::move(tuples)).second) {
                    for (Literal l : term) mentioned.insert(lit_var(l));
                    out.lineage.terms.push_back(std::move(term));
                }
            }
            // advance the odometer
            std::size_t pos = 0;
            while (pos < nvars && ++sub[pos] == domain_size) sub[pos++] = 0;
            if (pos == nvars) break;
            if (nvars == 0) break; // single empty substitution
        }
    }
    out.lineage.universe.assign(mentioned.begin(), mentioned.end());
    return out;
}

HierarchicalResult hierarchical(const UcqQuery& q) {
    for (std::size_t d = 0; d < q.disjuncts.size(); ++d) {
        const ConjunctiveQuery& cq = q.disjuncts[d];
        // at(x): indices of atoms containing x (atoms, not relation names;
        // self-joins count separately).
        auto at = [&](const std::string& x) {
            std::set<std::size_t> s;
            for (std::size_t i = 0; i < cq.atoms.size(); ++i)
                for (const Atom::Arg& arg : cq.atoms[i].args)
                    if (arg.is_variable && arg.text == x) s.insert(i);
            return s;
        };
        for (std::size_t i = 0; i < cq.variables.size(); ++i) {
            for (std::size_t j = i + 1; j < cq.variables.size(); ++j) {
                std::set<std::size_t> a = at(cq.variables[i]);
                std::set<std::size_t> b = at(cq.variables[j]);
                const bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
                const bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
                std::vector<std::size_t> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(common));
                if (!a_in_b && !b_in_a && !common.empty())
                    return {false,
                            HierarchicalWitness{d, cq.variables[i], cq.variables[j]}};
            }
        }
    }
    return {true, std::nullopt};
}

DatabaseInstance gen_rst_db(std::uint32_t n) {
    if (n < 1) throw Error("gen_rst_db: n must be >= 1");
    if (n > 9) throw Error("gen_rst_db: n must be <= 9 (single-digit constants sort numerically)");
    DatabaseInstance db;
    auto name = [](std::uint32_t i) { return std::to_string(i); };
    Relation r{"R", 1, {}, {}, {}};
    Relation s{"S", 2, {}, {}, {}};
    Relation t{"T", 1, {}, {}, {}};
    for (std::uint32_t i = 1; i <= n; ++i) r.rows.push_back({name(i)});
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) s.rows.push_back({name(i), name(j)});
    for (std::uint32_t j = 1; j <= n; ++j) t.rows.push_back({name(j)});
    db.relations = {std::move(r), std::move(s), std::move(t)};
    db.finalize();
    return db;
}

UcqQuery rst_query() {
    UcqQuery q;
    ConjunctiveQuery cq;
    cq.variables = {"x", "y"};
    cq.atoms = {
        {"R", {{true, "x"}}},
        {"S", {{true, "x"}, {true, "y"}}},
        {"T", {{true, "y"}}},
    };
    q.disjuncts = {std::move(cq)};
    return q;
}

namespace {

WeightsExact lineage_weights(const Grounding& g, const DatabaseInstance& db) {
    WeightsExact w;
    for (const auto& [term, tuples] : g.provenance) {
        for (const TupleRef& t : tuples) {
            const Relation& rel = db.relations[t.relation];
            w[rel.vars[t.row]] = rel.probs[t.row];
        }
    }
    return w;
}

} // namespace

BigRat query_prob_exact(const UcqQuery& q, const DatabaseInstance& db) {
    Grounding g = ground(q, db);
    if (g.lineage.terms.empty()) return BigRat(0);
    WeightsExact w = lineage_weights(g, db);
    CircuitDag dnnf = compile(g.lineage);
    ConvertResult conv = convert(dnnf);
    BigRat via_fbdd = prob_fbdd(conv.fbdd, w);
    BigRat via_dnnf = prob_dnnf(dnnf, w);
    if (via_fbdd != via_dnnf)
        throw InternalError("query_prob: FBDD and decision-DNNF probabilities disagree");
    return via_fbdd;
}

double query_prob(const UcqQuery& q, const DatabaseInstance& db) {
    return rat_to_double(query_prob_exact(q, db));
}

} // namespace kc
