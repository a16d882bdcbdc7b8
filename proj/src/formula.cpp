#include "kc/formula.hpp"

#include <algorithm>

namespace kc {

namespace {

void canonicalize_term(std::vector<Literal>& term) {
    std::sort(term.begin(), term.end(), lit_less);
    term.erase(std::unique(term.begin(), term.end()), term.end());
}

} // namespace

void DnfFormula::add_term(std::vector<Literal> term) {
    canonicalize_term(term);
    terms.push_back(std::move(term));
}

bool DnfFormula::monotone() const {
    for (const auto& t : terms)
        for (Literal l : t)
            if (!lit_positive(l)) return false;
    return true;
}

std::uint32_t DnfFormula::width() const {
    std::size_t k = 0;
    for (const auto& t : terms) k = std::max(k, t.size());
    return static_cast<std::uint32_t>(k);
}

bool DnfFormula::has_empty_term() const {
    for (const auto& t : terms)
        if (t.empty()) return true;
    return false;
}

void CnfFormula::add_clause(std::vector<Literal> clause) {
    canonicalize_term(clause);
    clauses.push_back(std::move(clause));
}

bool CnfFormula::has_empty_clause() const {
    for (const auto& c : clauses)
        if (c.empty()) return true;
    return false;
}

bool term_contradictory(const std::vector<Literal>& term) {
    for (std::size_t i = 0; i + 1 < term.size(); ++i)
        if (lit_var(term[i]) == lit_var(term[i + 1]) && term[i] != term[i + 1]) return true;
    return false;
}

std::vector<std::vector<Literal>> canonical_terms(std::vector<std::vector<Literal>> terms) {
    for (auto& t : terms) canonicalize_term(t);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

} // namespace kc
