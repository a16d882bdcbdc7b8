#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "kc/compiler.hpp"
#include "kc/counting.hpp"
#include "kc/generators.hpp"
#include "kc/oracle.hpp"

#include <set>

using namespace kc;

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(9));
    CHECK_THROWS_AS(gen_en(4), Error);
}

TEST_CASE("edge relation membership and size") {
    EdgeRelation e4 = gen_en(2);
    CHECK(e4.n == 4);
    CHECK(e4.contains(1, 1)); // i=j=0: a=b=c=d=0 and 0 = 0 mod 2
    CHECK(e4.pairs.size() == 8); // one c per (a,b,d): p^3

    EdgeRelation e9 = gen_en(3);
    CHECK(e9.pairs.size() == 27);

    // independent re-derivation of membership from the congruence
    for (std::uint32_t i = 0; i < e4.n; ++i)
        for (std::uint32_t j = 0; j < e4.n; ++j) {
            std::uint32_t a = i % 2, b = i / 2, c = j % 2, d = j / 2;
            CHECK(e4.contains(i + 1, j + 1) == ((a + b * d) % 2 == c));
        }
}

TEST_CASE("psi and its dual") {
    DnfFormula psi = gen_psi(2);
    CHECK(psi.terms.size() == 8);
    CHECK(psi.universe.size() == 8);
    CHECK(psi.monotone());
    CHECK(psi.width() == 2);

    CnfFormula dual = gen_psi_dual(2);
    CHECK(dual.clauses.size() == 8);
    for (const auto& c : dual.clauses) CHECK(c.size() == 2);

    // fixed by enumeration: the model count of Psi over 2^8 assignments,
    // and the dual's count is its complement under negating every variable
    CHECK(brute_count(psi).count == 209);
    CHECK(brute_count(dual).count == 256 - 209);
}

TEST_CASE("phi") {
    DnfFormula phi1 = gen_phi(1);
    CHECK(phi1.terms.size() == 1);
    CHECK(phi1.universe.size() == 3);
    CHECK(phi1.terms[0] == std::vector<Literal>{1, 2, 3}); // X1 Z11 Y1

    DnfFormula phi2 = gen_phi(2);
    CHECK(phi2.terms.size() == 4);
    CHECK(phi2.universe.size() == 8);
    CHECK(phi2.monotone());
    CHECK(phi2.width() == 3);
    CHECK(brute_count(phi2).count == 95); // fixed by enumeration
}

TEST_CASE("triangle terms collapse repeated literals") {
    DnfFormula d1 = gen_triangle(1);
    REQUIRE(d1.terms.size() == 1);
    CHECK(d1.terms[0] == std::vector<Literal>{1}); // the single loop Z11

    // n = 2 by direct expansion of Z_ij Z_jk Z_ki over all triples, as sets
    DnfFormula d2 = gen_triangle(2);
    std::set<std::vector<Literal>> got(d2.terms.begin(), d2.terms.end());
    std::set<std::vector<Literal>> want = {
        {1},          // (1,1,1)
        {4},          // (2,2,2)
        {1, 2, 3},    // Z11 Z12 Z21
        {2, 3, 4},    // Z12 Z21 Z22
    };
    CHECK(got == want);
    CHECK(d2.monotone());
    CHECK(d2.width() <= 3);
    CHECK(brute_count(d2).count == 12); // Z11 or Z22 after absorption
}

TEST_CASE("gamma oracle") {
    CHECK(gamma_eval(2, {1, 1, 1, 1}));        // even parity, all-1 row
    CHECK_FALSE(gamma_eval(2, {0, 0, 0, 0}));  // even parity, no all-1 row
    CHECK(gamma_eval(2, {1, 1, 1, 0}));        // odd parity, all-1 column 1
    CHECK_FALSE(gamma_eval(2, {1, 0, 0, 0}));  // odd parity, no all-1 column
    CHECK_THROWS_AS(gamma_eval(2, {1, 1, 1}), Error);

    // brute-force count through the black-box interface stays stable
    std::vector<Var> u = dense_universe(9);
    auto fn = [&](const Assignment& a) {
        std::vector<std::uint8_t> m(9);
        for (std::size_t i = 0; i < 9; ++i) m[i] = a.value(static_cast<Var>(i + 1));
        return gamma_eval(3, m);
    };
    ModelCount mc = brute_count(u, fn);
    CHECK(mc.count == brute_count(u, fn).count);
}

TEST_CASE("tight example structure") {
    CircuitDag t1 = gen_tight_example(1);
    CHECK(validate(t1).ok);
    std::size_t ands1 = 0;
    for (const Node& n : t1.nodes) ands1 += n.kind == NodeKind::And;
    CHECK(ands1 == 2); // m(m+1) with m = 1
    CHECK(t1.universe.size() == 5);

    CircuitDag t2 = gen_tight_example(2);
    CHECK(validate(t2).ok);
    std::size_t ands2 = 0, decisions2 = 0;
    for (const Node& n : t2.nodes) {
        ands2 += n.kind == NodeKind::And;
        decisions2 += n.kind == NodeKind::Decision;
    }
    CHECK(ands2 == 12);                      // m(m+1) with m = 3
    CHECK(decisions2 == 3 * 3 + 16);         // block vars plus white boxes
    CHECK(tight_example_final_var(2) == 6);  // X_{0,m}: block "0" holds vars 4..6

    CircuitDag t3 = gen_tight_example(3);
    CHECK(validate(t3).ok);
    std::size_t ands3 = 0;
    for (const Node& n : t3.nodes) ands3 += n.kind == NodeKind::And;
    CHECK(ands3 == 56); // m(m+1) with m = 7

    // deterministic construction
    CHECK(canonical_signature(gen_tight_example(3)) == canonical_signature(t3));
}

TEST_CASE("tight example p=1 counts agree with the oracle") {
    // One block: decide X1; both branches are ANDs of fresh white boxes.
    CircuitDag t1 = gen_tight_example(1);
    CHECK(brute_count(t1).count == count_dnnf(t1).count);
    CHECK(brute_count(t1).count == 8); // fixed by enumeration over 2^5
}

TEST_CASE("random monotone dnfs are deterministic and well-formed") {
    DnfFormula a = gen_random_monotone_dnf(10, 8, 3, 42);
    DnfFormula b = gen_random_monotone_dnf(10, 8, 3, 42);
    REQUIRE(a.terms.size() == b.terms.size());
    CHECK(a.terms == b.terms);
    CHECK(a.monotone());
    for (const auto& t : a.terms) CHECK(t.size() == 3);
    MonotoneKdnf mk = is_monotone_kdnf(a);
    CHECK(mk.monotone);
    CHECK(mk.width <= 3);

    DnfFormula full = gen_random_monotone_dnf(4, 1, 4, 1);
    REQUIRE(full.terms.size() == 1);
    CHECK(full.terms[0] == std::vector<Literal>{1, 2, 3, 4});

    CHECK_THROWS_AS(gen_random_monotone_dnf(3, 1, 5, 1), Error);
}
