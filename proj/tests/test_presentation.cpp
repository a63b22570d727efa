#include <catch2/catch_amalgamated.hpp>

#include "pgroup/cases.hpp"
#include "pgroup/oracle.hpp"

using namespace pgroup;

TEST_CASE("parse/serialize round trip on the named groups") {
    for (const auto& P : {elementary_abelian(2, 2), abelian_group({2, 4}), dihedral8(),
                          quaternion8(), paper_H4(), paper_H6(),
                          build_paper_group("-2379", 1, 0, 1), build_paper_group("-445", 1),
                          build_paper_group("-1015", 0)}) {
        auto Q = parse_presentation(serialize(P));
        REQUIRE(serialize(Q) == serialize(P));
        REQUIRE(Q.ngens == P.ngens);
        REQUIRE(Q.nmin == P.nmin);
    }
}

TEST_CASE("grammar rejects malformed input") {
    REQUIRE_THROWS(parse_presentation("n=2 d=2\n"));
    REQUIRE_THROWS(parse_presentation("p=2 n=2 d=3\n"));
    REQUIRE_THROWS(parse_presentation("p=2 n=2 d=2\nx3^2 = x1\n"));
    REQUIRE_THROWS(parse_presentation("p=2 n=3 d=2\n[x1,x2] = x3\n"));
    REQUIRE_THROWS(parse_presentation("p=2 n=3 d=2\nx1^2 = bogus\n"));
}

TEST_CASE("parse_word") {
    auto P = dihedral8();
    REQUIRE(detail::parse_word("1", P) == P.identity());
    Element w = detail::parse_word("x1 x3", P);
    REQUIRE(w.e == std::vector<u8>{1, 0, 1});
    REQUIRE_THROWS(detail::parse_word("x4", P));
}

TEST_CASE("collection agrees with naive string rewriting on the case groups") {
    // the named groups and the small quotients of the final presentations
    std::vector<PcPresentation> groups = {elementary_abelian(2, 2), abelian_group({2, 4}),
                                          abelian_group({2, 8}),    dihedral8(),
                                          quaternion8(),            paper_H4(),
                                          paper_H6()};
    for (const auto& id : builtin_case_ids()) {
        auto G = make_pres(build_paper_group(id));
        auto series = lower_p_central_series(G);
        for (size_t k = 2; k < series.size(); ++k) {
            auto Q = quotient_presentation(G, series[k]).first;
            if (Q->ngens <= 7) groups.push_back(*Q);
        }
    }
    for (const auto& P : groups) {
        INFO(serialize(P));
        REQUIRE(P.ngens <= 7);
        REQUIRE(oracle_cayley(P) == "");
    }
}

TEST_CASE("collector tables satisfy the group axioms") {
    for (const auto& P : {dihedral8(), quaternion8(), paper_H4(), paper_H6()})
        REQUIRE(oracle_group_axioms(P) == "");
}

TEST_CASE("permutation models and random consistent presentations") {
    REQUIRE(oracle_suite_pcp() == "");
}

TEST_CASE("inverse, powers and commutators") {
    auto P = paper_H6();
    Collector C(P);
    auto elems = detail::all_elements(P);
    for (const auto& a : elems) {
        REQUIRE(C.multiply(a, C.inverse(a)) == P.identity());
        REQUIRE(C.power(a, 4) == C.multiply(C.multiply(a, a), C.multiply(a, a)));
        long o = C.element_order(a);
        REQUIRE(C.power(a, o) == P.identity());
        REQUIRE((o == 1) == a.is_identity());
    }
    // ab = ba [a,b] with [a,b] = a^-1 b^-1 a b
    for (const auto& a : elems)
        for (const auto& b : elems)
            REQUIRE(C.multiply(C.multiply(b, a), C.commutator(a, b)) == C.multiply(a, b));
}

TEST_CASE("is_consistent accepts the case groups and rejects a broken table") {
    for (const auto& id : builtin_case_ids()) REQUIRE(is_consistent(build_paper_group(id)));
    // x3 := [x2,x1] but x3^2 = x1 points back down: not a valid weighting
    REQUIRE_THROWS(parse_presentation("p=2 n=3 d=2\n[x2,x1] = x3\nx3^2 = x1\n"));
}
