#include <catch2/catch_amalgamated.hpp>

#include "pgroup/descend.hpp"
#include "pgroup/paper_groups.hpp"

using namespace pgroup;

TEST_CASE("cover of the four-group") {
    auto V = make_pres(elementary_abelian(2, 2));
    CoverData cd = p_covering_group(V);
    // multiplicator of C2 x C2 at p = 2: three new generators (two power
    // tails and one commutator tail)
    REQUIRE(cd.multiplicator_rank() == 3);
    REQUIRE(cd.cover->order() == 32);
    REQUIRE(is_consistent(*cd.cover));
    REQUIRE_FALSE(cd.terminal());
    REQUIRE(cd.nucleus.order() > 1);
    // the cover maps onto the parent with the multiplicator as kernel
    REQUIRE(cd.cover->order() == V->order() * cd.multiplicator.order());
}

TEST_CASE("cover consistency on the named groups") {
    for (const auto& P : {dihedral8(), quaternion8(), paper_H4(), paper_H6(),
                          abelian_group({2, 4}), abelian_group({4, 4})}) {
        CoverData cd = p_covering_group(make_pres(P));
        REQUIRE(is_consistent(*cd.cover));
        REQUIRE(p_class(cd.cover) <= p_class(cd.parent) + 1);
    }
}

TEST_CASE("terminal groups have no immediate descendants") {
    auto Q8 = make_pres(quaternion8());
    CoverData cd = p_covering_group(Q8);
    REQUIRE(cd.terminal() == immediate_descendants(Q8, automorphism_group_brute(Q8)).empty());
    auto C4 = make_pres(abelian_group({4}));
    auto kids = immediate_descendants(C4, automorphism_group_brute(C4));
    REQUIRE(p_covering_group(C4).terminal() == kids.empty());
}

TEST_CASE("allowable subgroups cover the nucleus complement condition") {
    auto V = make_pres(elementary_abelian(2, 2));
    CoverData cd = p_covering_group(V);
    for (int codim = 1; codim <= cd.multiplicator_rank(); ++codim)
        for (const auto& U : allowable_subgroups(cd, codim)) {
            PcPresentation D = detail::cover_quotient(cd, U);
            REQUIRE(is_consistent(D));
            REQUIRE(D.order() == (cpp_int(1) << (2 + codim)));
            // proper descendant: class grows
            REQUIRE(p_class(make_pres(D)) == 2);
        }
}
