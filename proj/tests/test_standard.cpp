#include <catch2/catch_amalgamated.hpp>

#include "pgroup/oracle.hpp"
#include "pgroup/standard.hpp"

using namespace pgroup;

TEST_CASE("standard form is idempotent") {
    for (const auto& P : {dihedral8(), quaternion8(), paper_H4(), paper_H6(),
                          build_paper_group("-445", 0), build_paper_group("-1015", 1)}) {
        PresPtr S = standard_form(make_pres(P));
        PresPtr S2 = standard_form(S);
        REQUIRE(serialize(*S) == serialize(*S2));
        REQUIRE(S->order() == P.order());
        REQUIRE(is_consistent(*S));
    }
}

TEST_CASE("standard form agrees with brute isomorphism testing") {
    std::mt19937 rng(7);
    std::vector<PresPtr> groups;
    for (int it = 0; it < 20; ++it) groups.push_back(random_presentation(rng, 6));
    std::vector<std::string> keys;
    for (const auto& G : groups) keys.push_back(serialize(*standard_form(G)));
    for (size_t i = 0; i < groups.size(); ++i)
        for (size_t j = i + 1; j < groups.size(); ++j) {
            INFO(serialize(*groups[i]) << "--\n" << serialize(*groups[j]));
            REQUIRE((keys[i] == keys[j]) == is_isomorphic(groups[i], groups[j]));
        }
}

TEST_CASE("standard form separates close relatives") {
    auto k = [](PcPresentation P) { return serialize(*standard_form(make_pres(std::move(P)))); };
    REQUIRE(k(dihedral8()) != k(quaternion8()));
    REQUIRE(k(dihedral8()) != k(abelian_group({2, 4})));
    // the r-parameter families from the case studies
    REQUIRE(k(build_paper_group("-445", 0)) != k(build_paper_group("-445", 1)));
    REQUIRE(k(build_paper_group("-1015", 0)) != k(build_paper_group("-1015", 1)));
}

TEST_CASE("isomorphic wrapper is an equivalence on mixed presentations") {
    auto A = make_pres(dihedral8());
    // same group presented with the generators swapped
    auto B = make_pres(parse_presentation("p=2 n=3 d=2\nx2^2 = x3\n[x2,x1] = x3\n"));
    REQUIRE(isomorphic(A, B));
    REQUIRE(isomorphic(B, A));
    REQUIRE_FALSE(isomorphic(A, make_pres(quaternion8())));
}
