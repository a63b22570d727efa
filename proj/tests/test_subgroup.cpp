#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pgroup/paper_groups.hpp"
#include "pgroup/subgroup.hpp"

using namespace pgroup;

namespace {

std::set<std::vector<u8>> element_set(const Subgroup& S) {
    std::set<std::vector<u8>> out;
    for (const auto& g : detail::all_elements(*S.G))
        if (contains(S, g)) out.insert(g.e);
    return out;
}

}  // namespace

TEST_CASE("subgroup_closure is a subgroup containing its generators") {
    for (const auto& P : {dihedral8(), quaternion8(), paper_H4(), abelian_group({2, 4})}) {
        auto G = make_pres(P);
        auto elems = detail::all_elements(*G);
        Collector C(*G);
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = i; j < elems.size(); ++j) {
                Subgroup S = subgroup_closure(G, {elems[i], elems[j]});
                REQUIRE(contains(S, elems[i]));
                REQUIRE(contains(S, elems[j]));
                auto set = element_set(S);
                REQUIRE(cpp_int(set.size()) == S.order());
                for (const auto& a : set)
                    for (const auto& b : set) {
                        Element ea(G->ngens), eb(G->ngens);
                        ea.e = a;
                        eb.e = b;
                        REQUIRE(set.count(C.multiply(ea, C.inverse(eb)).e) == 1);
                    }
            }
    }
}

TEST_CASE("low_index_subgroups matches brute two-generator enumeration") {
    for (const auto& P : {dihedral8(), quaternion8(), abelian_group({2, 4})}) {
        auto G = make_pres(P);
        auto elems = detail::all_elements(*G);
        // every subgroup of a group of order 8 needs at most two generators
        std::set<std::set<std::vector<u8>>> brute;
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = i; j < elems.size(); ++j) {
                Subgroup S = subgroup_closure(G, {elems[i], elems[j]});
                if (S.index() <= 4) brute.insert(element_set(S));
            }
        std::set<std::set<std::vector<u8>>> got;
        for (const auto& S : low_index_subgroups(G, 4)) {
            REQUIRE(S.index() <= 4);
            got.insert(element_set(S));
        }
        REQUIRE(got == brute);
    }
}

TEST_CASE("preimages under a non-normal-image quotient map, element by element") {
    auto G = make_pres(build_paper_group("-1015", 0));
    auto series = lower_p_central_series(G);
    auto [Q, pi] = quotient_presentation(G, series[2]);
    REQUIRE(Q->order() == 16);
    auto gel = detail::all_elements(*G);
    for (const auto& R : low_index_subgroups(Q, 16)) {
        Subgroup pre = preimage(pi, R);
        cpp_int cnt = 0;
        for (const auto& g : gel)
            if (contains(R, apply(pi, g))) {
                ++cnt;
                REQUIRE(contains(pre, g));
            }
        REQUIRE(pre.order() == cnt);
    }
}

TEST_CASE("kernel of the quotient map is the dividing subgroup") {
    auto G = make_pres(paper_H6());
    for (const auto& N : lower_p_central_series(G)) {
        auto [Q, pi] = quotient_presentation(G, N);
        REQUIRE(Q->order() * N.order() == G->order());
        Subgroup K = kernel(pi);
        REQUIRE(element_set(K) == element_set(N));
    }
}

TEST_CASE("lower p-central series and class") {
    auto G = make_pres(build_paper_group("-445", 1));
    auto series = lower_p_central_series(G);
    REQUIRE(p_class(G) == 5);
    REQUIRE(series.front().order() == G->order());
    REQUIRE(series.back().order() == 1);
    for (size_t k = 0; k + 1 < series.size(); ++k) {
        REQUIRE(series[k + 1].order() < series[k].order());
        REQUIRE(is_normal(series[k]));
    }
}

TEST_CASE("abelian invariants") {
    REQUIRE(abelian_invariants(make_pres(abelian_group({2, 4, 8}))) == AbelianInvariants{2, 4, 8});
    REQUIRE(abelian_invariants(make_pres(dihedral8())) == AbelianInvariants{2, 2});
    REQUIRE(abelian_invariants(make_pres(quaternion8())) == AbelianInvariants{2, 2});
    REQUIRE(derived_series_factors(make_pres(quaternion8())) ==
            std::vector<AbelianInvariants>{{2, 2}, {2}});
    auto G = make_pres(paper_H4());
    REQUIRE(abelian_quotient_invariants(whole_group(G)) == AbelianInvariants{2, 4});
}

TEST_CASE("all_surjections and has_quotient on small groups") {
    auto D4 = make_pres(dihedral8());
    auto Q8 = make_pres(quaternion8());
    auto V = make_pres(elementary_abelian(2, 2));
    REQUIRE(has_quotient(D4, V));
    REQUIRE(has_quotient(Q8, V));
    REQUIRE_FALSE(has_quotient(D4, Q8));
    REQUIRE_FALSE(has_quotient(V, D4));
    // |Epi(D4, V)| = |GL(2,2)| = 6 choices of generator images
    REQUIRE(all_surjections(D4, V).size() == 6);
    for (const auto& f : all_surjections(D4, D4)) {
        Subgroup K = kernel(f);
        REQUIRE(K.order() == 1);
    }
}

TEST_CASE("direct products") {
    auto P = direct_product(abelian_group({2}), abelian_group({4}));
    REQUIRE(is_isomorphic(make_pres(P), make_pres(abelian_group({2, 4}))));
    auto D = direct_product(dihedral8(), abelian_group({2}));
    REQUIRE(make_pres(D)->order() == 16);
    REQUIRE(is_consistent(D));
}
