#include <catch2/catch_amalgamated.hpp>

#include "pgroup/oracle.hpp"

using namespace pgroup;

TEST_CASE("small-order descendant classification") {
    REQUIRE(oracle_suite_descend() == "");
}

TEST_CASE("orbit count equals the brute isomorphism-class count") {
    // deduplicate allowable subgroups by hand and compare with the
    // orbit-based enumeration
    for (const auto& P : {elementary_abelian(2, 2), abelian_group({2, 4}), dihedral8()}) {
        auto G = make_pres(P);
        AutSet auts = automorphism_group_brute(G);
        CoverData cd = p_covering_group(G);
        for (int codim = 1; codim <= cd.multiplicator_rank(); ++codim) {
            std::vector<PresPtr> reps;
            for (const auto& U : allowable_subgroups(cd, codim)) {
                auto D = make_pres(detail::cover_quotient(cd, U));
                bool seen = false;
                for (const auto& R : reps) seen |= is_isomorphic(D, R);
                if (!seen) reps.push_back(D);
            }
            long orbit = 0;
            for (const auto& D : immediate_descendants(G, auts))
                orbit += (D.pres->order() == cd.parent->order() * (cpp_int(1) << codim));
            REQUIRE(orbit == long(reps.size()));
        }
    }
}

TEST_CASE("propagated automorphisms generate the full automorphism group") {
    auto V = make_pres(elementary_abelian(2, 2));
    AutSet root = root_automorphisms(V);
    for (const auto& D : immediate_descendants(V, root)) {
        if (D.pres->order() > 16) continue;
        // close the propagated generators and compare with the brute group
        auto count_closure = [](PresPtr G, const AutSet& gens) {
            Collector C(*G);
            std::set<std::string> seen;
            std::vector<Aut> queue;
            auto key = [&](const Aut& a) {
                std::string k;
                for (const auto& im : a.images) k.append(im.e.begin(), im.e.end());
                return k;
            };
            Aut id = identity_aut(*G);
            seen.insert(key(id));
            queue.push_back(id);
            for (size_t h = 0; h < queue.size(); ++h)
                for (const auto& g : gens.gens) {
                    Aut c = compose(C, queue[h], g);
                    if (seen.insert(key(c)).second) queue.push_back(c);
                }
            return seen.size();
        };
        size_t forward = count_closure(D.pres, D.auts);
        size_t brute = count_closure(D.pres, automorphism_group_brute(D.pres));
        REQUIRE(forward == brute);
    }
}

TEST_CASE("descendants modulo their last lower-central term reproduce the parent") {
    auto P = make_pres(dihedral8());
    for (const auto& D : immediate_descendants(P, automorphism_group_brute(P))) {
        auto series = lower_p_central_series(D.pres);
        auto Q = quotient_presentation(D.pres, series[series.size() - 2]).first;
        REQUIRE(is_isomorphic(Q, P));
    }
}

TEST_CASE("root automorphisms realize GL(d, p)") {
    auto V = make_pres(elementary_abelian(2, 3));
    AutSet root = root_automorphisms(V);
    Collector C(*V);
    std::set<std::vector<u8>> seen;
    std::vector<Aut> queue{identity_aut(*V)};
    auto key = [](const Aut& a) {
        std::vector<u8> k;
        for (const auto& im : a.images) k.insert(k.end(), im.e.begin(), im.e.end());
        return k;
    };
    seen.insert(key(queue[0]));
    for (size_t h = 0; h < queue.size(); ++h)
        for (const auto& g : root.gens) {
            Aut c = compose(C, queue[h], g);
            if (seen.insert(key(c)).second) queue.push_back(c);
        }
    REQUIRE(seen.size() == 168);  // |GL(3,2)|
}
