#include <catch2/catch_amalgamated.hpp>

#include "pgroup/cases.hpp"

using namespace pgroup;

TEST_CASE("enumerate_assignments counts target permutations per index") {
    REQUIRE(count_assignments(builtin_config("-445")) == 108);
    REQUIRE(count_assignments(builtin_config("-2379")) == 27);
    REQUIRE(count_assignments(builtin_config("-1015")) >= 1);
    REQUIRE(count_assignments(builtin_config("-1015")) ==
            count_assignments(builtin_config("-1595")));
}

TEST_CASE("assignment enumeration is duplicate-free and target-preserving") {
    auto cfg445 = builtin_config("-445");
    const auto& L = cfg445.stages[0].lattices[0];
    auto assigned = enumerate_assignments(L);
    REQUIRE(assigned.size() == 6);
    std::set<std::string> keys;
    for (const auto& A : assigned) {
        REQUIRE(A.entries.size() == L.entries.size());
        std::multiset<std::string> want, got;
        std::string key;
        for (size_t i = 0; i < A.entries.size(); ++i) {
            REQUIRE(A.entries[i].sub.gens == L.entries[i].sub.gens);
            want.insert(L.entries[i].target ? invariants_str(*L.entries[i].target) : "?");
            got.insert(A.entries[i].target ? invariants_str(*A.entries[i].target) : "?");
            key += (A.entries[i].target ? invariants_str(*A.entries[i].target) : "?") + ";";
        }
        REQUIRE(want == got);
        REQUIRE(keys.insert(key).second);
    }
}

TEST_CASE("pair propagation agrees with exhaustive surjection enumeration") {
    // one step from [2,2] with an unconstrained full subgroup family: the
    // orbit propagation must produce exactly the distinct preimage families
    // of the exhaustive surjection set, per child
    auto P = make_pres(elementary_abelian(2, 2));
    ConstraintLattice L;
    L.reference = P;
    L.label = "all";
    for (const auto& S : low_index_subgroups(P, 4))
        L.entries.push_back(ConstraintEntry{S, std::nullopt, ""});
    Tower T;
    int root = T.add_root(P, root_automorphisms(P));
    T.init_pairs({root}, {L});
    REQUIRE(T.current.size() == 1);
    T.step();
    std::map<int, std::set<std::string>> engine;
    for (const auto& pr : T.current) engine[pr.node].insert(detail::families_key(pr.families));
    REQUIRE_FALSE(engine.empty());
    for (int c : T.children_of(root)) {
        std::set<std::string> brute;
        for (const auto& f : all_surjections(T.nodes[c].pres, P)) {
            Family fam;
            for (const auto& e : L.entries)
                fam.push_back(FamilyEntry{preimage(f, e.sub), e.target, e.label});
            detail::canonicalize_family(fam);
            brute.insert(detail::families_key({fam}));
        }
        REQUIRE(engine[c] == brute);
    }
}

TEST_CASE("candidate filters") {
    auto D4 = make_pres(dihedral8());
    auto Q8 = make_pres(quaternion8());
    std::vector<PresPtr> groups{D4, Q8};
    // every index-2 subgroup of Q8 is cyclic; D4 has two Klein subgroups
    REQUIRE(filter_subgroup_aqi(groups, 2, {4}).size() == 2);
    auto only_d4 = filter_subgroup_aqi(groups, 2, {2, 2});
    REQUIRE(only_d4.size() == 1);
    REQUIRE(serialize(*only_d4[0]) == serialize(*D4));
    // required quotients: neither is a quotient of the other
    auto req = filter_required_quotients(groups, {D4});
    REQUIRE(req.size() == 1);
    REQUIRE(serialize(*req[0]) == serialize(*D4));
}

TEST_CASE("reports are independent of the job count") {
    auto cfg = builtin_config("-445");
    RunOptions o1, o4;
    o1.jobs = 1;
    o4.jobs = 4;
    auto r1 = run_search(cfg, o1);
    auto r4 = run_search(cfg, o4);
    REQUIRE(render_report(r1) == render_report(r4));
}

TEST_CASE("configuration errors are rejected") {
    REQUIRE_THROWS(parse_config("not json"));
    REQUIRE_THROWS(parse_config("{\"name\":\"x\"}"));  // no stages
    REQUIRE_THROWS(builtin_config("-9999"));
    auto cfg = builtin_config("-445");
    RunOptions o;
    o.assignment = count_assignments(cfg);  // one past the end
    REQUIRE_THROWS_AS(run_search(cfg, o), std::invalid_argument);
}

TEST_CASE("order cap reports truncation") {
    auto cfg = builtin_config("-445");
    RunOptions o;
    o.stage_limit = 1;
    o.max_order = 32;
    auto rep = run_search(cfg, o);
    REQUIRE(rep.stages.size() == 1);
    REQUIRE(rep.stages[0].tower.cap_hit);
}
