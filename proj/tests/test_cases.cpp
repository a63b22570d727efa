#include <catch2/catch_amalgamated.hpp>

#include "pgroup/cases.hpp"

using namespace pgroup;

TEST_CASE("built-in configurations parse") {
    for (const auto& id : builtin_case_ids()) {
        auto cfg = builtin_config(id);
        REQUIRE(cfg.p == 2);
        REQUIRE(cfg.stages.size() == 2);
        for (const auto& st : cfg.stages) REQUIRE_FALSE(st.lattices.empty());
        REQUIRE(count_assignments(cfg) >= 1);
    }
}

TEST_CASE("final presentations of case -2379") {
    CheckList cl = verify_presentations("-2379");
    for (const auto& [name, ok] : cl.items) {
        INFO(name);
        REQUIRE(ok);
    }
}

TEST_CASE("final presentations of case -445") {
    CheckList cl = verify_presentations("-445");
    for (const auto& [name, ok] : cl.items) {
        INFO(name);
        REQUIRE(ok);
    }
}

TEST_CASE("final presentations of cases -1015 and -1595") {
    for (const auto& id : {"-1015", "-1595"}) {
        CheckList cl = verify_presentations(id);
        for (const auto& [name, ok] : cl.items) {
            INFO(id << ": " << name);
            REQUIRE(ok);
        }
    }
}

TEST_CASE("search reproduction for case -445") {
    CheckList cl = verify_search("-445");
    for (const auto& [name, ok] : cl.items) {
        INFO(name);
        REQUIRE(ok);
    }
}

TEST_CASE("search reproduction for cases -1015 and -1595", "[slow]") {
    for (const auto& id : {"-1015", "-1595"}) {
        CheckList cl = verify_search(id);
        for (const auto& [name, ok] : cl.items) {
            INFO(id << ": " << name);
            REQUIRE(ok);
        }
    }
}

TEST_CASE("search reproduction for case -2379", "[slow]") {
    CheckList cl = verify_search("-2379", 4);
    for (const auto& [name, ok] : cl.items) {
        INFO(name);
        REQUIRE(ok);
    }
}
