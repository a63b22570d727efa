#pragma once

// JSON search configurations: roots, constraint lattices with target
// abelian-quotient invariants, caps, survivor rules and candidate filters
// for each stage of a multi-stage constrained descendant search.

#include <json.hpp>

#include "tower.hpp"

namespace pgroup {

struct CandidateFilter {
    long index;
    AbelianInvariants invariants;
};

// How the roots of a stage are derived from the previous stage's tree.
struct SurvivorRule {
    int level = 2;
    // false: level vertices with descendants (the displayed-tree vertices);
    // true: level ancestors of candidates and of cap-pruned vertices
    bool continuing = false;
    std::vector<PresPtr> require_quotients;
};

struct StageConfig {
    std::vector<PresPtr> roots;            // empty: use the survivor rule
    std::optional<SurvivorRule> survivors;
    std::vector<ConstraintLattice> lattices;
    cpp_int max_order = cpp_int(1) << 14;
    int max_class = 8;
    std::vector<CandidateFilter> filters;  // applied to the candidate set in order
};

struct SearchConfig {
    std::string name;
    std::string description;
    int p = 2;
    std::vector<StageConfig> stages;
};

inline Element parse_element(const PresPtr& G, const std::string& text) {
    return detail::parse_word(text, *G);
}

namespace detail {

inline AbelianInvariants parse_invariants(const nlohmann::json& j) {
    AbelianInvariants inv;
    for (const auto& v : j) inv.push_back(v.get<long>());
    return inv;
}

}  // namespace detail

inline SearchConfig parse_config(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    SearchConfig cfg;
    cfg.name = j.at("name").get<std::string>();
    cfg.description = j.value("description", "");
    cfg.p = j.value("p", 2);
    for (const auto& js : j.at("stages")) {
        StageConfig s;
        const auto& jr = js.at("roots");
        if (jr.is_string()) {
            if (jr.get<std::string>() != "survivors")
                throw std::invalid_argument("config: roots must be \"survivors\" or a list");
            SurvivorRule rule;
            if (js.contains("survivors")) {
                const auto& jv = js["survivors"];
                rule.level = jv.value("level", 2);
                rule.continuing = jv.value("mode", "narrowed") == std::string("continuing");
                if (jv.contains("require_quotients"))
                    for (const auto& q : jv["require_quotients"])
                        rule.require_quotients.push_back(
                            make_pres(parse_presentation(q.get<std::string>())));
            }
            s.survivors = std::move(rule);
        } else {
            for (const auto& r : jr) s.roots.push_back(make_pres(parse_presentation(r.get<std::string>())));
        }
        for (const auto& jl : js.at("lattices")) {
            ConstraintLattice L;
            L.label = jl.value("label", "");
            L.reference = make_pres(parse_presentation(jl.at("reference").get<std::string>()));
            for (const auto& je : jl.at("entries")) {
                ConstraintEntry e;
                e.label = je.value("label", "");
                std::vector<Element> gens;
                for (const auto& w : je.at("gens"))
                    gens.push_back(parse_element(L.reference, w.get<std::string>()));
                e.sub = subgroup_closure(L.reference, std::move(gens));
                const auto& jt = je.at("target");
                if (!(jt.is_string() && jt.get<std::string>() == "unknown"))
                    e.target = detail::parse_invariants(jt);
                L.entries.push_back(std::move(e));
            }
            s.lattices.push_back(std::move(L));
        }
        if (js.contains("max_order_log2")) s.max_order = cpp_int(1) << js["max_order_log2"].get<int>();
        s.max_class = js.value("max_class", 8);
        if (js.contains("candidate_filters"))
            for (const auto& jf : js["candidate_filters"])
                s.filters.push_back(
                    CandidateFilter{jf.at("index").get<long>(),
                                    detail::parse_invariants(jf.at("invariants"))});
        cfg.stages.push_back(std::move(s));
    }
    return cfg;
}

}  // namespace pgroup
