#pragma once

// The four built-in case studies. Each is a complete search configuration:
// stage 1 from the degree-4 level with the class-group table of the
// quadratic subfields, stage 2 from the surviving class-2 quotients with
// the class-group lattice of a degree-8 (dihedral or [2,4]) extension.
// The "documentation" blocks record the defining polynomials of the number
// fields the class-group data came from; they are never parsed.

#include "paper_groups.hpp"
#include "runner.hpp"
#include "standard.hpp"

namespace pgroup {

inline const std::vector<std::string>& builtin_case_ids() {
    static const std::vector<std::string> ids{"-2379", "-445", "-1015", "-1595"};
    return ids;
}

inline std::string builtin_config_text(const std::string& id) {
    if (id == "-2379")
        return R"json({
  "name": "-2379",
  "p": 2,
  "description": "k = Q(sqrt(-3*13*61)), Cl_2(k) = [4,4]",
  "stages": [
    {
      "documentation": {
        "degree4_field": "Q(sqrt(-3), sqrt(13), sqrt(61))"
      },
      "roots": ["p=2 n=2 d=2"],
      "lattices": [{
        "label": "quadratic subfields",
        "reference": "p=2 n=2 d=2",
        "entries": [
          {"label": "k",           "gens": ["x1", "x2"], "target": [4, 4]},
          {"label": "k(sqrt61)",   "gens": ["x1"],       "target": [2, 2, 8]},
          {"label": "k(sqrt13)",   "gens": ["x2"],       "target": [2, 2, 8]},
          {"label": "k(sqrt-3)",   "gens": ["x1 x2"],    "target": [2, 2, 16]},
          {"label": "genus field", "gens": [],           "target": [4, 4, 8]}
        ]
      }],
      "max_order_log2": 14,
      "max_class": 8
    },
    {
      "documentation": {
        "field_L": "x^16 - 2158 x^14 - 1166 x^13 + 1886402 x^12 + 1125558 x^11 - 738996514 x^10 + 24633036 x^9 + 88589769625 x^8 - 114401828130 x^7 + 12435312336118 x^6 + 15732271973132 x^5 + 506694031967064 x^4 - 98005626098698 x^3 + 10557300816504844 x^2 - 7195589177918350 x + 41648817878658175",
        "gal_L_over_k": "[2,4]",
        "filter_field": "x^8 + 9494 x^6 + 33992937 x^4 + 54094064336 x^2 + 32175758727424"
      },
      "roots": "survivors",
      "survivors": {"level": 2, "mode": "continuing"},
      "lattices": [{
        "label": "subfields of L/k",
        "reference": "p=2 n=3 d=2\nx1^2 = x3\nx2^2 = x3\n",
        "entries": [
          {"gens": ["x1", "x2", "x3"], "target": [4, 4]},
          {"gens": ["x2", "x3"],       "target": [2, 2, 16]},
          {"gens": ["x1", "x3"],       "target": [2, 2, 8]},
          {"gens": ["x1 x2", "x3"],    "target": [2, 2, 8]},
          {"gens": ["x3"],             "target": [4, 4, 8]},
          {"gens": ["x1 x2"],          "target": [2, 2, 16]},
          {"gens": ["x1 x2 x3"],       "target": [2, 2, 16]}
        ]
      }],
      "max_order_log2": 14,
      "max_class": 8,
      "candidate_filters": [{"index": 4, "invariants": [4, 32]}]
    }
  ]
})json";
    if (id == "-445")
        return R"json({
  "name": "-445",
  "p": 2,
  "description": "k = Q(sqrt(-5*89)), Cl_2(k) = [2,4]",
  "stages": [
    {
      "documentation": {
        "degree4_field": "Q(sqrt(-1), sqrt(5), sqrt(89))"
      },
      "roots": ["p=2 n=2 d=2"],
      "lattices": [{
        "label": "quadratic subfields",
        "reference": "p=2 n=2 d=2",
        "entries": [
          {"label": "k",  "gens": ["x1", "x2"], "target": [2, 4]},
          {"label": "k1", "gens": ["x1"],       "target": [4, 4]},
          {"label": "k2", "gens": ["x2"],       "target": [2, 2, 2]},
          {"label": "k3", "gens": ["x1 x2"],    "target": [2, 8]},
          {"label": "K",  "gens": [],           "target": [2, 2, 4]}
        ]
      }],
      "max_order_log2": 8,
      "max_class": 8
    },
    {
      "documentation": {
        "field_L": "x^16 + 12 x^14 + 4554 x^12 + 17928 x^10 + 2231251 x^8 + 13625880 x^6 - 10866150 x^4 - 143437500 x^2 + 244140625",
        "gal_L_over_k": "[2,4]",
        "filter_field": "x^8 + 702 x^4 + 130321"
      },
      "roots": "survivors",
      "survivors": {
        "level": 2,
        "mode": "narrowed",
        "require_quotients": ["p=2 n=3 d=2\nx1^2 = x3\n", "p=2 n=3 d=2\n[x2,x1] = x3\n"]
      },
      "lattices": [{
        "label": "subfields of L/k",
        "reference": "p=2 n=3 d=2\nx1^2 = x3\n",
        "entries": [
          {"gens": ["x1", "x2", "x3"], "target": [2, 4]},
          {"gens": ["x2", "x3"],       "target": [2, 2, 2]},
          {"gens": ["x1", "x3"],       "target": [4, 4]},
          {"gens": ["x1 x2", "x3"],    "target": [2, 8]},
          {"gens": ["x3"],             "target": [2, 2, 4]},
          {"gens": ["x2"],             "target": [4, 4]},
          {"gens": ["x2 x3"],          "target": [2, 2, 4]}
        ]
      }],
      "max_order_log2": 14,
      "max_class": 8,
      "candidate_filters": [{"index": 4, "invariants": [2, 16]}]
    }
  ]
})json";
    if (id == "-1015" || id == "-1595") {
        std::string head = id == "-1015"
            ? R"json({
  "name": "-1015",
  "p": 2,
  "description": "k = Q(sqrt(-5*7*29)), Cl_2(k) = [2,8]",
  "stage1_documentation": {"degree4_field": "Q(sqrt(-7), sqrt(5), sqrt(29))"},
  "stage2_documentation": {
    "field_L1": "x^16 + 8302 x^14 + 29865815 x^12 + 60621449422 x^10 + 75762817738769 x^8 + 59625975137422568 x^6 + 28858765154851072400 x^4 + 7861191091575524181248 x^2 + 924182332972720716353536",
    "field_L2": "x^16 + 68 x^14 - 26 x^13 + 1922 x^12 - 2316 x^11 + 29806 x^10 - 20958 x^9 + 335885 x^8 + 62002 x^7 + 1639268 x^6 + 2747082 x^5 + 6227217 x^4 + 7583004 x^3 + 7628823 x^2 + 4664142 x + 1486431",
    "field_L3": "x^16 + 208250 x^14 + 6454080 x^13 + 84986985877 x^12 - 319881524440 x^11 + 10504186175856042 x^10 + 3217249977395280 x^9 + 2231207353583759168404 x^8 - 41652321975526297906680 x^7 + 162122207446267254901910082 x^6 - 4449276375660698756114160120 x^5 + 23169896204558457954443037721749 x^4 - 466821086268574071299245171753200 x^3 + 796726493601047682437367297422156178 x^2 - 37902470874562381569855570165787116760 x + 81595985378826852513556627342521162440521"
  },)json"
            : R"json({
  "name": "-1595",
  "p": 2,
  "description": "k = Q(sqrt(-5*11*29)), Cl_2(k) = [2,8]; same class-group data as -1015",
  "stage1_documentation": {"degree4_field": "Q(sqrt(-11), sqrt(5), sqrt(29))"},
  "stage2_documentation": {
    "field_L1": "x^16 + 75 x^14 + 3384 x^12 + 85875 x^10 + 1497421 x^8 + 16831500 x^6 + 129999744 x^4 + 564715200 x^2 + 1475789056",
    "field_L2": "x^16 + 145 x^14 + 4721 x^12 - 336690 x^10 + 2932126 x^8 + 22696270 x^6 + 32760881 x^4 - 90377775 x^2 + 43046721",
    "field_L3": "x^16 - 2312 x^14 + 2359542 x^12 - 1183214812 x^10 + 276742820433 x^8 - 63131144780036 x^6 + 66951555767033248 x^4 - 13918403354887798784 x^2 + 793394183478882017536"
  },)json";
        return head + R"json(
  "stages": [
    {
      "roots": ["p=2 n=2 d=2"],
      "lattices": [{
        "label": "quadratic subfields",
        "reference": "p=2 n=2 d=2",
        "entries": [
          {"label": "k",  "gens": ["x1", "x2"], "target": [2, 8]},
          {"label": "k1", "gens": ["x1"],       "target": [2, 16]},
          {"label": "k2", "gens": ["x2"],       "target": [2, 2, 4]},
          {"label": "k3", "gens": ["x1 x2"],    "target": [2, 16]},
          {"label": "K",  "gens": [],           "target": [2, 2, 8]}
        ]
      }],
      "max_order_log2": 9,
      "max_class": 8
    },
    {
      "roots": "survivors",
      "survivors": {
        "level": 2,
        "mode": "narrowed",
        "require_quotients": ["p=2 n=3 d=2\nx1^2 = x3\n", "p=2 n=3 d=2\n[x2,x1] = x3\n"]
      },
      "lattices": [
        {
          "label": "subfields of L1/k",
          "reference": "p=2 n=3 d=2\n[x2,x1] = x3\n",
          "entries": [
            {"gens": ["x1", "x2", "x3"], "target": [2, 8]},
            {"gens": ["x2", "x3"],       "target": [2, 2, 4]},
            {"gens": ["x1", "x3"],       "target": [2, 16]},
            {"gens": ["x1 x2", "x3"],    "target": [2, 16]},
            {"gens": ["x3"],             "target": [2, 2, 8]},
            {"gens": ["x2"],             "target": [2, 2, 8]},
            {"gens": ["x2 x3"],          "target": [2, 2, 8]},
            {"gens": ["x1"],             "target": [2, 16]},
            {"gens": ["x1 x3"],          "target": [2, 16]}
          ]
        },
        {
          "label": "subfields of L2/k",
          "reference": "p=2 n=3 d=2\nx1^2 = x3\n",
          "entries": [
            {"gens": ["x1", "x2", "x3"], "target": [2, 8]},
            {"gens": ["x2", "x3"],       "target": [2, 2, 4]},
            {"gens": ["x1", "x3"],       "target": [2, 16]},
            {"gens": ["x1 x2", "x3"],    "target": [2, 16]},
            {"gens": ["x3"],             "target": [2, 2, 8]},
            {"gens": ["x2"],             "target": [2, 4, 4]},
            {"gens": ["x2 x3"],          "target": [2, 2, 8]}
          ]
        },
        {
          "label": "subfields of L3/k",
          "reference": "p=2 n=3 d=2\nx1^2 = x3\n[x2,x1] = x3\n",
          "entries": [
            {"gens": ["x1", "x2", "x3"], "target": [2, 8]},
            {"gens": ["x2", "x3"],       "target": [2, 2, 4]},
            {"gens": ["x1", "x3"],       "target": [2, 16]},
            {"gens": ["x1 x2", "x3"],    "target": [2, 16]},
            {"gens": ["x3"],             "target": [2, 2, 8]},
            {"gens": ["x2"],             "target": [2, 2, 8]},
            {"gens": ["x2 x3"],          "target": [2, 2, 8]},
            {"gens": ["x1 x2"],          "target": [2, 32]},
            {"gens": ["x1 x2 x3"],       "target": [2, 32]}
          ]
        }
      ],
      "max_order_log2": 14,
      "max_class": 8
    }
  ]
})json";
    }
    throw std::invalid_argument("unknown case id: " + id);
}

inline SearchConfig builtin_config(const std::string& id) {
    return parse_config(builtin_config_text(id));
}

// ---------------------------------------------------------------------------
// Verification: named checks per case, recomputed from scratch.
// ---------------------------------------------------------------------------

struct CheckList {
    std::vector<std::pair<std::string, bool>> items;
    void add(std::string name, bool ok) { items.push_back({std::move(name), ok}); }
    bool all() const {
        for (const auto& [n, ok] : items)
            if (!ok) return false;
        return true;
    }
};

namespace detail {

inline std::set<std::string> standard_keys(const std::vector<PresPtr>& groups) {
    std::set<std::string> keys;
    for (const auto& G : groups) keys.insert(serialize(*standard_form(G)));
    return keys;
}

}  // namespace detail

// The final presentations of a case with all parameter values.
inline std::vector<PresPtr> final_groups(const std::string& id) {
    std::vector<PresPtr> out;
    if (id == "-2379") {
        for (int r : {0, 1})
            for (int s : {0, 1})
                for (int t : {0, 1}) out.push_back(make_pres(build_paper_group(id, r, s, t)));
    } else {
        for (int r : {0, 1}) out.push_back(make_pres(build_paper_group(id, r)));
    }
    return out;
}

// Structural checks on the printed final presentations.
inline CheckList verify_presentations(const std::string& id) {
    CheckList cl;
    auto groups = final_groups(id);
    int order_exp, cls;
    std::vector<AbelianInvariants> derived;
    if (id == "-2379") {
        order_exp = 11, cls = 5;
        derived = {{4, 4}, {2, 4, 16}};
    } else if (id == "-445") {
        order_exp = 8, cls = 5;
        derived = {{2, 4}, {2, 2, 4}, {2}};
    } else {
        order_exp = 9, cls = 5;
        derived = {{2, 8}, {2, 2, 4}, {2}};
    }
    bool consistent = true, orders = true, classes = true, series = true;
    for (const auto& G : groups) {
        consistent &= is_consistent(*G);
        orders &= G->ngens == order_exp;
        classes &= p_class(G) == cls;
        series &= derived_series_factors(G) == derived;
    }
    cl.add("presentations consistent", consistent);
    cl.add("order 2^" + std::to_string(order_exp), orders);
    cl.add("2-class " + std::to_string(cls), classes);
    cl.add("derived series factors", series);
    if (id == "-2379") {
        bool p1 = true;
        for (const auto& G : groups)
            p1 &= abelian_quotient_invariants(lower_p_central_series(G)[1]) ==
                  AbelianInvariants{4, 4, 8};
        cl.add("aqi of P1 is [4,4,8]", p1);
        cl.add("index-4 subgroup with aqi [4,32]",
               filter_subgroup_aqi(groups, 4, {4, 32}).size() == groups.size());
    }
    if (id == "-445") {
        cl.add("index-4 subgroup with aqi [2,16]",
               filter_subgroup_aqi(groups, 4, {2, 16}).size() == groups.size());
        bool q = true;
        auto H4 = make_pres(paper_H4());
        for (const auto& G : groups) {
            auto series = lower_p_central_series(G);
            q &= is_isomorphic(quotient_presentation(G, series[2]).first, H4);
        }
        cl.add("class-2 quotient is H4", q);
    }
    cl.add("parameter values pairwise nonisomorphic",
           detail::standard_keys(groups).size() == groups.size());
    return cl;
}

// Full two-stage search with the frozen configuration; checks the counts
// and matches the filtered candidates against the printed presentations.
inline CheckList verify_search(const std::string& id, int jobs = 1,
                               const RunReport* precomputed = nullptr) {
    CheckList cl;
    RunReport local;
    if (!precomputed) local = run_search(builtin_config(id), RunOptions{.jobs = jobs});
    const RunReport& rep = precomputed ? *precomputed : local;
    const StageReport& s1 = rep.stages[0];
    const StageReport& s2 = rep.stages[1];
    auto groups = final_groups(id);
    if (id == "-2379") {
        cl.add("stage 1: 81 candidates", s1.candidate_nodes.size() == 81);
        cl.add("stage 1: 6 level-2 vertices with descendants", s1.narrowed.size() == 6);
        auto H6 = make_pres(paper_H6());
        auto anc = s1.tower.candidate_ancestors(2);
        cl.add("stage 1: all candidates descend from H6",
               anc.size() == 1 && is_isomorphic(s1.tower.nodes[anc[0]].pres, H6));
        bool h46 = false, h66 = false;
        for (int v : s1.narrowed) {
            h46 |= is_isomorphic(s1.tower.nodes[v].pres, make_pres(paper_H4()));
            h66 |= is_isomorphic(s1.tower.nodes[v].pres, H6);
        }
        cl.add("stage 1: H4 and H6 among the level-2 vertices", h46 && h66);
        // the [4,32]-filtered stage-1 candidates contain the final groups
        std::vector<PresPtr> c1;
        for (int c : s1.candidate_nodes) c1.push_back(s1.tower.nodes[c].pres);
        std::vector<PresPtr> f1;
        for (auto& G : filter_subgroup_aqi(std::move(c1), 4, {4, 32}))
            if (G->ngens == 11) f1.push_back(std::move(G));
        auto want = detail::standard_keys(groups);
        auto have = detail::standard_keys(f1);
        bool contained = true;
        for (const auto& k : want) contained &= have.count(k) > 0;
        cl.add("stage 1: [4,32]-filtered candidates contain the 8 groups", contained);
        cl.add("stage 2: roots H4 and H6", s2.root_nodes.size() == 2);
        cl.add("stage 2: terminated", s2.tower.terminated && !s2.tower.cap_hit);
        cl.add("stage 2: 24 candidates", s2.candidate_nodes.size() == 24);
        cl.add("stage 2: 8 after the [4,32] filter", s2.filtered.size() == 8);
        cl.add("stage 2: filtered set equals the 8 groups",
               detail::standard_keys(s2.filtered) == want);
    } else if (id == "-445") {
        cl.add("stage 1: 3 level-2 vertices with descendants", s1.narrowed.size() == 3);
        cl.add("stage 2: 1 root", s2.root_nodes.size() == 1);
        cl.add("stage 2: root is H4",
               is_isomorphic(s2.tower.nodes[s2.root_nodes[0]].pres, make_pres(paper_H4())));
        cl.add("stage 2: terminated", s2.tower.terminated && !s2.tower.cap_hit);
        cl.add("stage 2: 12 candidates", s2.candidate_nodes.size() == 12);
        cl.add("stage 2: 2 after the [2,16] filter", s2.filtered.size() == 2);
        cl.add("stage 2: filtered set equals the 2 groups",
               detail::standard_keys(s2.filtered) == detail::standard_keys(groups));
    } else {
        cl.add("stage 1: 4 level-2 vertices with descendants", s1.narrowed.size() == 4);
        cl.add("stage 2: 2 roots of order 16",
               s2.root_nodes.size() == 2 &&
                   s2.tower.nodes[s2.root_nodes[0]].pres->ngens == 4 &&
                   s2.tower.nodes[s2.root_nodes[1]].pres->ngens == 4);
        cl.add("stage 2: terminated", s2.tower.terminated && !s2.tower.cap_hit);
        cl.add("stage 2: 2 candidates", s2.candidate_nodes.size() == 2);
        cl.add("stage 2: candidates equal the 2 groups",
               detail::standard_keys(s2.filtered) == detail::standard_keys(groups));
    }
    return cl;
}

}  // namespace pgroup
