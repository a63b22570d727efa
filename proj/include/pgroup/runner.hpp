#pragma once

// Drives a SearchConfig through its stages: build roots (explicit or from
// the previous stage's surviving vertices), pick the requested target
// assignment, run the tower, apply candidate filters, render a stable
// plain-text report.

#include "config.hpp"

namespace pgroup {

struct RunOptions {
    std::optional<cpp_int> max_order;
    std::optional<int> max_class;
    int jobs = 1;
    long assignment = 0;
    std::optional<int> stage_limit;  // run stages 1..N only
};

struct StageReport {
    std::vector<size_t> assignment_radix;   // per-lattice assignment counts
    std::vector<size_t> assignment_choice;  // chosen index per lattice
    std::vector<int> root_nodes;
    Tower tower;
    std::vector<int> narrowed;              // level-2 vertices with descendants
    std::vector<int> candidate_nodes;
    std::vector<PresPtr> filtered;          // candidates after the filters
};

struct RunReport {
    SearchConfig cfg;
    RunOptions opt;
    std::vector<StageReport> stages;
};

inline size_t count_assignments(const SearchConfig& cfg) {
    size_t n = 1;
    for (const auto& s : cfg.stages)
        for (const auto& L : s.lattices) n *= enumerate_assignments(L).size();
    return n;
}

inline RunReport run_search(const SearchConfig& cfg, RunOptions opt = {}) {
    RunReport rep{cfg, opt, {}};
    long aidx = opt.assignment;
    if (aidx < 0 || size_t(aidx) >= count_assignments(cfg))
        throw std::invalid_argument("runner: assignment index out of range");
    const Tower* prev = nullptr;
    for (size_t si = 0; si < cfg.stages.size(); ++si) {
        if (opt.stage_limit && int(si) >= *opt.stage_limit) break;
        const StageConfig& sc = cfg.stages[si];
        TowerOptions topt;
        topt.max_order = opt.max_order.value_or(sc.max_order);
        topt.max_class = opt.max_class.value_or(sc.max_class);
        topt.jobs = opt.jobs;
        StageReport sr{{}, {}, {}, Tower(topt), {}, {}, {}};
        Tower& T = sr.tower;
        if (!sc.roots.empty()) {
            for (const auto& P : sc.roots) {
                AutSet A = P->pclass() == 1 ? root_automorphisms(P) : automorphism_group_brute(P);
                sr.root_nodes.push_back(T.add_root(P, std::move(A)));
            }
        } else {
            if (!prev) throw std::invalid_argument("runner: survivor roots need a previous stage");
            SurvivorRule rule = sc.survivors.value_or(SurvivorRule{});
            auto ids = rule.continuing ? prev->continuing_ancestors(rule.level)
                                       : prev->vertices_with_children(rule.level);
            for (int id : ids) {
                bool ok = true;
                for (const auto& K : rule.require_quotients)
                    if (!has_quotient(prev->nodes[id].pres, K)) { ok = false; break; }
                if (ok) sr.root_nodes.push_back(T.add_root(prev->nodes[id].pres, prev->nodes[id].auts));
            }
            if (sr.root_nodes.empty())
                throw std::runtime_error("runner: no roots survive the quotient filter");
        }
        std::vector<ConstraintLattice> chosen;
        for (const auto& L : sc.lattices) {
            auto opts = enumerate_assignments(L);
            size_t digit = size_t(aidx) % opts.size();
            aidx /= long(opts.size());
            sr.assignment_radix.push_back(opts.size());
            sr.assignment_choice.push_back(digit);
            chosen.push_back(std::move(opts[digit]));
        }
        T.init_pairs(sr.root_nodes, chosen);
        T.run_to_end();
        sr.narrowed = T.vertices_with_children(2);
        sr.candidate_nodes = T.candidate_list();
        std::vector<PresPtr> cands;
        for (int c : sr.candidate_nodes) cands.push_back(T.nodes[c].pres);
        for (const auto& f : sc.filters)
            cands = filter_subgroup_aqi(std::move(cands), f.index, f.invariants);
        sr.filtered = std::move(cands);
        rep.stages.push_back(std::move(sr));
        prev = &rep.stages.back().tower;
    }
    return rep;
}

inline std::string render_report(const RunReport& rep) {
    std::ostringstream os;
    os << "search " << rep.cfg.name << "\n";
    os << "assignment " << rep.opt.assignment << " of " << count_assignments(rep.cfg) << "\n";
    for (size_t si = 0; si < rep.stages.size(); ++si) {
        const StageReport& sr = rep.stages[si];
        const Tower& T = sr.tower;
        os << "stage " << si + 1 << "\n";
        os << "  caps: max_order " << T.opt.max_order << " max_class " << T.opt.max_class << "\n";
        os << "  roots:";
        for (int r : sr.root_nodes) os << " 2^" << T.nodes[r].pres->ngens;
        os << "\n";
        os << "  pairs per iteration:";
        for (size_t n : T.pair_counts) os << " " << n;
        os << "\n";
        os << "  terminated: " << (T.terminated ? "yes" : "no")
           << "  order cap reached: " << (T.cap_hit ? "yes" : "no") << "\n";
        os << "  level-2 vertices with descendants: " << sr.narrowed.size() << "\n";
        os << "  candidates: " << sr.candidate_nodes.size() << "\n";
        std::map<std::pair<int, int>, int> hist;
        for (int c : sr.candidate_nodes) hist[{T.nodes[c].pres->ngens, T.nodes[c].level}]++;
        for (const auto& [k, v] : hist)
            os << "    order 2^" << k.first << " class " << k.second << ": " << v << "\n";
        const StageConfig& sc = rep.cfg.stages[si];
        if (!sc.filters.empty()) {
            std::vector<PresPtr> cands;
            for (int c : sr.candidate_nodes) cands.push_back(T.nodes[c].pres);
            for (const auto& f : sc.filters) {
                cands = filter_subgroup_aqi(std::move(cands), f.index, f.invariants);
                os << "  filter index " << f.index << " aqi " << invariants_str(f.invariants)
                   << ": " << cands.size() << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace pgroup
