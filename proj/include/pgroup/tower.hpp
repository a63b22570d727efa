#pragma once

// The constrained descendant search: maintain lists of pairs (group,
// constrained subgroup families), expand by descendants and surjections,
// prune by abelian-quotient-invariant tests, accumulate candidates.
//
// A surjection from an immediate descendant Q onto its parent P must kill
// P_c(Q) (the lower exponent-p central series maps onto the parent's), so
// every such surjection is (automorphism of P) . (natural projection).
// The engine therefore enumerates preimage families by a small orbit
// computation under Aut(P) instead of scanning generator-image tuples;
// tests check agreement with the exhaustive enumeration on small cases.

#include <future>
#include <map>
#include <set>
#include <sstream>

#include "descend.hpp"

namespace pgroup {

struct ConstraintEntry {
    Subgroup sub;  // subgroup of the reference quotient
    std::optional<AbelianInvariants> target;  // nullopt = unknown, no pruning
    std::string label;
};

struct ConstraintLattice {
    PresPtr reference;
    std::vector<ConstraintEntry> entries;
    std::string label;
};

// Distinct ways of assigning the targets to same-index subgroups. The
// reference-field correspondence is not printed in the source data, so the
// engine can try every consistent assignment.
inline std::vector<ConstraintLattice> enumerate_assignments(const ConstraintLattice& L) {
    // group entry positions by subgroup index
    std::map<std::string, std::vector<size_t>> by_index;
    for (size_t i = 0; i < L.entries.size(); ++i)
        by_index[L.entries[i].sub.index().str()].push_back(i);
    std::vector<ConstraintLattice> out{L};
    for (auto& [idx, positions] : by_index) {
        if (positions.size() < 2) continue;
        std::vector<ConstraintLattice> next;
        std::set<std::string> seen;
        std::vector<size_t> perm(positions.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (const auto& base : out) {
            std::vector<size_t> q = perm;
            do {
                ConstraintLattice v = base;
                for (size_t i = 0; i < positions.size(); ++i) {
                    v.entries[positions[i]].target = base.entries[positions[q[i]]].target;
                    v.entries[positions[i]].label = base.entries[positions[q[i]]].label;
                }
                std::string key;
                for (const auto& e : v.entries)
                    key += e.sub.key() + "|" + (e.target ? invariants_str(*e.target) : "?") + ";";
                if (seen.insert(key).second) next.push_back(std::move(v));
            } while (std::next_permutation(q.begin(), q.end()));
        }
        out = std::move(next);
    }
    return out;
}

struct FamilyEntry {
    Subgroup sub;
    std::optional<AbelianInvariants> target;
    std::string label;
};
using Family = std::vector<FamilyEntry>;

namespace detail {

inline void canonicalize_family(Family& f) {
    std::sort(f.begin(), f.end(), [](const FamilyEntry& a, const FamilyEntry& b) {
        if (a.sub.gens != b.sub.gens) return a.sub.key() < b.sub.key();
        auto ta = a.target ? invariants_str(*a.target) : "?";
        auto tb = b.target ? invariants_str(*b.target) : "?";
        if (ta != tb) return ta < tb;
        return a.label < b.label;
    });
}

inline std::string families_key(const std::vector<Family>& fams) {
    std::string k;
    for (const auto& f : fams) {
        for (const auto& e : f) {
            k += e.sub.key();
            k += '|';
            k += e.target ? invariants_str(*e.target) : "?";
            k += ';';
        }
        k += '/';
    }
    return k;
}

}  // namespace detail

struct TowerPair {
    int node;
    std::vector<Family> families;  // one per lattice, entries canonical
};

struct TowerOptions {
    cpp_int max_order = cpp_int(1) << 14;
    int max_class = 8;
    int jobs = 1;
};

// Engine and result for one stage of the search with one assignment.
class Tower {
public:
    struct Node {
        PresPtr pres;
        AutSet auts;
        int parent = -1;   // node id, -1 for roots
        int level = 0;     // = p-class of the group
        int step = 0;      // allowable-subgroup codimension from the parent
        bool has_children = false;
        bool capped = false;
    };

    TowerOptions opt;
    std::vector<Node> nodes;
    std::vector<TowerPair> current;     // L_m
    std::vector<size_t> pair_counts;    // |L_m| per iteration
    std::set<int> candidates;           // node ids
    bool cap_hit = false;
    bool terminated = false;

    explicit Tower(TowerOptions o = {}) : opt(std::move(o)) {}

    int add_root(PresPtr P, AutSet auts) {
        Node n;
        n.pres = std::move(P);
        n.auts = std::move(auts);
        n.level = n.pres->pclass();
        nodes.push_back(std::move(n));
        return int(nodes.size()) - 1;
    }

    // Attach constraint families to the given roots. When a lattice's
    // reference coincides with the root presentation, subgroups are
    // attached directly; otherwise one pair per combination of surjections
    // root -> reference.
    void init_pairs(const std::vector<int>& roots, const std::vector<ConstraintLattice>& lattices) {
        lattices_ = lattices;
        bool any = false;
        for (int r : roots) {
            // families obtainable per lattice
            std::vector<std::vector<Family>> options;  // per lattice
            bool root_ok = true;
            for (const auto& L : lattices_) {
                std::vector<Family> opts;
                if (serialize(*L.reference) == serialize(*nodes[r].pres)) {
                    Family f;
                    for (const auto& e : L.entries)
                        f.push_back(FamilyEntry{Subgroup{nodes[r].pres, e.sub.gens}, e.target, e.label});
                    detail::canonicalize_family(f);
                    opts.push_back(std::move(f));
                } else {
                    auto surjs = all_surjections(nodes[r].pres, L.reference);
                    std::set<std::string> seen;
                    for (const auto& f : surjs) {
                        Family fam;
                        for (const auto& e : L.entries)
                            fam.push_back(FamilyEntry{preimage(f, e.sub), e.target, e.label});
                        detail::canonicalize_family(fam);
                        auto k = detail::families_key({fam});
                        if (seen.insert(k).second) opts.push_back(std::move(fam));
                    }
                }
                if (opts.empty()) { root_ok = false; break; }
                options.push_back(std::move(opts));
            }
            if (!root_ok) continue;
            // Cartesian product over lattices
            std::vector<std::vector<Family>> combos{{}};
            for (const auto& opts : options) {
                std::vector<std::vector<Family>> next;
                for (const auto& c : combos)
                    for (const auto& f : opts) {
                        auto c2 = c;
                        c2.push_back(f);
                        next.push_back(std::move(c2));
                    }
                combos = std::move(next);
            }
            for (auto& fams : combos) {
                TowerPair p{r, std::move(fams)};
                auto [keep, exact] = evaluate(p);
                if (!keep) continue;
                if (exact) candidates.insert(r);
                push_pair(std::move(p));
                any = true;
            }
        }
        if (!any) throw std::invalid_argument("init_pairs: no surviving root pair");
    }

    // One iteration of the search loop: descendants, surjections,
    // preimage families, pruning, candidate accumulation.
    void step() {
        pair_counts.push_back(current.size());
        // pairs grouped by node, preserving order
        std::map<int, std::vector<TowerPair>> by_node;
        for (auto& p : current) by_node[p.node].push_back(std::move(p));
        current.clear();
        seen_pairs_.clear();
        // compute descendants for the involved nodes (parallel, merged in order)
        std::vector<int> todo;
        for (auto& [id, _] : by_node)
            if (!children_.count(id)) todo.push_back(id);
        compute_children(todo);
        for (auto& [id, pairs] : by_node) {
            const auto& kids = children_.at(id);
            if (kids.empty()) continue;
            Collector CP(*nodes[id].pres);
            for (auto& pr : pairs) {
                // orbit of the family tuple under Aut(parent)
                std::vector<std::vector<Family>> tuples;
                std::set<std::string> tseen;
                std::deque<std::vector<Family>> work{pr.families};
                tseen.insert(detail::families_key(pr.families));
                while (!work.empty()) {
                    auto fams = std::move(work.front());
                    work.pop_front();
                    tuples.push_back(fams);
                    for (const auto& a : nodes[id].auts.gens) {
                        std::vector<Family> tf;
                        for (const auto& fam : fams) {
                            Family nf;
                            for (const auto& e : fam) {
                                std::vector<Element> gens;
                                for (const auto& g : e.sub.gens)
                                    gens.push_back(apply_aut(CP, a, g));
                                nf.push_back(FamilyEntry{
                                    subgroup_closure(nodes[id].pres, std::move(gens)), e.target,
                                    e.label});
                            }
                            detail::canonicalize_family(nf);
                            tf.push_back(std::move(nf));
                        }
                        auto k = detail::families_key(tf);
                        if (tseen.insert(k).second) work.push_back(std::move(tf));
                    }
                }
                for (int c : kids)
                    for (const auto& fams : tuples) {
                        TowerPair np{c, {}};
                        for (const auto& fam : fams) {
                            Family cf;
                            for (const auto& e : fam)
                                cf.push_back(FamilyEntry{pi_preimage(c, id, e.sub), e.target, e.label});
                            detail::canonicalize_family(cf);
                            np.families.push_back(std::move(cf));
                        }
                        auto [keep, exact] = evaluate(np);
                        if (!keep) continue;
                        if (exact) candidates.insert(c);
                        push_pair(std::move(np));
                    }
            }
        }
    }

    // iterate until the list empties or nothing can move
    void run_to_end(int max_iter = 64) {
        for (int it = 0; it < max_iter && !current.empty(); ++it) step();
        terminated = current.empty();
        if (!current.empty()) pair_counts.push_back(current.size());
    }

    // --- queries ----------------------------------------------------------

    int ancestor_at_level(int node, int level) const {
        while (node >= 0 && nodes[node].level > level) node = nodes[node].parent;
        return node;
    }

    std::vector<int> candidate_list() const { return {candidates.begin(), candidates.end()}; }

    // distinct level-l ancestors of the candidates (the narrowed G/P_l set)
    std::vector<int> candidate_ancestors(int level) const {
        std::set<int> s;
        for (int c : candidates) {
            int a = ancestor_at_level(c, level);
            if (a >= 0) s.insert(a);
        }
        return {s.begin(), s.end()};
    }

    // level-l ancestors of candidates and of cap-pruned vertices: the
    // branches whose continuation is still open
    std::vector<int> continuing_ancestors(int level) const {
        std::set<int> s;
        for (int c : candidates) {
            int a = ancestor_at_level(c, level);
            if (a >= 0) s.insert(a);
        }
        for (int i = 0; i < int(nodes.size()); ++i)
            if (nodes[i].capped) {
                int a = ancestor_at_level(i, level);
                if (a >= 0) s.insert(a);
            }
        return {s.begin(), s.end()};
    }

    // level-l nodes that have descendants (the displayed-tree vertices)
    std::vector<int> vertices_with_children(int level) const {
        std::vector<int> out;
        for (int i = 0; i < int(nodes.size()); ++i)
            if (nodes[i].level == level && nodes[i].has_children) out.push_back(i);
        return out;
    }

    const std::vector<int>& children_of(int id) const {
        static const std::vector<int> none;
        auto it = children_.find(id);
        return it == children_.end() ? none : it->second;
    }

private:
    std::vector<ConstraintLattice> lattices_;
    std::map<int, std::vector<int>> children_;
    std::set<std::string> seen_pairs_;
    std::map<int, std::map<std::string, AbelianInvariants>> aqi_cache_;

    void push_pair(TowerPair p) {
        std::string k = std::to_string(p.node) + ":" + detail::families_key(p.families);
        if (!seen_pairs_.insert(k).second) return;
        current.push_back(std::move(p));
    }

    Subgroup pi_preimage(int child, int parent, const Subgroup& S) {
        const PresPtr& Q = nodes[child].pres;
        const int np = nodes[parent].pres->ngens;
        std::vector<Element> gens;
        for (const auto& g : S.gens) {
            Element e(Q->ngens);
            std::copy(g.e.begin(), g.e.end(), e.e.begin());
            gens.push_back(std::move(e));
        }
        for (int t = np; t < Q->ngens; ++t) gens.push_back(Q->gen(t));
        return subgroup_closure(Q, std::move(gens));
    }

    const AbelianInvariants& aqi(int node, const Subgroup& S) {
        auto& cache = aqi_cache_[node];
        auto k = S.key();
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, abelian_quotient_invariants(S)).first;
        return it->second;
    }

    // (survives pruning, all known targets exactly matched)
    std::pair<bool, bool> evaluate(const TowerPair& p) {
        bool exact = true;
        for (const auto& fam : p.families)
            for (const auto& e : fam) {
                if (!e.target) continue;
                const auto& inv = aqi(p.node, e.sub);
                if (!is_quotient(inv, *e.target)) return {false, false};
                if (inv != *e.target) exact = false;
            }
        return {true, exact};
    }

    void compute_children(const std::vector<int>& todo) {
        std::vector<std::pair<std::vector<Descendant>, bool>> results(todo.size());
        auto worker = [&](size_t i) {
            bool capped = false;
            auto ds =
                immediate_descendants(nodes[todo[i]].pres, nodes[todo[i]].auts, opt.max_order,
                                      opt.max_class, &capped);
            results[i] = {std::move(ds), capped};
        };
        if (opt.jobs > 1 && todo.size() > 1) {
            std::vector<std::future<void>> futs;
            std::atomic<size_t> next{0};
            for (int j = 0; j < std::min<int>(opt.jobs, int(todo.size())); ++j)
                futs.push_back(std::async(std::launch::async, [&] {
                    for (size_t i; (i = next.fetch_add(1)) < todo.size();) worker(i);
                }));
            for (auto& f : futs) f.get();
        } else {
            for (size_t i = 0; i < todo.size(); ++i) worker(i);
        }
        for (size_t i = 0; i < todo.size(); ++i) {
            int id = todo[i];
            auto& [ds, capped] = results[i];
            if (capped) {
                nodes[id].capped = true;
                cap_hit = true;
            }
            std::vector<int> kids;
            for (auto& D : ds) {
                Node n;
                n.pres = D.pres;
                n.auts = std::move(D.auts);
                n.parent = id;
                n.level = nodes[id].level + 1;
                n.step = D.step;
                kids.push_back(int(nodes.size()));
                nodes.push_back(std::move(n));
            }
            nodes[id].has_children = !kids.empty();
            children_[id] = std::move(kids);
        }
    }
};

// ---------------------------------------------------------------------------
// Post-filters
// ---------------------------------------------------------------------------

inline std::vector<PresPtr> filter_required_quotients(std::vector<PresPtr> groups,
                                                      const std::vector<PresPtr>& required) {
    std::vector<PresPtr> out;
    for (auto& G : groups) {
        bool ok = true;
        for (const auto& K : required)
            if (!has_quotient(G, K)) { ok = false; break; }
        if (ok) out.push_back(std::move(G));
    }
    return out;
}

inline std::vector<PresPtr> filter_subgroup_aqi(std::vector<PresPtr> groups, long index,
                                                const AbelianInvariants& required) {
    std::vector<PresPtr> out;
    for (auto& G : groups) {
        bool ok = false;
        for (const auto& S : low_index_subgroups(G, index))
            if (S.index() == index && abelian_quotient_invariants(S) == required) {
                ok = true;
                break;
            }
        if (ok) out.push_back(std::move(G));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

// DOT tree; paper mode suppresses descendant-free vertices, as in the
// displayed-tree convention.
inline std::string export_tree(const Tower& T, bool paper_mode) {
    std::ostringstream os;
    os << "digraph descendants {\n  node [shape=circle];\n";
    std::vector<char> show(T.nodes.size(), 1);
    if (paper_mode)
        for (size_t i = 0; i < T.nodes.size(); ++i)
            show[i] = T.nodes[i].has_children || T.nodes[i].parent < 0;
    for (size_t i = 0; i < T.nodes.size(); ++i) {
        if (!show[i]) continue;
        os << "  n" << i << " [label=\"" << i << "\\n2^" << T.nodes[i].pres->ngens << "\"];\n";
    }
    for (size_t i = 0; i < T.nodes.size(); ++i)
        if (show[i] && T.nodes[i].parent >= 0 && show[T.nodes[i].parent])
            os << "  n" << T.nodes[i].parent << " -> n" << i << ";\n";
    os << "}\n";
    return os.str();
}

inline std::string export_candidates(const Tower& T) {
    std::ostringstream os;
    for (int c : T.candidates) {
        os << "# candidate node " << c << " order 2^" << T.nodes[c].pres->ngens << " class "
           << T.nodes[c].level << "\n";
        os << serialize(*T.nodes[c].pres) << "\n";
    }
    return os.str();
}

}  // namespace pgroup
