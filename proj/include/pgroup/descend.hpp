#pragma once

// The p-group generation step: immediate descendants of a group as
// quotients of its p-covering group by orbit representatives of allowable
// subgroups of the multiplicator, with automorphism propagation.

#include <unordered_map>

#include "cover.hpp"

namespace pgroup {

// An automorphism stored by the images of all generators.
struct Aut {
    std::vector<Element> images;

    std::string key() const {
        std::string k;
        for (const auto& g : images) k.append(g.e.begin(), g.e.end());
        return k;
    }
    bool is_identity(const PcPresentation& P) const {
        for (int i = 0; i < P.ngens; ++i)
            if (images[i] != P.gen(i)) return false;
        return true;
    }
};

struct AutSet {
    PresPtr G;
    std::vector<Aut> gens;
};

inline Element apply_aut(Collector& C, const Aut& a, const Element& g) {
    Element r = C.pres().identity();
    for (size_t i = 0; i < a.images.size(); ++i)
        for (int t = 0; t < g.e[i]; ++t) r = C.multiply(std::move(r), a.images[i]);
    return r;
}

// left-to-right composition: (a then b)
inline Aut compose(Collector& C, const Aut& a, const Aut& b) {
    Aut r;
    for (const auto& img : a.images) r.images.push_back(apply_aut(C, b, img));
    return r;
}

inline Aut identity_aut(const PcPresentation& P) {
    Aut a;
    for (int i = 0; i < P.ngens; ++i) a.images.push_back(P.gen(i));
    return a;
}

// full images from minimal-generator images via the forcing plan
inline Aut aut_from_min_images(const PcPresentation& P, const detail::ForcingPlan& plan,
                               Collector& C, std::span<const Element> min_images,
                               bool verify = false) {
    auto img = detail::force_images(P, plan, C, min_images, verify);
    if (!img) throw std::logic_error("aut_from_min_images: relations fail");
    return Aut{std::move(*img)};
}

// invert by tabulating the permutation of the whole group
inline Aut invert_aut(Collector& C, const Aut& a) {
    const PcPresentation& P = C.pres();
    std::unordered_map<std::string, Element> table;
    for (const auto& g : detail::all_elements(P)) {
        Element img = apply_aut(C, a, g);
        table.emplace(std::string(img.e.begin(), img.e.end()), g);
    }
    Aut inv;
    for (int i = 0; i < P.ngens; ++i) {
        Element x = P.gen(i);
        auto it = table.find(std::string(x.e.begin(), x.e.end()));
        if (it == table.end()) throw std::logic_error("invert_aut: not bijective");
        inv.images.push_back(it->second);
    }
    return inv;
}

// Generators of GL(d,p) acting on an elementary abelian group.
inline AutSet root_automorphisms(PresPtr P) {
    const int d = P->ngens, p = P->p;
    if (P->nmin != d) throw std::invalid_argument("root_automorphisms: not elementary abelian");
    for (int i = 0; i < d; ++i)
        if (!P->power[i].is_identity())
            throw std::invalid_argument("root_automorphisms: not elementary abelian");
    AutSet out{P, {}};
    Collector C(*P);
    if (d >= 2) {
        Aut cyc;  // x1 -> x2 -> ... -> xd -> x1
        for (int i = 0; i < d; ++i) cyc.images.push_back(P->gen((i + 1) % d));
        Aut tv = identity_aut(*P);  // x1 -> x1 x2
        tv.images[0] = C.multiply(P->gen(0), P->gen(1));
        out.gens.push_back(std::move(cyc));
        out.gens.push_back(std::move(tv));
    }
    if (p > 2) {
        int g = 2;  // primitive root mod p
        for (; g < p; ++g) {
            int v = 1, ord = 0;
            do { v = v * g % p; ++ord; } while (v != 1);
            if (ord == p - 1) break;
        }
        Aut diag = identity_aut(*P);
        diag.images[0] = C.power(P->gen(0), g);
        out.gens.push_back(std::move(diag));
    }
    return out;
}

// Induced linear action of an automorphism of the parent on the
// multiplicator of its cover, as a matrix acting on row vectors of tail
// coordinates.
inline MatGFp extend_to_multiplicator(const Aut& a, const CoverData& cd,
                                      const detail::ForcingPlan& cover_plan, Collector& CC) {
    const PcPresentation& P = *cd.parent;
    const PcPresentation& C = *cd.cover;
    const int n = P.ngens, d = P.nmin;
    const int m = C.ngens - n;
    std::vector<Element> min_images;
    for (int i = 0; i < d; ++i) {
        Element e(C.ngens);
        std::copy(a.images[i].e.begin(), a.images[i].e.end(), e.e.begin());
        min_images.push_back(std::move(e));
    }
    auto img = detail::force_images(C, cover_plan, CC, min_images, false);
    if (!img) throw std::logic_error("extend_to_multiplicator: forcing failed");
    MatGFp M(C.p, m, m);
    for (int t = 0; t < m; ++t) {
        const Element& v = (*img)[n + t];
        for (int i = 0; i < n; ++i)
            if (v.e[i]) throw std::logic_error("extend_to_multiplicator: tail image escapes multiplicator");
        for (int u = 0; u < m; ++u) M.at(t, u) = v.e[n + u];
    }
    return M;
}

// nucleus of the cover as a subspace matrix in tail coordinates
inline MatGFp nucleus_matrix(const CoverData& cd) {
    const int n = cd.parent->ngens;
    const int m = cd.cover->ngens - n;
    MatGFp N(cd.cover->p, cd.nucleus.rank(), m);
    for (int r = 0; r < cd.nucleus.rank(); ++r) {
        const Element& g = cd.nucleus.gens[r];
        for (int i = 0; i < n; ++i)
            if (g.e[i]) throw std::logic_error("nucleus_matrix: nucleus escapes multiplicator");
        for (int u = 0; u < m; ++u) N.at(r, u) = g.e[n + u];
    }
    return N;
}

// Proper subspaces U of the multiplicator with U + nucleus = multiplicator,
// of the given codimension, in canonical RREF order.
inline std::vector<MatGFp> allowable_subgroups(const CoverData& cd, int codim) {
    std::vector<MatGFp> out;
    if (cd.terminal()) return out;
    const int m = cd.multiplicator_rank();
    if (codim < 1 || codim > cd.nucleus.rank()) return out;
    MatGFp N = nucleus_matrix(cd);
    for (auto& U : enumerate_subspaces(cd.cover->p, m, codim)) {
        MatGFp join(U.p, U.rows + N.rows, m);
        std::copy(U.a.begin(), U.a.end(), join.a.begin());
        std::copy(N.a.begin(), N.a.end(), join.a.begin() + U.a.size());
        if (rref(std::move(join)).rank == m) out.push_back(std::move(U));
    }
    return out;
}

inline std::vector<MatGFp> allowable_subgroups(const CoverData& cd) {
    std::vector<MatGFp> out;
    for (int s = 1; s <= cd.nucleus.rank(); ++s)
        for (auto& U : allowable_subgroups(cd, s)) out.push_back(std::move(U));
    return out;
}

struct Descendant {
    PresPtr pres;
    PresPtr parent;
    MatGFp U;  // orbit representative, canonical RREF in tail coordinates
    AutSet auts;
    int step = 0;
};

namespace detail {

inline std::string mat_key(const MatGFp& m) {
    std::string k;
    k.push_back(char(m.rows));
    k.append(m.a.begin(), m.a.end());
    return k;
}

inline MatGFp subspace_image(const MatGFp& U, const MatGFp& A) {
    MatGFp V(U.p, U.rows, U.cols);
    for (int r = 0; r < U.rows; ++r)
        for (int c = 0; c < U.cols; ++c) {
            int s = 0;
            for (int t = 0; t < U.cols; ++t) s += int(U.at(r, t)) * A.at(t, c);
            V.at(r, c) = u8(s % U.p);
        }
    return rref(std::move(V)).m;
}

// quotient of the cover by the subspace U of the multiplicator
inline PcPresentation cover_quotient(const CoverData& cd, const MatGFp& U) {
    const PcPresentation& C = *cd.cover;
    const int n = cd.parent->ngens, p = C.p;
    const int m = C.ngens - n;
    auto Ur = rref(U);
    std::vector<char> is_pivot(m, 0);
    for (int c : Ur.pivots) is_pivot[c] = 1;
    std::vector<int> kept, pos(m, -1);
    for (int t = 0; t < m; ++t)
        if (!is_pivot[t]) { pos[t] = int(kept.size()); kept.push_back(t); }
    const int s = int(kept.size());
    auto project = [&](const Element& e) {
        std::vector<int> v(m);
        for (int t = 0; t < m; ++t) v[t] = e.e[n + t];
        for (int r = 0; r < Ur.rank; ++r) {
            int piv = Ur.pivots[r];
            if (!v[piv]) continue;
            int f = v[piv];
            for (int t = 0; t < m; ++t) v[t] = ((v[t] - f * Ur.m.at(r, t)) % p + p) % p;
        }
        Element out(n + s);
        std::copy(e.e.begin(), e.e.begin() + n, out.e.begin());
        for (int t = 0; t < m; ++t)
            if (v[t]) out.e[n + pos[t]] = u8(v[t]);
        return out;
    };
    PcPresentation H{p, n + s, C.nmin};
    for (int i = 0; i < n; ++i) {
        H.weight[i] = C.weight[i];
        H.def[i] = C.def[i];
    }
    for (int t = 0; t < s; ++t) {
        H.weight[n + t] = C.weight[n + kept[t]];
        const auto& df = C.def[n + kept[t]];
        H.def[n + t] = df;
    }
    for (int i = 0; i < n; ++i) {
        H.power[i] = project(C.power[i]);
        for (int j = 0; j < i; ++j) H.comm[i][j] = project(C.comm[i][j]);
    }
    H.validate();
    return H;
}

}  // namespace detail

// One descendant per orbit of allowable subgroups under the extended
// automorphism action; each carries lifted stabilizer generators plus the
// central automorphisms.
inline std::vector<Descendant> immediate_descendants(PresPtr P, const AutSet& auts,
                                                     cpp_int max_order = cpp_int(1) << 14,
                                                     int max_class = 8, bool* capped = nullptr) {
    std::vector<Descendant> out;
    CoverData cd = p_covering_group(P);
    if (cd.terminal()) return out;
    if (P->pclass() >= max_class) {
        if (capped) *capped = true;  // would descend but for the class cap
        return out;
    }
    const int n = P->ngens, d = P->nmin, p = P->p;
    const int m = cd.multiplicator_rank();
    Collector CP(*P);
    Collector CC(*cd.cover);
    auto cover_plan = detail::make_forcing_plan(*cd.cover);
    std::vector<MatGFp> mats;
    std::vector<Aut> gen_inv;
    for (const auto& a : auts.gens) {
        mats.push_back(extend_to_multiplicator(a, cd, cover_plan, CC));
        gen_inv.push_back(invert_aut(CP, a));
    }
    for (int s = 1; s <= cd.nucleus.rank(); ++s) {
        cpp_int ord = P->order();
        for (int t = 0; t < s; ++t) ord *= p;
        if (ord > max_order) {
            if (capped) *capped = true;  // an allowable subgroup of this codim exists
            continue;
        }
        auto cands = allowable_subgroups(cd, s);
        std::unordered_map<std::string, char> seen;
        for (const auto& U0 : cands) {
            auto k0 = detail::mat_key(U0);
            if (seen.count(k0)) continue;
            // orbit BFS with transversal (aut, aut^{-1}) pairs
            struct Node {
                MatGFp U;
                Aut t, tinv;
            };
            std::deque<Node> frontier;
            std::unordered_map<std::string, size_t> orbit;  // key -> node index
            std::vector<Node> nodes;
            nodes.push_back(Node{U0, identity_aut(*P), identity_aut(*P)});
            orbit[k0] = 0;
            seen[k0] = 1;
            frontier.push_back(nodes[0]);
            std::vector<Aut> stab;
            std::unordered_map<std::string, char> stab_seen;
            auto add_stab = [&](Aut a) {
                if (a.is_identity(*P)) return;
                auto k = a.key();
                if (stab_seen.count(k)) return;
                stab_seen[k] = 1;
                stab.push_back(std::move(a));
            };
            if (auts.gens.empty()) {
                // trivial action: singleton orbit, no stabilizer generators
            }
            while (!frontier.empty()) {
                Node u = std::move(frontier.front());
                frontier.pop_front();
                for (size_t gi = 0; gi < auts.gens.size(); ++gi) {
                    MatGFp V = detail::subspace_image(u.U, mats[gi]);
                    auto kv = detail::mat_key(V);
                    auto it = orbit.find(kv);
                    if (it == orbit.end()) {
                        Node v{std::move(V), compose(CP, u.t, auts.gens[gi]),
                               compose(CP, gen_inv[gi], u.tinv)};
                        orbit[kv] = nodes.size();
                        seen[kv] = 1;
                        nodes.push_back(v);
                        frontier.push_back(std::move(v));
                    } else {
                        // Schreier generator t_u . a . t_v^{-1}
                        add_stab(compose(CP, compose(CP, u.t, auts.gens[gi]), nodes[it->second].tinv));
                    }
                }
            }
            // build the descendant from the orbit representative
            Descendant D;
            D.parent = P;
            D.U = U0;
            D.step = s;
            D.pres = make_pres(detail::cover_quotient(cd, U0));
            Collector CH(*D.pres);
            auto plan_H = detail::make_forcing_plan(*D.pres);
            AutSet hauts{D.pres, {}};
            std::unordered_map<std::string, char> hseen;
            auto add_haut = [&](std::span<const Element> min_images) {
                Aut a = aut_from_min_images(*D.pres, plan_H, CH, min_images);
                if (a.is_identity(*D.pres)) return;
                auto k = a.key();
                if (hseen.count(k)) return;
                hseen[k] = 1;
                hauts.gens.push_back(std::move(a));
            };
            for (const auto& a : stab) {
                std::vector<Element> mi;
                for (int i = 0; i < d; ++i) {
                    Element e(D.pres->ngens);
                    std::copy(a.images[i].e.begin(), a.images[i].e.end(), e.e.begin());
                    mi.push_back(std::move(e));
                }
                add_haut(mi);
            }
            // central automorphisms x_i -> x_i z, z a new tail generator
            for (int i = 0; i < d; ++i)
                for (int t = n; t < D.pres->ngens; ++t) {
                    std::vector<Element> mi;
                    for (int j = 0; j < d; ++j) mi.push_back(D.pres->gen(j));
                    mi[i] = Collector(*D.pres).multiply(D.pres->gen(i), D.pres->gen(t));
                    add_haut(mi);
                }
            D.auts = std::move(hauts);
            out.push_back(std::move(D));
        }
    }
    return out;
}

// Full automorphism group by brute force (endomorphisms onto the whole
// group), reduced to a small generating set by greedy closure. Only for
// small groups.
inline AutSet automorphism_group_brute(PresPtr P, cpp_int max_order = 256) {
    if (P->order() > max_order)
        throw std::invalid_argument("automorphism_group_brute: order above limit");
    auto surjs = all_surjections(P, P);  // = Aut(P) for a finite group
    Collector C(*P);
    AutSet out{P, {}};
    std::unordered_map<std::string, char> closure;
    std::vector<Aut> closure_list{identity_aut(*P)};
    closure[closure_list[0].key()] = 1;
    for (const auto& f : surjs) {
        Aut a{f.images};
        if (closure.count(a.key())) continue;
        out.gens.push_back(a);
        // re-close
        std::deque<Aut> work(closure_list.begin(), closure_list.end());
        for (auto& b : work) {
            Aut c2 = compose(C, b, a);
            if (!closure.count(c2.key())) {
                closure[c2.key()] = 1;
                closure_list.push_back(c2);
            }
        }
        std::deque<Aut> w2(closure_list.begin(), closure_list.end());
        while (!w2.empty()) {
            Aut b = std::move(w2.front());
            w2.pop_front();
            for (const auto& g : out.gens) {
                Aut c2 = compose(C, b, g);
                if (!closure.count(c2.key())) {
                    closure[c2.key()] = 1;
                    closure_list.push_back(c2);
                    w2.push_back(std::move(c2));
                }
            }
        }
        if (closure_list.size() == surjs.size()) break;
    }
    return out;
}

}  // namespace pgroup
