#pragma once

// Standard presentation by canonical descent. The quotients of a group by
// its lower exponent-p central series are rebuilt from the elementary
// abelian root; at each step the kernel of the induced map from the
// multiplicator of the cover is replaced by the minimal representative of
// its orbit under the full automorphism action. Isomorphic groups therefore
// produce byte-identical standard presentations.

#include "descend.hpp"

namespace pgroup {

inline PresPtr standard_form(PresPtr G) {
    const int p = G->p, d = G->nmin;
    auto series = lower_p_central_series(G);
    const int cls = int(series.size()) - 1;
    PcPresentation root{p, d, d};
    root.validate();
    PresPtr S = make_pres(std::move(root));
    AutSet auts = root_automorphisms(S);
    std::vector<Element> sec;  // elements of G over the minimal generators of S
    for (int j = 0; j < d; ++j) sec.push_back(G->gen(j));

    for (int k = 1; k < cls; ++k) {
        // the class-(k+1) quotient of G and a generator-wise lift out of it
        PresPtr Gq;
        std::vector<Element> piq_images;
        std::vector<int> kept;  // G-generator carrying each Gq generator
        if (k + 1 == cls) {
            Gq = G;
            for (int i = 0; i < G->ngens; ++i) {
                piq_images.push_back(G->gen(i));
                kept.push_back(i);
            }
        } else {
            auto [q, piq] = quotient_presentation(G, series[k + 1]);
            Gq = q;
            piq_images = piq.images;
            kept.assign(Gq->ngens, -1);
            for (int i = 0; i < G->ngens; ++i) {
                int l = piq_images[i].leading();
                if (l >= 0 && piq_images[i] == Gq->gen(l) && kept[l] < 0) kept[l] = i;
            }
            for (int l = 0; l < Gq->ngens; ++l)
                if (kept[l] < 0) throw std::logic_error("standard_form: missing quotient section");
        }
        Collector CGq(*Gq);
        auto piq_apply = [&](const Element& g) {
            Element r = Gq->identity();
            for (int i = 0; i < G->ngens; ++i)
                for (int t = 0; t < g.e[i]; ++t) r = CGq.multiply(std::move(r), piq_images[i]);
            return r;
        };
        auto lift_G = [&](const Element& w) {
            Element r(G->ngens);
            for (int l = 0; l < Gq->ngens; ++l) r.e[kept[l]] = w.e[l];
            return r;
        };

        CoverData cd = p_covering_group(S);
        const int n = S->ngens;
        const int m = cd.multiplicator_rank();
        Collector CC(*cd.cover);
        Collector CP(*S);
        auto cover_plan = detail::make_forcing_plan(*cd.cover);

        // induced map cover -> Gq from the section images
        std::vector<Element> min_images;
        for (int j = 0; j < d; ++j) min_images.push_back(piq_apply(sec[j]));
        auto psi = detail::force_images(*cd.cover, cover_plan, CGq, min_images, false);
        if (!psi) throw std::logic_error("standard_form: cover map failed");

        // kernel of the multiplicator's image in the new layer P_k(Gq)
        Subgroup layer = lower_p_central_series(Gq)[k];
        // transposed so the kernel comes out as row vectors over the tails
        MatGFp A(p, layer.rank(), m);
        for (int t = 0; t < m; ++t) {
            auto expo = express_in_igs(layer, (*psi)[n + t]);
            if (!expo) throw std::logic_error("standard_form: tail image escapes the new layer");
            for (int j = 0; j < layer.rank(); ++j) A.at(j, t) = u8((*expo)[j]);
        }
        MatGFp U0 = rref(nullspace(A)).m;

        // canonical orbit representative with transversal and stabilizer
        std::vector<MatGFp> mats;
        std::vector<Aut> gen_inv;
        for (const auto& a : auts.gens) {
            mats.push_back(extend_to_multiplicator(a, cd, cover_plan, CC));
            gen_inv.push_back(invert_aut(CP, a));
        }
        struct Node {
            MatGFp U;
            Aut t, tinv;
        };
        std::deque<size_t> frontier;
        std::unordered_map<std::string, size_t> orbit;
        std::vector<Node> nodes;
        nodes.push_back(Node{U0, identity_aut(*S), identity_aut(*S)});
        orbit[detail::mat_key(U0)] = 0;
        frontier.push_back(0);
        std::vector<Aut> stab;
        std::unordered_map<std::string, char> stab_seen;
        auto add_stab = [&](Aut a) {
            if (a.is_identity(*S)) return;
            auto key = a.key();
            if (stab_seen.count(key)) return;
            stab_seen[key] = 1;
            stab.push_back(std::move(a));
        };
        while (!frontier.empty()) {
            size_t ui = frontier.front();
            frontier.pop_front();
            for (size_t gi = 0; gi < auts.gens.size(); ++gi) {
                MatGFp V = detail::subspace_image(nodes[ui].U, mats[gi]);
                auto kv = detail::mat_key(V);
                auto it = orbit.find(kv);
                if (it == orbit.end()) {
                    Node v{std::move(V), compose(CP, nodes[ui].t, auts.gens[gi]),
                           compose(CP, gen_inv[gi], nodes[ui].tinv)};
                    orbit[kv] = nodes.size();
                    frontier.push_back(nodes.size());
                    nodes.push_back(std::move(v));
                } else {
                    add_stab(compose(CP, compose(CP, nodes[ui].t, auts.gens[gi]),
                                     nodes[it->second].tinv));
                }
            }
        }
        size_t best = 0;
        for (size_t i = 1; i < nodes.size(); ++i)
            if (detail::mat_key(nodes[i].U) < detail::mat_key(nodes[best].U)) best = i;
        const Aut& tmin = nodes[best].t;
        const Aut& tmin_inv = nodes[best].tinv;

        PresPtr Snext = make_pres(detail::cover_quotient(cd, nodes[best].U));

        // automorphisms of the new quotient: conjugated stabilizer lifts
        // plus the central maps
        Collector CH(*Snext);
        auto plan_H = detail::make_forcing_plan(*Snext);
        AutSet hauts{Snext, {}};
        std::unordered_map<std::string, char> hseen;
        auto add_haut = [&](std::span<const Element> mi) {
            Aut a = aut_from_min_images(*Snext, plan_H, CH, mi);
            if (a.is_identity(*Snext)) return;
            auto key = a.key();
            if (hseen.count(key)) return;
            hseen[key] = 1;
            hauts.gens.push_back(std::move(a));
        };
        for (const auto& s : stab) {
            Aut c = compose(CP, compose(CP, tmin_inv, s), tmin);
            std::vector<Element> mi;
            for (int i = 0; i < d; ++i) {
                Element e(Snext->ngens);
                std::copy(c.images[i].e.begin(), c.images[i].e.end(), e.e.begin());
                mi.push_back(std::move(e));
            }
            add_haut(mi);
        }
        for (int i = 0; i < d; ++i)
            for (int t = n; t < Snext->ngens; ++t) {
                std::vector<Element> mi;
                for (int j = 0; j < d; ++j) mi.push_back(Snext->gen(j));
                mi[i] = CH.multiply(Snext->gen(i), Snext->gen(t));
                add_haut(mi);
            }

        // new section: lift the minimal generators back through the chain
        std::vector<Element> nsec;
        for (int j = 0; j < d; ++j) {
            Element c(cd.cover->ngens);
            std::copy(tmin_inv.images[j].e.begin(), tmin_inv.images[j].e.end(), c.e.begin());
            Element w = Gq->identity();
            for (int i = 0; i < cd.cover->ngens; ++i)
                for (int t = 0; t < c.e[i]; ++t) w = CGq.multiply(std::move(w), (*psi)[i]);
            nsec.push_back(lift_G(w));
        }
        S = std::move(Snext);
        auts = std::move(hauts);
        sec = std::move(nsec);
        if (cpp_int(S->order()) != Gq->order())
            throw std::logic_error("standard_form: quotient order mismatch");
    }
    if (S->order() != G->order()) throw std::logic_error("standard_form: final order mismatch");
    return S;
}

// isomorphism test through standard presentations; unlimited order
inline bool isomorphic(PresPtr A, PresPtr B) {
    if (A->p != B->p || A->order() != B->order() || A->nmin != B->nmin) return false;
    if (abelian_invariants(A) != abelian_invariants(B)) return false;
    return serialize(*standard_form(std::move(A))) == serialize(*standard_form(std::move(B)));
}

}  // namespace pgroup
